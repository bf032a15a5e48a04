#include "verocurv/measure.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "verocurv/spectral.hpp"

namespace verocurv {

std::optional<std::string> validate(const VeroneseMeasure& mu) {
  const int m = mu.instance.num_factors();
  if (m < 1) return "instance has no factors";
  for (int i = 0; i < m; ++i)
    if (mu.instance.factors[i] < 1) {
      std::ostringstream os;
      os << "factor " << (i + 1) << " has dimension " << mu.instance.factors[i]
         << " < 1";
      return os.str();
    }
  if (mu.atoms.empty()) return "measure has no atoms";
  Rat total(0);
  for (const Atom& a : mu.atoms) {
    if (static_cast<int>(a.l_vec.size()) != m)
      return "atom index length does not match factor count";
    for (int l : a.l_vec)
      if (l < 0) return "atom has a negative eigenvalue index";
    if (sgn(a.weight) <= 0) return "atom weight is not positive";
    total += a.weight;
  }
  for (size_t i = 0; i < mu.atoms.size(); ++i)
    for (size_t j = i + 1; j < mu.atoms.size(); ++j)
      if (mu.atoms[i].l_vec == mu.atoms[j].l_vec) return "duplicate atom";
  if (total != 1) return "weights sum to " + rat_to_string(total);
  return std::nullopt;
}

CurvatureData curvature_data(const VeroneseMeasure& mu) {
  const int m = mu.instance.num_factors();
  CurvatureData data;
  data.A = zero_matrix(m, m);
  data.G.assign(m, Rat(0));
  for (const Atom& atom : mu.atoms) {
    QVec r(m), lam(m);
    for (int k = 0; k < m; ++k) {
      SpectralParams p{mu.instance.factors[k], atom.l_vec[k]};
      r[k] = rho(p);
      lam[k] = lambda_iso(p);
    }
    for (int a = 0; a < m; ++a) {
      data.G[a] += atom.weight * r[a];
      data.A[a][a] += atom.weight * lam[a];
      for (int b = a + 1; b < m; ++b) {
        const Rat cross = 3 * atom.weight * r[a] * r[b];
        data.A[a][b] += cross;
        data.A[b][a] += cross;
      }
    }
  }
  return data;
}

Int ambient_dimension(const VeroneseMeasure& mu) {
  Int n(0);
  for (const Atom& atom : mu.atoms) {
    Int block(1);
    for (int k = 0; k < mu.instance.num_factors(); ++k)
      block *= eigen_dimension({mu.instance.factors[k], atom.l_vec[k]});
    n += block;
  }
  return n;
}

std::optional<int> immersion_check(const CurvatureData& data) {
  for (int m = 0; m < data.dim(); ++m)
    if (is_zero(data.G[m])) return m;
  return std::nullopt;
}

VeroneseMeasure normalized(VeroneseMeasure mu) {
  std::sort(mu.atoms.begin(), mu.atoms.end(),
            [](const Atom& a, const Atom& b) { return a.l_vec < b.l_vec; });
  return mu;
}

bool same_measure(const VeroneseMeasure& a, const VeroneseMeasure& b) {
  if (a.instance.factors != b.instance.factors) return false;
  const VeroneseMeasure na = normalized(a), nb = normalized(b);
  if (na.atoms.size() != nb.atoms.size()) return false;
  for (size_t i = 0; i < na.atoms.size(); ++i)
    if (na.atoms[i].l_vec != nb.atoms[i].l_vec ||
        na.atoms[i].weight != nb.atoms[i].weight)
      return false;
  return true;
}

VeroneseMeasure mix(const Rat& t, const VeroneseMeasure& a,
                    const VeroneseMeasure& b) {
  if (a.instance.factors != b.instance.factors)
    throw std::invalid_argument("mix: instances differ");
  std::map<std::vector<int>, Rat> acc;
  for (const Atom& atom : a.atoms) acc[atom.l_vec] += t * atom.weight;
  for (const Atom& atom : b.atoms) acc[atom.l_vec] += (1 - t) * atom.weight;
  VeroneseMeasure out{a.instance, {}};
  for (auto& [l, w] : acc)
    if (!is_zero(w)) out.atoms.push_back({l, w});
  return out;
}

VeroneseMeasure measure_from_json(const nlohmann::json& j) {
  VeroneseMeasure mu;
  if (!j.contains("factors") || !j["factors"].is_array())
    throw std::invalid_argument("measure file: missing 'factors' array");
  for (const auto& f : j["factors"]) mu.instance.factors.push_back(f.get<int>());
  if (!j.contains("atoms") || !j["atoms"].is_array())
    throw std::invalid_argument("measure file: missing 'atoms' array");
  for (const auto& ja : j["atoms"]) {
    Atom atom;
    for (const auto& l : ja.at("l")) atom.l_vec.push_back(l.get<int>());
    const auto& w = ja.at("w");
    atom.weight = w.is_string() ? rat_from_string(w.get<std::string>())
                                : Rat(w.get<long>());
    mu.atoms.push_back(std::move(atom));
  }
  return mu;
}

nlohmann::json measure_to_json(const VeroneseMeasure& mu) {
  nlohmann::json j;
  j["factors"] = mu.instance.factors;
  j["atoms"] = nlohmann::json::array();
  for (const Atom& a : mu.atoms)
    j["atoms"].push_back({{"l", a.l_vec}, {"w", rat_to_string(a.weight)}});
  return j;
}

VeroneseMeasure load_measure(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open measure file: " + path);
  nlohmann::json j;
  in >> j;
  return measure_from_json(j);
}

void save_measure(const VeroneseMeasure& mu, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write measure file: " + path);
  out << measure_to_json(mu).dump(2) << "\n";
}

}  // namespace verocurv
