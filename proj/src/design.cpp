#include "verocurv/design.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace verocurv {

std::optional<std::string> validate(const DesignInput& d, double norm_tol) {
  if (d.points.empty()) return "design has no points";
  const int m = d.dim();
  if (m < 1) return "design points are empty vectors";
  if (d.points.size() != d.weights.size())
    return "weight count does not match point count";
  if (sgn(d.radius2) <= 0) return "radius2 must be positive";
  Rat total(0);
  for (const Rat& w : d.weights) {
    if (sgn(w) <= 0) return "design weight is not positive";
    total += w;
  }
  if (total != 1) return "weights sum to " + rat_to_string(total);
  for (size_t k = 0; k < d.points.size(); ++k) {
    if (static_cast<int>(d.points[k].size()) != m)
      return "design points have mixed dimensions";
    Rat norm2(0);
    for (const Rat& c : d.points[k]) norm2 += c * c;
    if (is_zero(norm2)) return "design contains the zero vector";
    if (std::abs(to_double(norm2 - d.radius2)) >
        norm_tol * std::max(1.0, to_double(d.radius2))) {
      std::ostringstream os;
      os << "point " << (k + 1) << " has |u|^2 = " << rat_to_string(norm2)
         << ", not radius2 = " << rat_to_string(d.radius2);
      return os.str();
    }
  }
  return std::nullopt;
}

MomentReport check_design_moments(const DesignInput& d) {
  if (auto bad = validate(d))
    throw std::invalid_argument("check_design_moments: " + *bad);
  const int n = d.dim();
  const size_t k = d.points.size();

  // Per-point normalization keeps the computation exact: the identities only
  // involve even powers, so <u_hat, e_m>^2 = u_m^2 / |u|^2 is rational.
  std::vector<QVec> sq(k, QVec(n));
  for (size_t p = 0; p < k; ++p) {
    Rat norm2(0);
    for (const Rat& c : d.points[p]) norm2 += c * c;
    for (int i = 0; i < n; ++i)
      sq[p][i] = d.points[p][i] * d.points[p][i] / norm2;
  }

  MomentReport rep;
  auto add = [&](std::string name, const Rat& lhs, const Rat& rhs) {
    rep.identities.push_back({std::move(name), lhs, rhs});
  };

  for (int i = 0; i < n; ++i) {
    Rat acc(0);
    for (size_t p = 0; p < k; ++p) acc += d.weights[p] * sq[p][i];
    add("second moment e" + std::to_string(i + 1), acc, Rat(1, n));
  }
  const Rat fourth_rhs = Rat(3) / (Rat(n) * Rat(n + 2));
  for (int i = 0; i < n; ++i) {
    Rat acc(0);
    for (size_t p = 0; p < k; ++p) acc += d.weights[p] * sq[p][i] * sq[p][i];
    add("pure fourth moment e" + std::to_string(i + 1), acc, fourth_rhs);
  }
  const Rat mixed_rhs = Rat(1) / (Rat(n) * Rat(n + 2));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Rat acc(0);
      for (size_t p = 0; p < k; ++p) acc += d.weights[p] * sq[p][i] * sq[p][j];
      add("mixed fourth moment e" + std::to_string(i + 1) + ",e" +
              std::to_string(j + 1),
          acc, mixed_rhs);
    }

  rep.exact_pass = true;
  rep.max_abs_residual = 0;
  for (const auto& id : rep.identities) {
    const Rat r = id.residual();
    if (!is_zero(r)) rep.exact_pass = false;
    rep.max_abs_residual =
        std::max(rep.max_abs_residual, std::abs(to_double(r)));
  }
  return rep;
}

std::vector<std::string> MomentReport::violations(double tol) const {
  std::vector<std::string> out;
  for (const auto& id : identities)
    if (std::abs(to_double(id.residual())) >= tol)
      out.push_back(id.name + ": " + rat_to_string(id.lhs) +
                    " != " + rat_to_string(id.rhs));
  return out;
}

VeroneseMeasure design_to_measure(const DesignInput& d,
                                  const ProblemInstance& instance) {
  if (auto bad = validate(d))
    throw std::invalid_argument("design_to_measure: " + *bad);
  for (int f : instance.factors)
    if (f != 1)
      throw std::invalid_argument(
          "design_to_measure: instance must be a product of circles");
  if (instance.num_factors() != d.dim())
    throw std::invalid_argument(
        "design_to_measure: instance dimension does not match the design");

  std::map<std::vector<int>, Rat> folded;
  for (size_t p = 0; p < d.points.size(); ++p) {
    std::vector<int> l(d.dim());
    bool all_zero = true;
    for (int i = 0; i < d.dim(); ++i) {
      const Rat& c = d.points[p][i];
      if (c.get_den() != 1)
        throw std::invalid_argument(
            "design_to_measure: point " + std::to_string(p + 1) +
            " has a non-integer coordinate " + rat_to_string(c));
      Int v = abs(c.get_num());
      if (!v.fits_sint_p())
        throw std::invalid_argument("design_to_measure: coordinate too large");
      l[i] = static_cast<int>(v.get_si());
      if (l[i] != 0) all_zero = false;
    }
    if (all_zero)
      throw std::invalid_argument("design_to_measure: zero vector point");
    folded[l] += d.weights[p];
  }

  VeroneseMeasure mu{instance, {}};
  for (auto& [l, w] : folded) mu.atoms.push_back({l, w});
  return mu;
}

DesignInput design_from_json(const nlohmann::json& j) {
  DesignInput d;
  const auto parse_rat = [](const nlohmann::json& v) -> Rat {
    if (v.is_string()) return rat_from_string(v.get<std::string>());
    if (v.is_number_integer()) return Rat(v.get<long>());
    if (v.is_number_float()) return rat_from_double(v.get<double>());
    throw std::invalid_argument("design file: bad numeric entry");
  };
  if (!j.contains("radius2"))
    throw std::invalid_argument("design file: missing 'radius2'");
  d.radius2 = parse_rat(j["radius2"]);
  for (const auto& row : j.at("points")) {
    QVec p;
    for (const auto& c : row) p.push_back(parse_rat(c));
    d.points.push_back(std::move(p));
  }
  for (const auto& w : j.at("weights")) d.weights.push_back(parse_rat(w));
  return d;
}

nlohmann::json design_to_json(const DesignInput& d) {
  nlohmann::json j;
  j["radius2"] = rat_to_string(d.radius2);
  j["points"] = nlohmann::json::array();
  for (const auto& p : d.points) {
    nlohmann::json row = nlohmann::json::array();
    for (const Rat& c : p) row.push_back(rat_to_string(c));
    j["points"].push_back(row);
  }
  j["weights"] = nlohmann::json::array();
  for (const Rat& w : d.weights) j["weights"].push_back(rat_to_string(w));
  return j;
}

DesignInput load_design(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open design file: " + path);
  nlohmann::json j;
  in >> j;
  return design_from_json(j);
}

}  // namespace verocurv
