#include "verocurv/optimizer.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <random>
#include <set>
#include <stdexcept>

#include "verocurv/immersion.hpp"
#include "verocurv/spectral.hpp"

namespace verocurv {

void SearchConfig::require_valid() const {
  if (l_max < 1) throw std::invalid_argument("l_max must be >= 1");
  if (max_support < 1) throw std::invalid_argument("max_support must be >= 1");
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
}

// ---------------------------------------------------------------------------
// Isotropic system
// ---------------------------------------------------------------------------

namespace {

struct SupportTables {
  int m = 0, k = 0;
  Eigen::MatrixXd rho_tab;  // k x m
  Eigen::MatrixXd lam_tab;  // k x m
};

SupportTables support_tables(const ProblemInstance& inst,
                             const std::vector<std::vector<int>>& support) {
  SupportTables t;
  t.m = inst.num_factors();
  t.k = static_cast<int>(support.size());
  t.rho_tab.resize(t.k, t.m);
  t.lam_tab.resize(t.k, t.m);
  for (int a = 0; a < t.k; ++a) {
    if (static_cast<int>(support[a].size()) != t.m)
      throw std::invalid_argument("support atom length mismatch");
    for (int b = 0; b < t.m; ++b) {
      t.rho_tab(a, b) = to_double(rho({inst.factors[b], support[a][b]}));
      t.lam_tab(a, b) = to_double(lambda_iso({inst.factors[b], support[a][b]}));
    }
  }
  return t;
}

// Residuals: s G_a G_b - A_ab over a <= b, then sum(alpha) - 1.
void isotropic_residual(const SupportTables& t, const Eigen::VectorXd& z,
                        Eigen::VectorXd& r, Eigen::MatrixXd& jac) {
  const int k = t.k, m = t.m;
  const double s = z(k);
  Eigen::VectorXd alpha = z.head(k);
  Eigen::VectorXd g = t.rho_tab.transpose() * alpha;         // G_a
  Eigen::VectorXd el = t.lam_tab.transpose() * alpha;        // E[lambda_a]
  Eigen::MatrixXd erab(m, m);                                // E[rho_a rho_b]
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      double acc = 0;
      for (int i = 0; i < k; ++i) acc += alpha(i) * t.rho_tab(i, a) * t.rho_tab(i, b);
      erab(a, b) = acc;
    }
  const int rows = m * (m + 1) / 2 + 1;
  r.resize(rows);
  jac.setZero(rows, k + 1);
  int row = 0;
  for (int a = 0; a < m; ++a)
    for (int b = a; b < m; ++b) {
      const double a_ab = (a == b) ? el(a) : 3.0 * erab(a, b);
      r(row) = s * g(a) * g(b) - a_ab;
      for (int i = 0; i < k; ++i) {
        const double dg = t.rho_tab(i, a) * g(b) + g(a) * t.rho_tab(i, b);
        const double da = (a == b) ? t.lam_tab(i, a)
                                   : 3.0 * t.rho_tab(i, a) * t.rho_tab(i, b);
        jac(row, i) = s * dg - da;
      }
      jac(row, k) = g(a) * g(b);
      ++row;
    }
  r(row) = alpha.sum() - 1.0;
  for (int i = 0; i < k; ++i) jac(row, i) = 1.0;
}

CurvatureData data_on_support(const ProblemInstance& inst,
                              const std::vector<std::vector<int>>& support,
                              const QVec& weights) {
  VeroneseMeasure mu{inst, {}};
  for (size_t i = 0; i < support.size(); ++i)
    if (sgn(weights[i]) > 0) mu.atoms.push_back({support[i], weights[i]});
  return curvature_data(mu);
}

double isotropic_defect(const CurvatureData& data, const Rat& s) {
  double worst = 0;
  const QMat b = b_of_s(data, s);
  for (const auto& row : b)
    for (const Rat& q : row) worst = std::max(worst, std::abs(to_double(q)));
  return worst;
}

}  // namespace

std::optional<IsotropicSolution> solve_isotropic_system(
    const ProblemInstance& instance, const std::vector<std::vector<int>>& support,
    std::uint64_t seed, int starts) {
  if (support.empty()) throw std::invalid_argument("empty support");
  {
    std::set<std::vector<int>> distinct(support.begin(), support.end());
    if (distinct.size() != support.size())
      throw std::invalid_argument("support atoms must be distinct");
  }
  const SupportTables t = support_tables(instance, support);
  // A coordinate no atom excites forces G_m = 0: structurally no immersion.
  for (int b = 0; b < t.m; ++b)
    if (t.rho_tab.col(b).maxCoeff() <= 0) return std::nullopt;

  const int k = t.k;
  Eigen::VectorXd r;
  Eigen::MatrixXd jac;

  for (int attempt = 0; attempt < starts; ++attempt) {
    std::mt19937_64 rng = substream(seed, attempt);
    std::uniform_real_distribution<double> unif(0.05, 1.0);
    Eigen::VectorXd z(k + 1);
    double total = 0;
    for (int i = 0; i < k; ++i) {
      z(i) = unif(rng);
      total += z(i);
    }
    z.head(k) /= total;
    isotropic_residual(t, z, r, jac);
    {
      // reasonable s seed: the vertex ratio at the first coordinate
      Eigen::VectorXd g = t.rho_tab.transpose() * z.head(k);
      Eigen::VectorXd el = t.lam_tab.transpose() * z.head(k);
      double s0 = 1.0;
      for (int a = 0; a < t.m; ++a)
        if (g(a) > 1e-12) s0 = std::max(s0, el(a) / (g(a) * g(a)));
      z(k) = s0;
    }

    // Levenberg-Marquardt with multiplicative damping.
    double lambda = 1e-3;
    isotropic_residual(t, z, r, jac);
    double best = r.squaredNorm();
    for (int it = 0; it < 200; ++it) {
      Eigen::MatrixXd h = jac.transpose() * jac;
      h.diagonal().array() += lambda;
      Eigen::VectorXd step = h.ldlt().solve(-jac.transpose() * r);
      Eigen::VectorXd z_next = z + step;
      Eigen::VectorXd r_next;
      Eigen::MatrixXd jac_next;
      isotropic_residual(t, z_next, r_next, jac_next);
      if (r_next.squaredNorm() < best) {
        z = z_next;
        r = r_next;
        jac = jac_next;
        best = r.squaredNorm();
        lambda = std::max(lambda * 0.3, 1e-12);
        if (best < 1e-26) break;
      } else {
        lambda *= 8.0;
        if (lambda > 1e12) break;
      }
    }

    // Feasibility: weights nonnegative (tiny negatives are rounding), s > 0.
    bool feasible = z(k) > 0;
    for (int i = 0; i < k && feasible; ++i) feasible = z(i) > -1e-10;
    if (!feasible || best > 1e-16) continue;

    IsotropicSolution sol;
    sol.weights.resize(k);
    bool snapped = true;
    for (int i = 0; i < k; ++i) {
      const double w = std::max(0.0, z(i));
      if (auto q = snap_rational(w))
        sol.weights[i] = *q;
      else {
        sol.weights[i] = rat_from_double(w);
        snapped = false;
      }
    }
    if (auto q = snap_rational(z(k)))
      sol.s = *q;
    else {
      sol.s = rat_from_double(z(k));
      snapped = false;
    }

    Rat wsum(0);
    for (const Rat& w : sol.weights) wsum += w;
    if (wsum != 1) {
      if (snapped) continue;  // snapped weights must reproduce a measure
      for (Rat& w : sol.weights) w /= wsum;
    }
    const CurvatureData data = data_on_support(instance, support, sol.weights);
    sol.exact = snapped && is_isotropic(data, sol.s);
    sol.residual = sol.exact ? 0.0 : isotropic_defect(data, sol.s);
    if (!sol.exact && sol.residual > 1e-9) continue;
    return sol;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Measure search
// ---------------------------------------------------------------------------

namespace {

struct Candidate {
  VeroneseMeasure mu;
  CopositivityCertificate cert;
};

std::vector<std::vector<int>> sorted_support(const VeroneseMeasure& mu) {
  std::vector<std::vector<int>> s;
  for (const Atom& a : mu.atoms) s.push_back(a.l_vec);
  std::sort(s.begin(), s.end());
  return s;
}

// (s, support size, lexicographic support): smaller is better.
bool better_candidate(const Candidate& a, const Candidate& b) {
  const int c = cmp(a.cert.s_star, b.cert.s_star);
  if (c != 0) return c < 0;
  if (a.mu.atoms.size() != b.mu.atoms.size())
    return a.mu.atoms.size() < b.mu.atoms.size();
  return sorted_support(a.mu) < sorted_support(b.mu);
}

bool covers_all_coordinates(const std::vector<Atom>& atoms, int m) {
  for (int c = 0; c < m; ++c) {
    bool hit = false;
    for (const Atom& a : atoms) hit = hit || a.l_vec[c] > 0;
    if (!hit) return false;
  }
  return true;
}

std::optional<Candidate> evaluate(const ProblemInstance& inst,
                                  std::vector<Atom> atoms, long& evals) {
  VeroneseMeasure mu{inst, std::move(atoms)};
  mu = normalized(mu);
  if (validate(mu)) return std::nullopt;
  const CurvatureData data = curvature_data(mu);
  if (immersion_check(data)) return std::nullopt;
  ++evals;
  return Candidate{mu, critical_s(data)};
}

// Numeric value of s on a fixed support at double weights.
double s_num_at(const SupportTables& t, const Eigen::VectorXd& w) {
  Eigen::VectorXd g = t.rho_tab.transpose() * w;
  for (int a = 0; a < t.m; ++a)
    if (!(g(a) > 1e-12)) return std::numeric_limits<double>::infinity();
  Eigen::MatrixXd a_mat(t.m, t.m);
  for (int a = 0; a < t.m; ++a)
    for (int b = 0; b < t.m; ++b) {
      double acc = 0;
      for (int i = 0; i < t.k; ++i)
        acc += w(i) * ((a == b) ? t.lam_tab(i, a)
                                : 3.0 * t.rho_tab(i, a) * t.rho_tab(i, b));
      a_mat(a, b) = acc;
    }
  return critical_s_numeric(a_mat, g).s_star_num;
}

// Projected coordinate descent on the weights: golden-section line searches
// on pairwise mass transfers in double precision, then a rational snap with
// an exact re-evaluation gate before the candidate is accepted.
Candidate reoptimize_weights(Candidate cand, long& evals) {
  const int k = static_cast<int>(cand.mu.atoms.size());
  if (k < 2) return cand;
  std::vector<std::vector<int>> support;
  for (const Atom& a : cand.mu.atoms) support.push_back(a.l_vec);
  const SupportTables t = support_tables(cand.mu.instance, support);

  Eigen::VectorXd w(k);
  for (int i = 0; i < k; ++i) w(i) = to_double(cand.mu.atoms[i].weight);

  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
  double cur = s_num_at(t, w);
  for (int sweep = 0; sweep < 6; ++sweep) {
    bool improved = false;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        if (i == j) continue;
        // transfer tr from atom i to atom j, tr in (0, w_i)
        double lo = 0.0, hi = w(i);
        auto value = [&](double tr) {
          Eigen::VectorXd trial = w;
          trial(i) -= tr;
          trial(j) += tr;
          return s_num_at(t, trial);
        };
        double x1 = hi - golden * (hi - lo), x2 = lo + golden * (hi - lo);
        double f1 = value(x1), f2 = value(x2);
        for (int it = 0; it < 40; ++it) {
          if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - golden * (hi - lo);
            f1 = value(x1);
          } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + golden * (hi - lo);
            f2 = value(x2);
          }
        }
        const double tr = 0.5 * (lo + hi);
        const double val = value(tr);
        if (val < cur - 1e-13) {
          w(i) -= tr;
          w(j) += tr;
          cur = val;
          improved = true;
        }
      }
    if (!improved) break;
  }

  // Snap the descended weights to rationals and gate on the exact value.
  QVec snapped(k);
  Rat total(0);
  for (int i = 0; i < k; ++i) {
    if (w(i) < 1e-12) return cand;  // atom died; discrete moves handle removal
    auto q = snap_rational(w(i), 1e-9, 1000000L);
    snapped[i] = q ? *q : rat_from_double(w(i));
    total += snapped[i];
  }
  if (sgn(total) <= 0) return cand;
  std::vector<Atom> atoms = cand.mu.atoms;
  for (int i = 0; i < k; ++i) {
    atoms[i].weight = snapped[i] / total;
    if (sgn(atoms[i].weight) <= 0) return cand;
  }
  auto trial = evaluate(cand.mu.instance, std::move(atoms), evals);
  if (trial && better_candidate(*trial, cand)) return *trial;
  return cand;
}

std::vector<int> random_l_vec(const ProblemInstance& inst, int l_max,
                              std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, l_max);
  std::vector<int> l(inst.num_factors());
  bool nonzero = false;
  for (int& v : l) {
    v = pick(rng);
    nonzero = nonzero || v > 0;
  }
  if (!nonzero) l[rng() % l.size()] = 1 + static_cast<int>(rng() % l_max);
  return l;
}

std::optional<Candidate> refine_isotropic(const Candidate& cand,
                                          std::uint64_t seed, long& evals) {
  std::vector<std::vector<int>> support;
  for (const Atom& a : cand.mu.atoms) support.push_back(a.l_vec);
  auto sol = solve_isotropic_system(cand.mu.instance, support, seed, 50);
  if (!sol || !sol->exact) return std::nullopt;
  std::vector<Atom> atoms;
  for (size_t i = 0; i < support.size(); ++i)
    if (sgn(sol->weights[i]) > 0) atoms.push_back({support[i], sol->weights[i]});
  return evaluate(cand.mu.instance, std::move(atoms), evals);
}

}  // namespace

SearchOutcome minimize_s(const ProblemInstance& instance, const SearchConfig& cfg,
                         const VeroneseMeasure* warm_start) {
  cfg.require_valid();
  const int m = instance.num_factors();
  if (m < 1) throw std::invalid_argument("instance has no factors");
  if (m > kFaceEnumerationCap)
    throw std::length_error("minimize_s: exact search capped at M = " +
                            std::to_string(kFaceEnumerationCap));

  const auto t0 = std::chrono::steady_clock::now();
  auto out_of_budget = [&] {
    if (cfg.budget_secs <= 0) return false;
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    return dt.count() > cfg.budget_secs;
  };

  SearchOutcome outcome;
  long evals = 0;
  std::optional<Candidate> best;

  if (warm_start) {
    if (auto bad = validate(*warm_start))
      throw std::invalid_argument("minimize_s: invalid warm start: " + *bad);
    auto cand = evaluate(instance, warm_start->atoms, evals);
    if (!cand) throw std::invalid_argument("minimize_s: degenerate warm start");
    if (auto refined = refine_isotropic(*cand, cfg.seed, evals);
        refined && better_candidate(*refined, *cand))
      cand = refined;
    best = cand;
  }

  for (int restart = 0; restart < cfg.restarts && outcome.complete; ++restart) {
    if (out_of_budget()) {
      outcome.complete = false;
      break;
    }
    std::mt19937_64 rng = substream(cfg.seed, restart);

    // Random initial support covering every coordinate.
    std::optional<Candidate> cur;
    for (int tries = 0; tries < 50 && !cur; ++tries) {
      const int size = 1 + static_cast<int>(rng() % cfg.max_support);
      std::set<std::vector<int>> support;
      // the atom pool may be smaller than the requested size; cap the draws
      for (int draw = 0; draw < 16 * size && static_cast<int>(support.size()) < size;
           ++draw)
        support.insert(random_l_vec(instance, cfg.l_max, rng));
      if (support.empty()) continue;
      std::vector<Atom> atoms;
      std::uniform_int_distribution<int> wpick(1, 9);
      Rat total(0);
      for (const auto& l : support) {
        Rat w(wpick(rng));
        atoms.push_back({l, w});
        total += w;
      }
      for (Atom& a : atoms) a.weight /= total;
      if (!covers_all_coordinates(atoms, m)) continue;
      cur = evaluate(instance, std::move(atoms), evals);
    }
    if (!cur) continue;
    *cur = reoptimize_weights(*cur, evals);

    for (int move = 0; move < cfg.moves_per_restart; ++move) {
      if (out_of_budget()) {
        outcome.complete = false;
        break;
      }
      const int kind = static_cast<int>(rng() % 3);
      std::vector<Atom> atoms = cur->mu.atoms;
      if (kind == 0 && static_cast<int>(atoms.size()) < cfg.max_support) {
        // add a fresh atom with an eighth of the mass
        const std::vector<int> l = random_l_vec(instance, cfg.l_max, rng);
        bool dup = false;
        for (const Atom& a : atoms) dup = dup || a.l_vec == l;
        if (dup) continue;
        for (Atom& a : atoms) a.weight *= Rat(7, 8);
        atoms.push_back({l, Rat(1, 8)});
      } else if (kind == 1 && atoms.size() > 1) {
        // drop an atom, renormalize
        const size_t victim = rng() % atoms.size();
        const Rat rest = 1 - atoms[victim].weight;
        atoms.erase(atoms.begin() + victim);
        if (sgn(rest) <= 0) continue;
        for (Atom& a : atoms) a.weight /= rest;
        if (!covers_all_coordinates(atoms, m)) continue;
      } else {
        // shift one coordinate of one atom by +-1
        const size_t which = rng() % atoms.size();
        const int coord = static_cast<int>(rng() % m);
        const int delta = (rng() % 2) ? 1 : -1;
        const int next = atoms[which].l_vec[coord] + delta;
        if (next < 0 || next > cfg.l_max) continue;
        atoms[which].l_vec[coord] = next;
        bool dup = false;
        for (size_t i = 0; i < atoms.size(); ++i)
          for (size_t j = i + 1; j < atoms.size(); ++j)
            dup = dup || atoms[i].l_vec == atoms[j].l_vec;
        bool zero = std::all_of(atoms[which].l_vec.begin(),
                                atoms[which].l_vec.end(),
                                [](int v) { return v == 0; });
        if (dup || zero || !covers_all_coordinates(atoms, m)) continue;
      }
      auto trial = evaluate(instance, std::move(atoms), evals);
      if (!trial) continue;
      *trial = reoptimize_weights(*trial, evals);
      if (better_candidate(*trial, *cur)) cur = trial;
    }

    if (auto refined = refine_isotropic(*cur, cfg.seed + restart + 1, evals);
        refined && better_candidate(*refined, *cur))
      cur = refined;
    if (!best || better_candidate(*cur, *best)) best = cur;
  }

  if (!best) throw std::runtime_error("minimize_s: no feasible measure found");
  outcome.best = best->mu;
  outcome.certificate = best->cert;
  outcome.evaluations = evals;
  return outcome;
}

}  // namespace verocurv
