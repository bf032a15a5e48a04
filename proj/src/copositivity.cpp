#include "verocurv/copositivity.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace verocurv {

Eigen::MatrixXd to_eigen(const QMat& m) {
  Eigen::MatrixXd out(m.size(), m.empty() ? 0 : m[0].size());
  for (int i = 0; i < out.rows(); ++i)
    for (int j = 0; j < out.cols(); ++j) out(i, j) = to_double(m[i][j]);
  return out;
}

Eigen::VectorXd to_eigen(const QVec& v) {
  Eigen::VectorXd out(v.size());
  for (int i = 0; i < out.size(); ++i) out(i) = to_double(v[i]);
  return out;
}

namespace {

struct FaceCandidate {
  Rat value;
  QVec u;                    // full-length point, zeros off the support
  std::vector<int> support;  // ascending indices with u > 0
};

std::vector<int> positive_support(const QVec& u) {
  std::vector<int> s;
  for (size_t i = 0; i < u.size(); ++i)
    if (sgn(u[i]) > 0) s.push_back(static_cast<int>(i));
  return s;
}

// Deterministic preference among equal-value candidates: smaller support,
// then lexicographically smaller support.
bool prefer_tie(const FaceCandidate& a, const FaceCandidate& b) {
  if (a.support.size() != b.support.size())
    return a.support.size() < b.support.size();
  return std::lexicographical_compare(a.support.begin(), a.support.end(),
                                      b.support.begin(), b.support.end());
}

// Stationary points of U^T B U on the face {U_S > 0, g_S . U_S = 1}.
// Solves the bordered KKT system  2 B_S U = theta g_S,  g_S . U = 1.
// The quadratic's value at any solution is theta/2.
//
// Singular-but-consistent systems arise exactly when the quadratic is
// constant along null directions of the face; the optimum is then also
// attained on a smaller face or vertex, so a particular solution is kept
// only if it happens to be feasible and nothing is lost otherwise.
std::optional<FaceCandidate> face_candidate(const QMat& b, const QVec& g,
                                            const std::vector<int>& face) {
  const int k = static_cast<int>(face.size());
  QMat sys = zero_matrix(k + 1, k + 1);
  QVec rhs(k + 1, Rat(0));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) sys[i][j] = 2 * b[face[i]][face[j]];
    sys[i][k] = -g[face[i]];
    sys[k][i] = g[face[i]];
  }
  rhs[k] = 1;

  QVec u_face;
  Rat theta;
  if (auto x = solve_square(sys, rhs)) {
    theta = (*x)[k];
    u_face.assign(x->begin(), x->begin() + k);
    for (const Rat& ui : u_face)
      if (sgn(ui) <= 0) return std::nullopt;  // stationary point off the face
  } else {
    LinearSolution gen = solve_general(sys, rhs);
    if (!gen.consistent) return std::nullopt;
    theta = gen.particular[k];
    u_face.assign(gen.particular.begin(), gen.particular.begin() + k);
    for (const Rat& ui : u_face)
      if (sgn(ui) < 0) return std::nullopt;
  }

  FaceCandidate cand;
  cand.value = theta / 2;
  cand.u.assign(b.size(), Rat(0));
  for (int i = 0; i < k; ++i) cand.u[face[i]] = u_face[i];
  cand.support = positive_support(cand.u);
  if (cand.support.empty()) return std::nullopt;
  return cand;
}

// Best stationary value of U^T B U over {U >= 0, g . U = 1}. Every optimum of
// the constrained problem lies in the relative interior of the face spanned
// by its support and satisfies the KKT system there, so scanning all supports
// (vertices included as singletons) is exhaustive.
FaceCandidate enumerate_faces(const QMat& b, const QVec& g, bool maximize) {
  const int m = static_cast<int>(b.size());
  if (m < 1) throw std::invalid_argument("empty matrix");
  if (m > kFaceEnumerationCap)
    throw std::length_error("face enumeration capped at M = " +
                            std::to_string(kFaceEnumerationCap));
  std::optional<FaceCandidate> best;
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    std::vector<int> face;
    for (int i = 0; i < m; ++i)
      if (mask & (1u << i)) face.push_back(i);
    auto cand = face_candidate(b, g, face);
    if (!cand) continue;
    if (!best) {
      best = std::move(cand);
      continue;
    }
    const int c = cmp(cand->value, best->value);
    const bool better = maximize ? c > 0 : c < 0;
    if (better || (c == 0 && prefer_tie(*cand, *best))) best = std::move(cand);
  }
  if (!best)
    throw std::logic_error("face enumeration produced no candidate");
  return *best;
}

}  // namespace

SimplexMinimum simplex_quadratic_min(const QMat& b) {
  const QVec ones(b.size(), Rat(1));
  FaceCandidate best = enumerate_faces(b, ones, /*maximize=*/false);
  return {best.value, best.u};
}

CopositivityResult is_copositive(const QMat& b) {
  SimplexMinimum m = simplex_quadratic_min(b);
  return {sgn(m.value) >= 0, m.value, m.argmin};
}

QMat b_of_s(const CurvatureData& data, const Rat& s) {
  const int m = data.dim();
  QMat b = zero_matrix(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) b[i][j] = s * data.G[i] * data.G[j] - data.A[i][j];
  return b;
}

bool is_isotropic(const CurvatureData& data, const Rat& s) {
  const QMat b = b_of_s(data, s);
  for (const auto& row : b)
    for (const Rat& q : row)
      if (!is_zero(q)) return false;
  return true;
}

CopositivityCertificate critical_s(const CurvatureData& data) {
  if (auto degenerate = immersion_check(data))
    throw std::invalid_argument("critical_s: map is degenerate in coordinate " +
                                std::to_string(*degenerate + 1));
  if (data.dim() > kFaceEnumerationCap)
    return critical_s_numeric(to_eigen(data.A), to_eigen(data.G));

  // c(F)^2 = max U^T A U over the slice {U >= 0, G . U = 1}.
  FaceCandidate best = enumerate_faces(data.A, data.G, /*maximize=*/true);
  CopositivityCertificate cert;
  cert.s_star = best.value;
  cert.s_star_num = to_double(best.value);
  cert.u_star = best.u;
  cert.u_star_num = to_eigen(best.u);
  cert.support = best.support;
  cert.mode = CertMode::exact;
  cert.certified = true;
  return cert;
}

namespace {

Eigen::VectorXd project_to_simplex(Eigen::VectorXd v) {
  // Euclidean projection onto {U >= 0, sum U = 1}.
  const int n = static_cast<int>(v.size());
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cum = 0.0, tau = 0.0;
  int k = 0;
  for (int i = 0; i < n; ++i) {
    cum += u[i];
    const double t = (cum - 1.0) / (i + 1);
    if (u[i] - t > 0) {
      tau = t;
      k = i + 1;
    }
  }
  (void)k;
  for (int i = 0; i < n; ++i) v(i) = std::max(0.0, v(i) - tau);
  return v;
}

// Heuristic minimizer of U^T B U over the simplex: projected gradient from
// every vertex plus seeded random interior starts. Not a certificate.
double simplex_min_heuristic(const Eigen::MatrixXd& b, std::mt19937_64& rng) {
  const int n = static_cast<int>(b.rows());
  double best = std::numeric_limits<double>::infinity();
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const int random_starts = 4 * n;
  for (int s = 0; s < n + random_starts; ++s) {
    Eigen::VectorXd u(n);
    if (s < n) {
      u.setZero();
      u(s) = 1.0;
    } else {
      for (int i = 0; i < n; ++i) u(i) = -std::log(1.0 - unif(rng));
      u /= u.sum();
    }
    double step = 1.0 / (2.0 * b.cwiseAbs().maxCoeff() + 1e-12);
    double val = u.dot(b * u);
    for (int it = 0; it < 400; ++it) {
      Eigen::VectorXd next = project_to_simplex(u - step * 2.0 * (b * u));
      const double nval = next.dot(b * next);
      if (nval < val - 1e-15) {
        u = next;
        val = nval;
      } else {
        step *= 0.5;
        if (step < 1e-12) break;
      }
    }
    best = std::min(best, val);
  }
  return best;
}

}  // namespace

CopositivityCertificate critical_s_numeric(const Eigen::MatrixXd& a,
                                           const Eigen::VectorXd& g,
                                           double tol) {
  const int m = static_cast<int>(a.rows());
  if (m < 1) throw std::invalid_argument("empty matrix");
  for (int i = 0; i < m; ++i)
    if (g(i) <= 0)
      throw std::invalid_argument("critical_s: map is degenerate in coordinate " +
                                  std::to_string(i + 1));

  CopositivityCertificate cert;
  cert.mode = CertMode::numeric;

  if (m <= kFaceEnumerationCap) {
    double best_val = -std::numeric_limits<double>::infinity();
    Eigen::VectorXd best_u;
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
      std::vector<int> face;
      for (int i = 0; i < m; ++i)
        if (mask & (1u << i)) face.push_back(i);
      const int k = static_cast<int>(face.size());
      Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(k + 1, k + 1);
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) sys(i, j) = 2.0 * a(face[i], face[j]);
        sys(i, k) = -g(face[i]);
        sys(k, i) = g(face[i]);
      }
      rhs(k) = 1.0;
      Eigen::FullPivLU<Eigen::MatrixXd> lu(sys);
      if (!lu.isInvertible()) continue;
      Eigen::VectorXd x = lu.solve(rhs);
      if ((sys * x - rhs).norm() > 1e-8 * (1.0 + x.norm())) continue;
      bool feasible = true;
      for (int i = 0; i < k; ++i)
        if (x(i) < -tol) feasible = false;
      if (!feasible) continue;
      const double val = x(k) / 2.0;
      if (val > best_val) {
        best_val = val;
        best_u = Eigen::VectorXd::Zero(m);
        for (int i = 0; i < k; ++i) best_u(face[i]) = std::max(0.0, x(i));
      }
    }
    // Vertices are unconditionally feasible and guard against all-singular
    // faces in degenerate double-precision cases.
    for (int i = 0; i < m; ++i) {
      const double val = a(i, i) / (g(i) * g(i));
      if (val > best_val) {
        best_val = val;
        best_u = Eigen::VectorXd::Zero(m);
        best_u(i) = 1.0 / g(i);
      }
    }
    cert.s_star_num = best_val;
    cert.u_star_num = best_u;
    for (int i = 0; i < m; ++i)
      if (best_u(i) > tol) cert.support.push_back(i);
    cert.certified = true;
    return cert;
  }

  // Beyond the cap: bisection on s against a heuristic copositivity check.
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < m; ++i) lo = std::max(lo, a(i, i) / (g(i) * g(i)));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      hi = std::max(hi, std::abs(a(i, j)) / (g(i) * g(j)));
  hi = std::max(hi, lo) + 1.0;
  std::mt19937_64 rng(0x5eedULL);
  auto copositive_at = [&](double s) {
    Eigen::MatrixXd b = s * (g * g.transpose()) - a;
    return simplex_min_heuristic(b, rng) >= -tol;
  };
  for (int it = 0; it < 80 && hi - lo > tol * std::max(1.0, lo); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (copositive_at(mid))
      hi = mid;
    else
      lo = mid;
  }
  cert.s_star_num = hi;
  cert.u_star_num = Eigen::VectorXd::Zero(m);
  cert.certified = false;
  return cert;
}

}  // namespace verocurv
