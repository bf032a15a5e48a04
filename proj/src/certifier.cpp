#include "verocurv/certifier.hpp"

#include <limits>
#include <stdexcept>

#include "verocurv/spectral.hpp"

namespace verocurv {

namespace {

void check_index(const SffSample& s, int i) {
  if (i < 0 || i >= s.dim()) throw std::invalid_argument("frame index out of range");
}

void check_frame4(const SffSample& s, const std::array<int, 4>& idx) {
  if (s.dim() < 4)
    throw std::invalid_argument("PIC-2 quantities need an n >= 4 frame");
  for (int i : idx) check_index(s, i);
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      if (idx[a] == idx[b])
        throw std::invalid_argument("PIC-2 frame indices must be distinct");
}

}  // namespace

double gauss_rm(const SffSample& s, int i, int j, int k, int l) {
  check_index(s, i);
  check_index(s, j);
  check_index(s, k);
  check_index(s, l);
  return s.table[i][l].dot(s.table[j][k]) - s.table[i][k].dot(s.table[j][l]);
}

double gauss_ricci(const SffSample& s, int i) {
  check_index(s, i);
  double norm2 = 0;
  for (int k = 0; k < s.dim(); ++k) norm2 += s.table[i][k].squaredNorm();
  return s.table[i][i].dot(s.mean_curvature) - norm2;
}

Eigen::MatrixXd gauss_ricci_matrix(const SffSample& s) {
  const int n = s.dim();
  Eigen::MatrixXd ric(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double acc = s.table[i][j].dot(s.mean_curvature);
      for (int k = 0; k < n; ++k) acc -= s.table[i][k].dot(s.table[j][k]);
      ric(i, j) = ric(j, i) = acc;
    }
  return ric;
}

PetruninExact petrunin_scalar_check(const VeroneseMeasure& mu) {
  if (auto bad = validate(mu))
    throw std::invalid_argument("petrunin_scalar_check: " + *bad);
  const CurvatureData data = curvature_data(mu);
  if (auto degenerate = immersion_check(data))
    throw std::invalid_argument(
        "petrunin_scalar_check: degenerate coordinate " +
        std::to_string(*degenerate + 1));

  const int m = mu.instance.num_factors();
  int n = 0;
  for (int f : mu.instance.factors) n += f;

  PetruninExact out;

  // Scalar curvature of sum_m c_m g_{S^{n_m}}: each factor contributes
  // n_m (n_m - 1) / c_m.
  out.scalar = 0;
  for (int a = 0; a < m; ++a)
    out.scalar += Rat(mu.instance.factors[a] * (mu.instance.factors[a] - 1)) /
                  data.G[a];

  // |H|^2: per atom the block of H is a multiple of the unit tensor factor,
  // with coefficient sum_m n_m rho_m / c_m (trace of the per-factor Veronese
  // second fundamental forms over a pullback-orthonormal frame).
  out.mean_h2 = 0;
  for (const Atom& atom : mu.atoms) {
    Rat coef(0);
    for (int a = 0; a < m; ++a)
      coef += Rat(mu.instance.factors[a]) *
              rho({mu.instance.factors[a], atom.l_vec[a]}) / data.G[a];
    out.mean_h2 += atom.weight * coef * coef;
  }

  // Average of U^T A U over the pullback unit sphere via the exact quartic
  // moments of the per-factor norm splits w_m = c_m U_m.
  const Rat nn2 = Rat(n) * Rat(n + 2);
  out.avg_quartic = 0;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      const long na = mu.instance.factors[a], nb = mu.instance.factors[b];
      const Rat moment = (a == b) ? Rat(Int(na) * Int(na + 2)) / nn2
                                  : Rat(Int(na) * Int(nb)) / nn2;
      out.avg_quartic += data.A[a][b] / (data.G[a] * data.G[b]) * moment;
    }

  out.residual =
      out.scalar - (Rat(3, 2) * out.mean_h2 - nn2 / 2 * out.avg_quartic);
  return out;
}

PetruninSampled petrunin_scalar_check_sampled(const ExplicitImmersion& f,
                                              const Point& p, int directions,
                                              std::uint64_t seed) {
  const FramePoint fp = make_frame_point(f, p, canonical_frame(f, p));
  const SffSample s = sff_sample(f, fp);
  const int n = s.dim();

  PetruninSampled out;
  out.scalar = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) out.scalar += gauss_rm(s, i, j, j, i);
  out.mean_h2 = s.mean_curvature.squaredNorm();

  long double acc = 0;
  for (int k = 0; k < directions; ++k) {
    std::mt19937_64 rng = substream(seed, k);
    const Tangent u = random_unit_tangent(f, p, rng);
    acc += sff_quadratic(f, fp, u).squaredNorm();
  }
  out.avg_quartic = directions > 0 ? static_cast<double>(acc / directions) : 0.0;
  out.residual = out.scalar - (1.5 * out.mean_h2 -
                               0.5 * n * (n + 2) * out.avg_quartic);
  return out;
}

AngleBound angle_bound(const FramePoint& fp, double c) {
  if (c > 2.0)
    throw std::invalid_argument("angle_bound: the estimate requires c <= 2");
  AngleBound out;
  out.lhs = fp.x_nor.norm();
  out.rhs = 1.0 + 0.5 * c * (fp.position.squaredNorm() - 1.0);
  out.margin = out.lhs - out.rhs;
  return out;
}

double offdiag_bound(const SffSample& s, int i, int j, double c_f) {
  check_index(s, i);
  check_index(s, j);
  if (i == j) throw std::invalid_argument("offdiag_bound needs i != j");
  const double sum2 = (s.table[i][i] + s.table[j][j]).squaredNorm();
  return 4.0 * c_f * c_f - (sum2 + 4.0 * s.table[i][j].squaredNorm());
}

double conformal_sec(const SffSample& s, int i, int j, double c) {
  check_index(s, i);
  check_index(s, j);
  if (i == j) throw std::invalid_argument("conformal_sec needs i != j");
  const Eigen::VectorXd& aii = s.table[i][i];
  const Eigen::VectorXd& ajj = s.table[j][j];
  const double xi = s.fp.position.dot(s.fp.frame_ambient[i]);
  const double xj = s.fp.position.dot(s.fp.frame_ambient[j]);
  return 2.0 * c + aii.dot(ajj) - s.table[i][j].squaredNorm() +
         c * s.fp.x_nor.dot(aii + ajj) + c * c * (xi * xi + xj * xj) -
         c * c * s.fp.x_tan.squaredNorm();
}

Pic2Blocks pic2_blocks(const SffSample& s, const std::array<int, 4>& idx,
                       const PicParams& p) {
  check_frame4(s, idx);
  const double l2 = p.lam * p.lam, m2 = p.mu * p.mu;
  Pic2Blocks b;
  b.W = s.table[idx[0]][idx[0]] + m2 * s.table[idx[1]][idx[1]];
  b.X = s.table[idx[2]][idx[2]] + l2 * s.table[idx[3]][idx[3]];
  b.Y = s.table[idx[0]][idx[2]] - p.lam * p.mu * s.table[idx[1]][idx[3]];
  b.Z = p.lam * s.table[idx[0]][idx[3]] + p.mu * s.table[idx[1]][idx[2]];
  b.S = (1 + l2) * b.W + (1 + m2) * b.X;
  return b;
}

double pic2_quantity(const SffSample& s, const std::array<int, 4>& idx,
                     const PicParams& p, double c) {
  check_frame4(s, idx);
  const double l2 = p.lam * p.lam, m2 = p.mu * p.mu;
  // The mixed term is conformally invariant after rescaling: for fully
  // orthogonal frames e^{2 psi} Rm~(e1,e2,e3,e4) = Rm(e1,e2,e3,e4).
  return conformal_sec(s, idx[0], idx[2], c) +
         l2 * conformal_sec(s, idx[0], idx[3], c) +
         m2 * conformal_sec(s, idx[1], idx[2], c) +
         l2 * m2 * conformal_sec(s, idx[1], idx[3], c) -
         2.0 * p.lam * p.mu * gauss_rm(s, idx[0], idx[1], idx[2], idx[3]);
}

std::array<double, 2> pic2_helper_margins(const SffSample& s,
                                          const std::array<int, 4>& idx,
                                          const PicParams& p, double c_f) {
  const Pic2Blocks b = pic2_blocks(s, idx, p);
  const double l2 = p.lam * p.lam, m2 = p.mu * p.mu;
  const double prod = (1 + l2) * (1 + m2);
  const double rhs = 4.0 * prod * prod * c_f * c_f;
  return {rhs - (b.S.squaredNorm() + 4.0 * prod * b.Y.squaredNorm()),
          rhs - (b.S.squaredNorm() + 4.0 * prod * b.Z.squaredNorm())};
}

Eigen::MatrixXd conformal_ricci_matrix(const SffSample& s, double c) {
  const int n = s.dim();
  const Eigen::MatrixXd ric = gauss_ricci_matrix(s);
  // For psi = -(c/2) r^2 the proof's formulas reduce to
  //   hess psi = -c g - c <x_nor, A>,  d psi(e_i) = -c <x, e_i>,
  //   lap psi = -c n - c <x_nor, H>,  |grad psi|^2 = c^2 |x_tan|^2.
  Eigen::VectorXd xe(n);
  for (int i = 0; i < n; ++i) xe(i) = s.fp.position.dot(s.fp.frame_ambient[i]);
  const double diag = c * n + c * s.fp.x_nor.dot(s.mean_curvature) -
                      (n - 2) * c * c * s.fp.x_tan.squaredNorm();
  Eigen::MatrixXd out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double v = ric(i, j) + (n - 2) * c * s.fp.x_nor.dot(s.table[i][j]) +
                 (n - 2) * c * c * xe(i) * xe(j);
      if (i == j) v += (n - 2) * c + diag;
      out(i, j) = v;
    }
  return out;
}

ExperimentalReport experimental_conditions(const SffSample& s,
                                           ExperimentalCondition which,
                                           double c) {
  const int n = s.dim();
  if (n < 2) throw std::invalid_argument("experimental conditions need n >= 2");
  ExperimentalReport rep;
  rep.which = which;
  const Eigen::MatrixXd ric = conformal_ricci_matrix(s, c);

  if (which == ExperimentalCondition::biricci) {
    rep.min_value = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double v = ric(i, i) + ric(j, j) - conformal_sec(s, i, j, c);
        rep.values.push_back(v);
        rep.min_value = std::min(rep.min_value, v);
      }
    rep.condition_holds = rep.min_value > 0;
    return rep;
  }

  // ric_eigen: the n = 4 form compares Ricci eigenvalues; the general form
  // evaluates scal~ - 2 Ric~ on the frame vectors.
  if (n == 4) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ric);
    const Eigen::VectorXd ev = es.eigenvalues();  // ascending
    for (int i = 0; i < 4; ++i) rep.values.push_back(ev(i));
    rep.min_value = ev(0) + ev(1) + ev(2) - ev(3);
  } else {
    const double scal = ric.trace();
    rep.min_value = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      const double v = scal - 2.0 * ric(i, i);
      rep.values.push_back(v);
      rep.min_value = std::min(rep.min_value, v);
    }
  }
  rep.condition_holds = rep.min_value > 0;
  return rep;
}

}  // namespace verocurv
