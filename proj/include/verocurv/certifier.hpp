#pragma once

#include <array>

#include "verocurv/immersion.hpp"

namespace verocurv {

// Riemann tensor of the pullback metric from the Gauss equation:
// <A(e_i,e_l), A(e_j,e_k)> - <A(e_i,e_k), A(e_j,e_l)>.
// gauss_rm(s, i, j, j, i) is a sectional curvature in this convention.
double gauss_rm(const SffSample& s, int i, int j, int k, int l);

// Traced Gauss equation: Ric(e_i,e_i) = <A(e_i,e_i), H> - |A(e_i,.)|^2.
double gauss_ricci(const SffSample& s, int i);

// Full Ricci matrix in the sample frame (bilinear in the table, equivalent
// to polarizing gauss_ricci over rotated frames).
Eigen::MatrixXd gauss_ricci_matrix(const SffSample& s);

// Both sides of R = 3/2 |H|^2 - n(n+2)/2 avg |A(u,u)|^2, exactly, for a
// tensor-immersion measure. The sphere average uses the exact quartic
// moments; the residual is zero as an identity.
struct PetruninExact {
  Rat scalar;      // R of the pullback metric
  Rat mean_h2;     // |H|^2
  Rat avg_quartic; // average of |A(u,u)|^2 over the pullback unit sphere
  Rat residual;    // scalar - (3/2 mean_h2 - n(n+2)/2 avg)
};
PetruninExact petrunin_scalar_check(const VeroneseMeasure& mu);

// Monte-Carlo version at a single point of an arbitrary immersion.
struct PetruninSampled {
  double scalar;
  double mean_h2;
  double avg_quartic;
  double residual;
};
PetruninSampled petrunin_scalar_check_sampled(const ExplicitImmersion& f,
                                              const Point& p, int directions,
                                              std::uint64_t seed);

// Angle estimate |x_nor| >= 1 + c/2 (|x|^2 - 1); margin = lhs - rhs.
struct AngleBound {
  double lhs, rhs, margin;
};
AngleBound angle_bound(const FramePoint& fp, double c);

// 4 c_f^2 - (|A_ii + A_jj|^2 + 4 |A_ij|^2); nonnegative when c_f bounds the
// normal curvature.
double offdiag_bound(const SffSample& s, int i, int j, double c_f);

// Rescaled conformal sectional curvature e^{2 psi} sec~_{ij} for
// psi = -(c/2) r^2, from the exact equality line:
// 2c + <A_ii, A_jj> - |A_ij|^2 + c <x_nor, A_ii + A_jj>
//    + c^2 (<x, e_i>^2 + <x, e_j>^2) - c^2 |x_tan|^2.
double conformal_sec(const SffSample& s, int i, int j, double c);

struct PicParams {
  double lam = 0, mu = 0;  // both in [-1, 1]
};

struct Pic2Blocks {
  Eigen::VectorXd W, X, Y, Z, S;
};
Pic2Blocks pic2_blocks(const SffSample& s, const std::array<int, 4>& idx,
                       const PicParams& p);

// Rescaled PIC-2 quantity e^{2 psi} Q~_{lam,mu}: the four conformal
// sectionals plus the mixed Riemann term, which is conformally invariant for
// fully orthogonal frames.
double pic2_quantity(const SffSample& s, const std::array<int, 4>& idx,
                     const PicParams& p, double c);

// Margins of the two helper inequalities
// |S|^2 + 4 (1+lam^2)(1+mu^2) |Y or Z|^2 <= 4 (1+lam^2)^2 (1+mu^2)^2 c_f^2.
std::array<double, 2> pic2_helper_margins(const SffSample& s,
                                          const std::array<int, 4>& idx,
                                          const PicParams& p, double c_f);

// Conformal Ricci in the sample frame for psi = -(c/2) r^2.
Eigen::MatrixXd conformal_ricci_matrix(const SffSample& s, double c);

enum class ExperimentalCondition { biricci, ric_eigen };

struct ExperimentalReport {
  ExperimentalCondition which;
  // biricci: rescaled BiRic~(e_i, e_j) over all pairs; min recorded.
  // ric_eigen: eigenvalues of the conformal Ricci and the margin of
  // lam_1 + lam_2 + lam_3 - lam_4 (n = 4), plus min over frame vectors of
  // scal~ - 2 Ric~(e_i, e_i).
  std::vector<double> values;
  double min_value = 0;
  bool condition_holds = false;
};
ExperimentalReport experimental_conditions(const SffSample& s,
                                           ExperimentalCondition which,
                                           double c);

}  // namespace verocurv
