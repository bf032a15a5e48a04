#pragma once

#include <Eigen/Dense>

#include "verocurv/exact_linalg.hpp"
#include "verocurv/measure.hpp"

namespace verocurv {

// Exact face enumeration visits all 2^M - 1 supports; past this we fall back
// to the non-certified numeric bisection path.
inline constexpr int kFaceEnumerationCap = 12;

struct SimplexMinimum {
  Rat value;
  QVec argmin;  // point of the standard simplex
};

// Global minimum of U^T B U over {U >= 0, sum U = 1} by KKT face enumeration.
// Throws std::length_error when dim(B) exceeds the enumeration cap.
SimplexMinimum simplex_quadratic_min(const QMat& b);

struct CopositivityResult {
  bool copositive;
  Rat simplex_min;
  QVec witness;  // simplex point attaining the minimum
};

CopositivityResult is_copositive(const QMat& b);

enum class CertMode { exact, numeric };

struct CopositivityCertificate {
  Rat s_star;                // meaningful in exact mode
  double s_star_num = 0.0;   // always filled
  QVec u_star;               // normalized by G . u_star = 1
  Eigen::VectorXd u_star_num;
  std::vector<int> support;  // indices with u_star > 0, ascending
  CertMode mode = CertMode::exact;
  bool certified = true;     // false only on the bisection fallback
};

// Minimal s with B(s) = s G G^T - A copositive; equals the squared normal
// curvature of the tensor immersion. Requires immersion_check(data) == ok.
CopositivityCertificate critical_s(const CurvatureData& data);

// Double-precision variant: KKT enumeration up to the cap (feasibility
// tolerance `tol`), bisection against a heuristic simplex minimizer beyond it.
CopositivityCertificate critical_s_numeric(const Eigen::MatrixXd& a,
                                           const Eigen::VectorXd& g,
                                           double tol = 1e-9);

// B(s) == 0, i.e. the associated immersion is isotropic at s.
bool is_isotropic(const CurvatureData& data, const Rat& s);

QMat b_of_s(const CurvatureData& data, const Rat& s);

Eigen::MatrixXd to_eigen(const QMat& m);
Eigen::VectorXd to_eigen(const QVec& v);

}  // namespace verocurv
