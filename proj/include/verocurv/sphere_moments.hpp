#pragma once

#include <map>

#include "verocurv/rational.hpp"

namespace verocurv {

// Polynomial over Q in d variables, keyed by exponent vector.
using Poly = std::map<std::vector<int>, Rat>;

Poly poly_mul(const Poly& p, const Poly& q);

// Mean of the monomial x^e over the unit sphere S^{d-1} in R^d:
// prod (e_i - 1)!! / (d (d+2) ... (d + 2|e|/2 - 2)), zero for odd exponents.
Rat sphere_monomial_moment(const std::vector<int>& exps, int d);

// Mean of p over S^{d-1}.
Rat poly_sphere_mean(const Poly& p, int d);

// Pairwise orthogonal (in the mean-square inner product on S^n) basis of the
// degree-2 harmonic polynomials in n+1 variables, with exact coefficients.
// Forms are symmetric traceless matrices Q, the polynomial being x^T Q x.
struct Degree2Basis {
  int n = 0;
  std::vector<QMat> forms;
  QVec norms2;  // mean-square norm of each form's polynomial
};

Degree2Basis degree2_harmonic_basis(int n);

Poly form_to_poly(const QMat& q);

}  // namespace verocurv
