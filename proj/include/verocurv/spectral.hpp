#pragma once

#include "verocurv/rational.hpp"

namespace verocurv {

// Eigenvalue slot on the round sphere S^n.
struct SpectralParams {
  int n;  // sphere dimension, >= 1
  int l;  // eigenvalue index, >= 0
};

// Throws std::invalid_argument when n < 1 or l < 0.
void require_valid(const SpectralParams& p);

// Dimension of the l-th Laplace eigenspace on S^n:
// C(n+l-1, n-1) + C(n+l-2, n-1).
Int eigen_dimension(const SpectralParams& p);

// Pullback-metric scale of the degree-l Veronese map: l(l+n-1)/n.
Rat rho(const SpectralParams& p);

// Isotropy constant of the degree-l Veronese map, defined by
// |A(u,u)|^2 = lambda * |u|_round^4.
Rat lambda_iso(const SpectralParams& p);

}  // namespace verocurv
