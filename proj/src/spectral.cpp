#include "verocurv/spectral.hpp"

#include <stdexcept>

namespace verocurv {

void require_valid(const SpectralParams& p) {
  if (p.n < 1) throw std::invalid_argument("sphere dimension must be >= 1");
  if (p.l < 0) throw std::invalid_argument("eigenvalue index must be >= 0");
}

Int eigen_dimension(const SpectralParams& p) {
  require_valid(p);
  return binomial(p.n + p.l - 1, p.n - 1) + binomial(p.n + p.l - 2, p.n - 1);
}

Rat rho(const SpectralParams& p) {
  require_valid(p);
  Rat out(Int(p.l) * Int(p.l + p.n - 1), Int(p.n));
  out.canonicalize();
  return out;
}

Rat lambda_iso(const SpectralParams& p) {
  require_valid(p);
  const Rat r = rho(p);
  Rat out = (Rat(3 * p.n) * r * r - Rat(2 * (p.n - 1)) * r) / Rat(p.n + 2);
  out.canonicalize();
  return out;
}

}  // namespace verocurv
