#include "verocurv/sphere_moments.hpp"

#include <stdexcept>

namespace verocurv {

Poly poly_mul(const Poly& p, const Poly& q) {
  Poly out;
  for (const auto& [ea, ca] : p)
    for (const auto& [eb, cb] : q) {
      std::vector<int> e(ea.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out[e] += ca * cb;
    }
  return out;
}

Rat sphere_monomial_moment(const std::vector<int>& exps, int d) {
  if (static_cast<int>(exps.size()) != d)
    throw std::invalid_argument("exponent count must equal the dimension");
  long total = 0;
  for (int e : exps) {
    if (e < 0) throw std::invalid_argument("negative exponent");
    if (e % 2 != 0) return Rat(0);
    total += e;
  }
  Int num(1);
  for (int e : exps)
    for (int k = e - 1; k >= 1; k -= 2) num *= k;  // (e-1)!!
  Int den(1);
  for (long k = 0; k < total / 2; ++k) den *= (d + 2 * k);
  Rat out(num, den);
  out.canonicalize();
  return out;
}

Rat poly_sphere_mean(const Poly& p, int d) {
  Rat acc(0);
  for (const auto& [e, c] : p) acc += c * sphere_monomial_moment(e, d);
  return acc;
}

Poly form_to_poly(const QMat& q) {
  const int d = static_cast<int>(q.size());
  Poly p;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (is_zero(q[i][j])) continue;
      std::vector<int> e(d, 0);
      e[i] += 1;
      e[j] += 1;
      p[e] += q[i][j];
    }
  return p;
}

namespace {

Rat form_inner(const QMat& a, const QMat& b, int d) {
  return poly_sphere_mean(poly_mul(form_to_poly(a), form_to_poly(b)), d);
}

}  // namespace

Degree2Basis degree2_harmonic_basis(int n) {
  if (n < 1) throw std::invalid_argument("sphere dimension must be >= 1");
  const int d = n + 1;
  std::vector<QMat> raw;
  // x_i x_j for i < j, then x_i^2 - x_{i+1}^2; spans the harmonics since all
  // of these are traceless.
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      QMat q = zero_matrix(d, d);
      q[i][j] = Rat(1, 2);
      q[j][i] = Rat(1, 2);
      raw.push_back(q);
    }
  for (int i = 0; i + 1 < d; ++i) {
    QMat q = zero_matrix(d, d);
    q[i][i] = 1;
    q[i + 1][i + 1] = -1;
    raw.push_back(q);
  }

  // Gram-Schmidt without normalization, exact over Q.
  Degree2Basis basis;
  basis.n = n;
  for (QMat q : raw) {
    for (size_t k = 0; k < basis.forms.size(); ++k) {
      const Rat coef = form_inner(q, basis.forms[k], d) / basis.norms2[k];
      if (is_zero(coef)) continue;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) q[i][j] -= coef * basis.forms[k][i][j];
    }
    const Rat norm2 = form_inner(q, q, d);
    if (is_zero(norm2)) continue;  // dependent direction
    basis.forms.push_back(std::move(q));
    basis.norms2.push_back(norm2);
  }
  return basis;
}

}  // namespace verocurv
