#include "verocurv/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace verocurv {

Int binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  Int out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return out;
}

Rat rat_from_string(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Rat q;
  if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
    throw std::invalid_argument("bad rational literal: " + text);
  if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0)
    throw std::invalid_argument("zero denominator: " + text);
  q.canonicalize();
  return q;
}

std::string rat_to_string(const Rat& q) {
  Rat c = q;
  c.canonicalize();  // output contract: lowest terms
  return c.get_str();
}

double to_double(const Rat& q) { return q.get_d(); }

Rat rat_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite double");
  return Rat(x);
}

std::optional<Rat> snap_rational(double x, double tol, long max_den) {
  if (!std::isfinite(x)) return std::nullopt;
  // Convergents h_k/k_k of the continued fraction of x, seeded with
  // h_{-2}/k_{-2} = 0/1 and h_{-1}/k_{-1} = 1/0.
  double rem = x;
  Int p_prev = 0, q_prev = 1;
  Int p = 1, q = 0;
  for (int iter = 0; iter < 64; ++iter) {
    double fl = std::floor(rem);
    if (std::abs(fl) > 9e17) break;
    Int a(static_cast<long>(fl));
    Int p_next = a * p + p_prev;
    Int q_next = a * q + q_prev;
    if (q_next > max_den || q_next <= 0) break;
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
    Rat cand(p, q);
    cand.canonicalize();
    if (std::abs(to_double(cand) - x) <= tol * std::max(1.0, std::abs(x)))
      return cand;
    double frac = rem - fl;
    if (frac < 1e-18) break;
    rem = 1.0 / frac;
  }
  return std::nullopt;
}

QMat zero_matrix(int rows, int cols) {
  return QMat(rows, QVec(cols, Rat(0)));
}

}  // namespace verocurv
