#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace verocurv {

using Int = mpz_class;
using Rat = mpq_class;
using QVec = std::vector<Rat>;
using QMat = std::vector<std::vector<Rat>>;

// C(n,k), zero outside 0 <= k <= n.
Int binomial(long n, long k);

// Parses "p" or "p/q" (q != 0); throws std::invalid_argument on bad input.
Rat rat_from_string(const std::string& text);

// Lowest terms; omits "/1".
std::string rat_to_string(const Rat& q);

double to_double(const Rat& q);

// Exact: every finite double is a dyadic rational.
Rat rat_from_double(double x);

// Best continued-fraction approximation with |x - p/q| <= tol and q <= max_den.
std::optional<Rat> snap_rational(double x, double tol = 1e-12,
                                 long max_den = 1000000000L);

inline bool is_zero(const Rat& q) { return sgn(q) == 0; }

// Canonicalized p/q; the two-argument mpq_class constructor does not reduce.
inline Rat make_rat(long p, long q) {
  Rat out(p, q);
  out.canonicalize();
  return out;
}

QMat zero_matrix(int rows, int cols);

}  // namespace verocurv
