#include "verocurv/exact_linalg.hpp"

#include <cassert>
#include <stdexcept>

namespace verocurv {

Rat dot(const QVec& x, const QVec& y) {
  assert(x.size() == y.size());
  Rat acc(0);
  for (size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

QVec mat_vec(const QMat& a, const QVec& x) {
  QVec out(a.size(), Rat(0));
  for (size_t i = 0; i < a.size(); ++i) out[i] = dot(a[i], x);
  return out;
}

Rat quad_form(const QMat& b, const QVec& u) { return dot(u, mat_vec(b, u)); }

LinearSolution solve_general(QMat a, QVec b) {
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  if (static_cast<int>(b.size()) != rows)
    throw std::invalid_argument("rhs size mismatch");

  std::vector<int> pivot_col;  // pivot column of row r, in order
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pr = -1;
    for (int i = r; i < rows; ++i)
      if (!is_zero(a[i][c])) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    std::swap(a[pr], a[r]);
    std::swap(b[pr], b[r]);
    const Rat inv = 1 / a[r][c];
    for (int j = c; j < cols; ++j) a[r][j] *= inv;
    b[r] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || is_zero(a[i][c])) continue;
      const Rat f = a[i][c];
      for (int j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }

  LinearSolution sol;
  sol.rank = r;
  for (int i = r; i < rows; ++i)
    if (!is_zero(b[i])) {
      sol.consistent = false;
      return sol;
    }
  sol.consistent = true;

  std::vector<int> pivot_of_col(cols, -1);
  for (int k = 0; k < r; ++k) pivot_of_col[pivot_col[k]] = k;

  sol.particular.assign(cols, Rat(0));
  for (int k = 0; k < r; ++k) sol.particular[pivot_col[k]] = b[k];

  for (int c = 0; c < cols; ++c) {
    if (pivot_of_col[c] >= 0) continue;
    QVec v(cols, Rat(0));
    v[c] = 1;
    for (int k = 0; k < r; ++k) v[pivot_col[k]] = -a[k][c];
    sol.nullspace.push_back(std::move(v));
  }
  return sol;
}

namespace {

// Clears denominators row by row so Bareiss can run over the integers.
void integerize_rows(QMat& a, QVec& b) {
  for (size_t i = 0; i < a.size(); ++i) {
    Int l(1);
    for (const Rat& q : a[i]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), b[i].get_den().get_mpz_t());
    for (Rat& q : a[i]) q *= l;
    b[i] *= l;
  }
}

}  // namespace

std::optional<QVec> solve_square(QMat a, QVec b) {
  const int n = static_cast<int>(a.size());
  if (static_cast<int>(b.size()) != n)
    throw std::invalid_argument("rhs size mismatch");
  for (const auto& row : a)
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("matrix must be square");
  if (n == 0) return QVec{};

  integerize_rows(a, b);
  std::vector<std::vector<Int>> m(n, std::vector<Int>(n + 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[i][j] = a[i][j].get_num();
    m[i][n] = b[i].get_num();
  }

  // Bareiss fraction-free elimination; every division below is exact.
  Int prev(1);
  for (int k = 0; k < n; ++k) {
    int pr = -1;
    for (int i = k; i < n; ++i)
      if (m[i][k] != 0) {
        pr = i;
        break;
      }
    if (pr < 0) return std::nullopt;
    std::swap(m[pr], m[k]);
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j <= n; ++j) {
        Int t = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }

  QVec x(n, Rat(0));
  for (int i = n - 1; i >= 0; --i) {
    Rat acc(m[i][n]);
    for (int j = i + 1; j < n; ++j) acc -= Rat(m[i][j]) * x[j];
    x[i] = acc / Rat(m[i][i]);
    x[i].canonicalize();
  }
  return x;
}

}  // namespace verocurv
