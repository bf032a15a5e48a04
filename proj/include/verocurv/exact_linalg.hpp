#pragma once

#include <optional>

#include "verocurv/rational.hpp"

namespace verocurv {

// Structure of the solution set of A x = b over Q.
struct LinearSolution {
  bool consistent = false;
  int rank = 0;
  QVec particular;              // one solution (free variables set to zero)
  std::vector<QVec> nullspace;  // basis of ker A
};

// Gauss-Jordan elimination with exact pivots; any shape.
LinearSolution solve_general(QMat a, QVec b);

// Fraction-free (Bareiss) elimination for square systems.
// Returns nullopt when the matrix is singular.
std::optional<QVec> solve_square(QMat a, QVec b);

Rat dot(const QVec& x, const QVec& y);
QVec mat_vec(const QMat& a, const QVec& x);
Rat quad_form(const QMat& b, const QVec& u);  // u^T b u

}  // namespace verocurv
