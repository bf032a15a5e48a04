#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "verocurv/exact_linalg.hpp"

using namespace verocurv;

namespace {

Rat random_rat(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 9);
  Rat q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

QMat random_matrix(int rows, int cols, std::mt19937_64& rng) {
  QMat m = zero_matrix(rows, cols);
  for (auto& row : m)
    for (auto& q : row) q = random_rat(rng);
  return m;
}

}  // namespace

TEST_CASE("square solve on a known system") {
  QMat a = {{Rat(2), Rat(1)}, {Rat(1), Rat(3)}};
  QVec b = {Rat(5), Rat(10)};
  auto x = solve_square(a, b);
  REQUIRE(x.has_value());
  CHECK((*x)[0] == 1);
  CHECK((*x)[1] == 3);
}

TEST_CASE("singular square solve returns nothing") {
  QMat a = {{Rat(1), Rat(2)}, {Rat(2), Rat(4)}};
  CHECK_FALSE(solve_square(a, {Rat(1), Rat(1)}).has_value());
}

TEST_CASE("general solve flags inconsistency") {
  QMat a = {{Rat(1), Rat(2)}, {Rat(2), Rat(4)}};
  LinearSolution sol = solve_general(a, {Rat(1), Rat(3)});
  CHECK_FALSE(sol.consistent);
  CHECK(sol.rank == 1);
}

TEST_CASE("general solve produces particular + nullspace structure") {
  // x + y + z = 3 has a 2-dimensional solution set
  QMat a = {{Rat(1), Rat(1), Rat(1)}};
  LinearSolution sol = solve_general(a, {Rat(3)});
  REQUIRE(sol.consistent);
  CHECK(sol.rank == 1);
  CHECK(sol.nullspace.size() == 2);
  CHECK(dot(a[0], sol.particular) == 3);
  for (const QVec& v : sol.nullspace) CHECK(is_zero(dot(a[0], v)));
}

TEST_CASE("random systems: particular and nullspace verify exactly") {
  std::mt19937_64 rng(20240811);
  for (int trial = 0; trial < 60; ++trial) {
    const int rows = 1 + static_cast<int>(rng() % 5);
    const int cols = 1 + static_cast<int>(rng() % 5);
    QMat a = random_matrix(rows, cols, rng);
    // build a consistent rhs from a random solution
    QVec x0(cols);
    for (Rat& q : x0) q = random_rat(rng);
    QVec b = mat_vec(a, x0);
    LinearSolution sol = solve_general(a, b);
    REQUIRE(sol.consistent);
    CHECK(mat_vec(a, sol.particular) == b);
    for (const QVec& v : sol.nullspace) {
      QVec av = mat_vec(a, v);
      for (const Rat& q : av) CHECK(is_zero(q));
    }
    CHECK(static_cast<int>(sol.nullspace.size()) == cols - sol.rank);
  }
}

TEST_CASE("random nonsingular squares: Bareiss agrees with Gauss-Jordan") {
  std::mt19937_64 rng(7);
  int solved = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    QMat a = random_matrix(n, n, rng);
    QVec b(n);
    for (Rat& q : b) q = random_rat(rng);
    auto fast = solve_square(a, b);
    LinearSolution gen = solve_general(a, b);
    if (!fast) {
      CHECK((gen.rank < n || !gen.consistent));
      continue;
    }
    ++solved;
    REQUIRE(gen.consistent);
    CHECK(gen.rank == n);
    CHECK(*fast == gen.particular);
    CHECK(mat_vec(a, *fast) == b);
  }
  CHECK(solved > 30);  // random rational squares are almost always regular
}

TEST_CASE("quadratic form helper") {
  QMat b = {{Rat(1), Rat(-2)}, {Rat(-2), Rat(1)}};
  CHECK(quad_form(b, {Rat(1, 2), Rat(1, 2)}) == Rat(-1, 2));
  CHECK(quad_form(b, {Rat(1), Rat(0)}) == 1);
}
