#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <vector>

#include "verocurv/exact_linalg.hpp"
#include "verocurv/spectral.hpp"

using namespace verocurv;

namespace {

// Independent oracle: dimension of the space of harmonic homogeneous
// polynomials of degree l in d variables, computed as the nullity of the
// Laplacian acting on monomial coefficient vectors.
Int harmonic_dimension_bruteforce(int d, int l) {
  std::vector<std::vector<int>> monos;
  std::vector<int> cur(d, 0);
  auto enumerate = [&](auto&& self, int pos, int left,
                       std::vector<std::vector<int>>& out) -> void {
    if (pos == d - 1) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur[pos] = e;
      self(self, pos + 1, left - e, out);
    }
  };
  enumerate(enumerate, 0, l, monos);
  if (l < 2) return Int(monos.size());

  std::vector<std::vector<int>> lower;
  enumerate(enumerate, 0, l - 2, lower);
  std::map<std::vector<int>, int> lower_index;
  for (size_t i = 0; i < lower.size(); ++i)
    lower_index[lower[i]] = static_cast<int>(i);

  // Laplacian matrix: rows = degree l-2 monomials, columns = degree l.
  QMat lap = zero_matrix(static_cast<int>(lower.size()),
                         static_cast<int>(monos.size()));
  for (size_t c = 0; c < monos.size(); ++c)
    for (int i = 0; i < d; ++i) {
      const int e = monos[c][i];
      if (e < 2) continue;
      std::vector<int> tgt = monos[c];
      tgt[i] -= 2;
      lap[lower_index[tgt]][c] += Rat(e * (e - 1));
    }
  LinearSolution sol = solve_general(lap, QVec(lower.size(), Rat(0)));
  return Int(static_cast<long>(monos.size()) - sol.rank);
}

}  // namespace

TEST_CASE("eigenspace dimensions match the closed form") {
  CHECK(eigen_dimension({2, 0}) == 1);
  CHECK(eigen_dimension({2, 2}) == 5);  // C(3,1) + C(2,1)
  CHECK(eigen_dimension({1, 5}) == 2);
  CHECK(eigen_dimension({1, 0}) == 1);
  CHECK(eigen_dimension({3, 1}) == 4);
  CHECK(eigen_dimension({1, 500}) == 2);
  CHECK(eigen_dimension({4, 2}) == 14);
}

TEST_CASE("eigenspace dimensions match the harmonic polynomial count") {
  for (int n = 1; n <= 3; ++n)
    for (int l = 0; l <= 4; ++l) {
      CAPTURE(n);
      CAPTURE(l);
      CHECK(eigen_dimension({n, l}) == harmonic_dimension_bruteforce(n + 1, l));
    }
}

TEST_CASE("rho values") {
  for (int n = 1; n <= 10; ++n) CHECK(rho({n, 1}) == 1);
  CHECK(rho({2, 2}) == 3);
  CHECK(rho({1, 7}) == 49);
  CHECK(rho({3, 0}) == 0);
  CHECK(rho({2, 3}) == 6);
  CHECK(rho({4, 2}) == Rat(5, 2));
}

TEST_CASE("lambda values") {
  for (int n = 1; n <= 10; ++n) CHECK(lambda_iso({n, 1}) == 1);
  CHECK(lambda_iso({2, 2}) == 12);
  CHECK(lambda_iso({1, 3}) == 81);
  CHECK(lambda_iso({5, 0}) == 0);
  CHECK(lambda_iso({4, 2}) == 10);  // 8(n+1)/n at n = 4
}

TEST_CASE("circle closed forms: rho = l^2, lambda = l^4") {
  for (int l = 0; l <= 40; ++l) {
    CHECK(rho({1, l}) == Int(l) * Int(l));
    CHECK(lambda_iso({1, l}) == Int(l) * Int(l) * Int(l) * Int(l));
  }
}

TEST_CASE("lambda is nonnegative") {
  for (int n = 1; n <= 12; ++n)
    for (int l = 0; l <= 30; ++l) CHECK(sgn(lambda_iso({n, l})) >= 0);
}

TEST_CASE("no overflow ceiling on the dimension formula") {
  // l in the hundreds on a fat sphere: the count is astronomically large
  // but exact.
  const Int d = eigen_dimension({10, 300});
  CHECK(d > 0);
  CHECK(d == binomial(309, 9) + binomial(308, 9));
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(eigen_dimension({0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(rho({1, -1}), std::invalid_argument);
  CHECK_THROWS_AS(lambda_iso({-2, 0}), std::invalid_argument);
}
