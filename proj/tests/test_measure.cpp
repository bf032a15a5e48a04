#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "verocurv/measure.hpp"

using namespace verocurv;

namespace {

// mu = 2/3 delta_(1,1) + 1/3 delta_(0,2) on S^n x S^1.
VeroneseMeasure sns1_measure(int n) {
  VeroneseMeasure mu;
  mu.instance.factors = {n, 1};
  mu.atoms = {{{1, 1}, Rat(2, 3)}, {{0, 2}, Rat(1, 3)}};
  return mu;
}

VeroneseMeasure random_measure(const ProblemInstance& inst, int atoms,
                               std::mt19937_64& rng) {
  VeroneseMeasure mu{inst, {}};
  std::uniform_int_distribution<int> lpick(0, 3);
  std::uniform_int_distribution<int> wpick(1, 9);
  while (static_cast<int>(mu.atoms.size()) < atoms) {
    std::vector<int> l(inst.factors.size());
    for (int& v : l) v = lpick(rng);
    bool dup = false;
    for (const Atom& a : mu.atoms) dup = dup || a.l_vec == l;
    if (dup) continue;
    mu.atoms.push_back({l, Rat(wpick(rng))});
  }
  Rat total(0);
  for (const Atom& a : mu.atoms) total += a.weight;
  for (Atom& a : mu.atoms) a.weight /= total;
  return mu;
}

}  // namespace

TEST_CASE("validate accepts a single full-weight atom") {
  VeroneseMeasure mu{{{2, 1}}, {{{1, 1}, Rat(1)}}};
  CHECK_FALSE(validate(mu).has_value());
}

TEST_CASE("validate reports a bad weight sum") {
  VeroneseMeasure mu{{{2, 1}}, {{{1, 1}, Rat(1, 2)}, {{0, 2}, Rat(1, 3)}}};
  auto v = validate(mu);
  REQUIRE(v.has_value());
  CHECK(*v == "weights sum to 5/6");
}

TEST_CASE("validate reports duplicate atoms") {
  VeroneseMeasure mu{{{2}}, {{{1}, Rat(1, 2)}, {{1}, Rat(1, 2)}}};
  auto v = validate(mu);
  REQUIRE(v.has_value());
  CHECK(*v == "duplicate atom");
}

TEST_CASE("curvature data of the S^n x S^1 measure") {
  const CurvatureData d = curvature_data(sns1_measure(2));
  CHECK(d.G == QVec{Rat(2, 3), Rat(2)});
  CHECK(d.A[0][0] == Rat(2, 3));
  CHECK(d.A[0][1] == 2);
  CHECK(d.A[1][0] == 2);
  CHECK(d.A[1][1] == 6);
}

TEST_CASE("single atom of ones gives unit diagonal, 3 off-diagonal, G = 1") {
  VeroneseMeasure mu{{{3, 2, 1}}, {{{1, 1, 1}, Rat(1)}}};
  const CurvatureData d = curvature_data(mu);
  for (int a = 0; a < 3; ++a) {
    CHECK(d.G[a] == 1);
    for (int b = 0; b < 3; ++b) CHECK(d.A[a][b] == (a == b ? 1 : 3));
  }
}

TEST_CASE("coordinate with l = 0 everywhere gives G_m = 0") {
  VeroneseMeasure mu{{{2, 1}}, {{{1, 0}, Rat(1, 2)}, {{2, 0}, Rat(1, 2)}}};
  const CurvatureData d = curvature_data(mu);
  CHECK(is_zero(d.G[1]));
  auto bad = immersion_check(d);
  REQUIRE(bad.has_value());
  CHECK(*bad == 1);
}

TEST_CASE("immersion check passes on the S^n x S^1 measure") {
  CHECK_FALSE(immersion_check(curvature_data(sns1_measure(2))).has_value());
}

TEST_CASE("the constant-map measure is degenerate at the first coordinate") {
  VeroneseMeasure mu{{{2, 2}}, {{{0, 0}, Rat(1)}}};
  auto bad = immersion_check(curvature_data(mu));
  REQUIRE(bad.has_value());
  CHECK(*bad == 0);
}

TEST_CASE("ambient dimensions of the paper measures") {
  for (int n = 2; n <= 6; ++n)
    CHECK(ambient_dimension(sns1_measure(n)) == 2 * n + 4);

  for (int n2 = 1; n2 <= 5; ++n2) {
    const int n1 = n2 + 1;
    VeroneseMeasure mu{{{n1, n2}},
                       {{{1, 1}, Rat(n2 + 1, 2 * n2 + 1)},
                        {{0, 2}, Rat(n2, 2 * n2 + 1)}}};
    CHECK(ambient_dimension(mu) ==
          Int((n1 + 1) * (n2 + 1) + n2 * (n2 + 3) / 2));
  }

  for (int n = 1; n <= 4; ++n) {
    VeroneseMeasure mu{{{n, 1, 1}},
                       {{{1, 5, 5}, Rat(5, 9)},
                        {{0, 2, 11}, Rat(200, 7371)},
                        {{0, 5, 10}, Rat(719, 3024)},
                        {{0, 11, 2}, Rat(3025, 16848)}}};
    CHECK_FALSE(validate(mu).has_value());
    CHECK(ambient_dimension(mu) == 4 * n + 16);
  }
}

TEST_CASE("curvature data is linear in the measure") {
  std::mt19937_64 rng(99);
  ProblemInstance inst{{2, 1, 3}};
  for (int trial = 0; trial < 20; ++trial) {
    VeroneseMeasure a = random_measure(inst, 3, rng);
    VeroneseMeasure b = random_measure(inst, 2, rng);
    const Rat t = make_rat(static_cast<long>(rng() % 7), 7);
    const VeroneseMeasure m = mix(t, a, b);
    const CurvatureData da = curvature_data(a), db = curvature_data(b),
                        dm = curvature_data(m);
    for (int i = 0; i < 3; ++i) {
      CHECK(dm.G[i] == t * da.G[i] + (1 - t) * db.G[i]);
      for (int j = 0; j < 3; ++j)
        CHECK(dm.A[i][j] == t * da.A[i][j] + (1 - t) * db.A[i][j]);
    }
  }
}

TEST_CASE("M = 1 reduces to scalar expectations") {
  VeroneseMeasure mu{{{2}}, {{{1}, Rat(1, 2)}, {{2}, Rat(1, 2)}}};
  const CurvatureData d = curvature_data(mu);
  CHECK(d.G[0] == Rat(1, 2) + Rat(1, 2) * 3);      // E[rho]
  CHECK(d.A[0][0] == Rat(1, 2) + Rat(1, 2) * 12);  // E[lambda]
}

TEST_CASE("permuting the factors permutes A and G") {
  std::mt19937_64 rng(31337);
  VeroneseMeasure mu = random_measure({{2, 1, 3}}, 3, rng);
  VeroneseMeasure perm = mu;
  std::swap(perm.instance.factors[0], perm.instance.factors[2]);
  for (Atom& a : perm.atoms) std::swap(a.l_vec[0], a.l_vec[2]);
  const CurvatureData d = curvature_data(mu), dp = curvature_data(perm);
  const int p[3] = {2, 1, 0};
  for (int i = 0; i < 3; ++i) {
    CHECK(dp.G[i] == d.G[p[i]]);
    for (int j = 0; j < 3; ++j) CHECK(dp.A[i][j] == d.A[p[i]][p[j]]);
  }
}

TEST_CASE("measure equality ignores atom order") {
  VeroneseMeasure a = sns1_measure(2);
  VeroneseMeasure b = a;
  std::swap(b.atoms[0], b.atoms[1]);
  CHECK(same_measure(a, b));
  b.atoms[0].weight += Rat(1, 100);
  CHECK_FALSE(same_measure(a, b));
}

TEST_CASE("json round trip in lowest terms") {
  VeroneseMeasure mu{{{2, 1}}, {{{1, 1}, make_rat(4, 6)}, {{0, 2}, make_rat(2, 6)}}};
  const nlohmann::json j = measure_to_json(mu);
  CHECK(j["atoms"][0]["w"] == "2/3");
  CHECK(j["atoms"][1]["w"] == "1/3");
  const VeroneseMeasure back = measure_from_json(j);
  CHECK(same_measure(mu, back));
}

TEST_CASE("malformed measure files are rejected") {
  CHECK_THROWS(measure_from_json(nlohmann::json{{"factors", {2, 1}}}));
  CHECK_THROWS(measure_from_json(nlohmann::json::parse(
      R"({"factors": [2], "atoms": [{"l": [1], "w": "1/0"}]})")));
}
