#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "verocurv/optimizer.hpp"

using namespace verocurv;

TEST_CASE("isotropic system recovers the two-sphere closed form") {
  for (int n2 = 1; n2 <= 5; ++n2) {
    const int n1 = n2 + 1;
    auto sol = solve_isotropic_system({{n1, n2}}, {{1, 1}, {0, 2}});
    REQUIRE(sol.has_value());
    CHECK(sol->exact);
    CHECK(sol->s == Rat(2 * n2 + 1, n2 + 1));
    CHECK(sol->weights[0] == Rat(n2 + 1, 2 * n2 + 1));
    CHECK(sol->weights[1] == Rat(n2, 2 * n2 + 1));
  }
}

TEST_CASE("isotropic system recovers the three-sphere closed form") {
  for (int n3 = 1; n3 <= 5; ++n3) {
    const int n1 = n3 + 2, n2 = n3 + 1;
    auto sol = solve_isotropic_system(
        {{n1, n2, n3}}, {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}, {0, 0, 2}});
    REQUIRE(sol.has_value());
    CHECK(sol->exact);
    CHECK(sol->s == Rat(6 * n3 + 5, 3 * n3 + 3));
    CHECK(sol->weights[0] == Rat(n3 + 1, 6 * n3 + 5));
    CHECK(sol->weights[1] == Rat(2 * (n3 + 1), 6 * n3 + 5));
    CHECK(sol->weights[2] == Rat(2 * (n3 + 1), 6 * n3 + 5));
    CHECK(sol->weights[3] == make_rat(n3, 6 * n3 + 5));
  }
}

TEST_CASE("isotropic system recovers the S^n x T^2 measure") {
  auto sol = solve_isotropic_system(
      {{2, 1, 1}}, {{1, 5, 5}, {0, 2, 11}, {0, 5, 10}, {0, 11, 2}});
  REQUIRE(sol.has_value());
  CHECK(sol->exact);
  CHECK(sol->s == Rat(9, 5));
  CHECK(sol->weights[0] == Rat(5, 9));
  CHECK(sol->weights[1] == Rat(200, 7371));
  CHECK(sol->weights[2] == Rat(719, 3024));
  CHECK(sol->weights[3] == Rat(3025, 16848));
}

TEST_CASE("inconsistent supports report no solution") {
  // single atom (1,1): s G_1^2 = 1 and s G_1 G_2 = 3 cannot both hold
  CHECK_FALSE(solve_isotropic_system({{2, 2}}, {{1, 1}}).has_value());
}

TEST_CASE("support missing a coordinate is structurally rejected") {
  CHECK_FALSE(solve_isotropic_system({{2, 2}}, {{1, 0}, {2, 0}}).has_value());
}

TEST_CASE("duplicate support atoms are invalid") {
  CHECK_THROWS_AS(solve_isotropic_system({{2, 1}}, {{1, 1}, {1, 1}}),
                  std::invalid_argument);
}

TEST_CASE("search reaches s = 3/2 on S^2 x S^1") {
  SearchConfig cfg;
  cfg.restarts = 8;
  cfg.moves_per_restart = 25;
  const SearchOutcome out = minimize_s({{2, 1}}, cfg);
  CHECK(out.complete);
  CHECK(out.certificate.s_star == Rat(3, 2));
  const VeroneseMeasure expect{{{2, 1}},
                               {{{1, 1}, Rat(2, 3)}, {{0, 2}, Rat(1, 3)}}};
  CHECK(same_measure(out.best, expect));
}

TEST_CASE("search reaches s = 5/3 on S^2 x S^2") {
  SearchConfig cfg;
  cfg.restarts = 8;
  cfg.moves_per_restart = 25;
  const SearchOutcome out = minimize_s({{2, 2}}, cfg);
  CHECK(out.complete);
  CHECK(out.certificate.s_star == Rat(5, 3));
}

TEST_CASE("single circle: the best measure is the single atom delta_1") {
  SearchConfig cfg;
  cfg.restarts = 4;
  cfg.moves_per_restart = 10;
  const SearchOutcome out = minimize_s({{1}}, cfg);
  CHECK(out.certificate.s_star == 1);
  REQUIRE(out.best.atoms.size() == 1);
  CHECK(out.best.atoms[0].l_vec == std::vector<int>{1});
}

TEST_CASE("same seed gives identical searches") {
  SearchConfig cfg;
  cfg.restarts = 3;
  cfg.moves_per_restart = 10;
  cfg.seed = 424242;
  const SearchOutcome a = minimize_s({{2, 1}}, cfg);
  const SearchOutcome b = minimize_s({{2, 1}}, cfg);
  CHECK(same_measure(a.best, b.best));
  CHECK(a.certificate.s_star == b.certificate.s_star);
  CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("warm start is monotone") {
  const VeroneseMeasure warm{{{2, 1}},
                             {{{1, 1}, Rat(2, 3)}, {{0, 2}, Rat(1, 3)}}};
  SearchConfig cfg;
  cfg.restarts = 1;
  cfg.moves_per_restart = 2;
  cfg.l_max = 1;  // cripple the search so only the warm start can win
  const SearchOutcome out = minimize_s({{2, 1}}, cfg, &warm);
  CHECK(out.certificate.s_star <= Rat(3, 2));
}

TEST_CASE("zero budget flags an incomplete search") {
  SearchConfig cfg;
  cfg.restarts = 50;
  cfg.moves_per_restart = 50;
  cfg.budget_secs = 1e-9;
  const VeroneseMeasure warm{{{2, 1}},
                             {{{1, 1}, Rat(2, 3)}, {{0, 2}, Rat(1, 3)}}};
  const SearchOutcome out = minimize_s({{2, 1}}, cfg, &warm);
  CHECK_FALSE(out.complete);
  CHECK(out.certificate.s_star <= Rat(3, 2));  // best-so-far is returned
}
