#pragma once

#include <cstdint>
#include <optional>

#include "verocurv/copositivity.hpp"
#include "verocurv/measure.hpp"

namespace verocurv {

struct SearchConfig {
  int l_max = 2;          // grid bound per coordinate
  int max_support = 4;    // atom-count bound
  int restarts = 24;
  int moves_per_restart = 60;
  std::uint64_t seed = 12022;
  double budget_secs = 0;  // 0 = no budget

  void require_valid() const;
};

struct IsotropicSolution {
  QVec weights;  // aligned with the requested support; zeros allowed
  Rat s;
  bool exact;       // rational snap verified by is_isotropic
  double residual;  // max |s G_a G_b - A_ab| on the numeric path
};

// Solves B(s) = 0 with sum(alpha) = 1, alpha >= 0, s > 0 on a fixed support
// by damped Gauss-Newton from seeded random interior starts, then snaps to
// rationals and verifies exactly. "No solution found" is not a proof of
// nonexistence.
std::optional<IsotropicSolution> solve_isotropic_system(
    const ProblemInstance& instance, const std::vector<std::vector<int>>& support,
    std::uint64_t seed = 7, int starts = 200);

struct SearchOutcome {
  VeroneseMeasure best;
  CopositivityCertificate certificate;
  bool complete = true;  // false when the time budget ran out
  long evaluations = 0;
};

// Random-restart local search over supports and weights, minimizing the
// exact critical s. Deterministic for a fixed seed and config.
SearchOutcome minimize_s(const ProblemInstance& instance, const SearchConfig& cfg,
                         const VeroneseMeasure* warm_start = nullptr);

}  // namespace verocurv
