#pragma once

#include <json.hpp>

#include "verocurv/measure.hpp"

namespace verocurv {

// Weighted point set on a common sphere of radius Q in R^M. Coordinates are
// exact rationals (decimal inputs convert exactly from their binary values).
struct DesignInput {
  std::vector<QVec> points;
  QVec weights;
  Rat radius2;  // Q^2

  int dim() const { return points.empty() ? 0 : static_cast<int>(points[0].size()); }
};

// nullopt when valid; points must sit on the common sphere within norm_tol
// (exactly when the data is exact).
std::optional<std::string> validate(const DesignInput& d, double norm_tol = 1e-9);

struct MomentIdentity {
  std::string name;
  Rat lhs, rhs;

  Rat residual() const { return lhs - rhs; }
};

// The three degree <= 4 moment families of a spherical 4-design:
// second moments 1/n, pure fourth 3/(n(n+2)), mixed fourth 1/(n(n+2)).
struct MomentReport {
  std::vector<MomentIdentity> identities;
  bool exact_pass = false;      // every residual is exactly zero
  double max_abs_residual = 0;  // for inputs carrying rounding error

  bool numeric_pass(double tol = 1e-12) const { return max_abs_residual < tol; }
  std::vector<std::string> violations(double tol = 1e-12) const;
};

MomentReport check_design_moments(const DesignInput& d);

// Folds integer design points to componentwise absolute values (rho and
// lambda are even in l on circles), merges collisions, and returns the
// measure on the all-circles instance. Rejects non-integer coordinates and
// the zero vector.
VeroneseMeasure design_to_measure(const DesignInput& d,
                                  const ProblemInstance& instance);

// File format: {"radius2": int, "points": [[int|"p/q"|float,...]],
//               "weights": ["p/q",...]}.
DesignInput design_from_json(const nlohmann::json& j);
nlohmann::json design_to_json(const DesignInput& d);
DesignInput load_design(const std::string& path);

}  // namespace verocurv
