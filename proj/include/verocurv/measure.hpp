#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "verocurv/rational.hpp"

namespace verocurv {

// Product of round spheres, one dimension per factor.
struct ProblemInstance {
  std::vector<int> factors;  // n_m >= 1

  int num_factors() const { return static_cast<int>(factors.size()); }
};

// One weighted eigenvalue multi-index.
struct Atom {
  std::vector<int> l_vec;
  Rat weight;  // > 0
};

// Finitely supported probability measure on N_0^M.
struct VeroneseMeasure {
  ProblemInstance instance;
  std::vector<Atom> atoms;
};

// nullopt when all invariants hold; otherwise the first violation, described.
std::optional<std::string> validate(const VeroneseMeasure& mu);

// A_mm = E[lambda_m], A_ab = 3 E[rho_a rho_b] (a != b), G_m = E[rho_m].
struct CurvatureData {
  QMat A;
  QVec G;

  int dim() const { return static_cast<int>(G.size()); }
};

CurvatureData curvature_data(const VeroneseMeasure& mu);

// N = sum over atoms of prod_m D(n_m, l_m).
Int ambient_dimension(const VeroneseMeasure& mu);

// nullopt when every G_m > 0; otherwise the first degenerate coordinate
// (0-based) where the map fails to immerse.
std::optional<int> immersion_check(const CurvatureData& data);

// Atom order is not semantic; comparisons go through the sorted form.
VeroneseMeasure normalized(VeroneseMeasure mu);
bool same_measure(const VeroneseMeasure& a, const VeroneseMeasure& b);

// Convex combination t*a + (1-t)*b of two measures on the same instance.
VeroneseMeasure mix(const Rat& t, const VeroneseMeasure& a,
                    const VeroneseMeasure& b);

// File format: {"factors": [ints], "atoms": [{"l": [ints], "w": "p/q"}]}.
VeroneseMeasure measure_from_json(const nlohmann::json& j);
nlohmann::json measure_to_json(const VeroneseMeasure& mu);
VeroneseMeasure load_measure(const std::string& path);
void save_measure(const VeroneseMeasure& mu, const std::string& path);

}  // namespace verocurv
