#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <random>

#include "verocurv/measure.hpp"

namespace verocurv {

// Point of a product of spheres: one unit vector per factor.
struct Point {
  std::vector<Eigen::VectorXd> comp;
};

// Tangent vector at a point, stored per factor.
struct Tangent {
  std::vector<Eigen::VectorXd> comp;
};

Tangent tangent_add(const Tangent& a, const Tangent& b);
Tangent tangent_sub(const Tangent& a, const Tangent& b);
Tangent tangent_scale(double c, const Tangent& a);

// Map into the unit ball together with its differential and the constants
// c_m of the pullback metric sum c_m g_{S^{n_m}}.
struct ExplicitImmersion {
  ProblemInstance domain;
  int ambient_dim = 0;
  std::vector<double> metric_scales;
  std::function<Eigen::VectorXd(const Point&)> value;
  std::function<Eigen::VectorXd(const Point&, const Tangent&)> differential;

  int intrinsic_dim() const {
    int n = 0;
    for (int f : domain.factors) n += f;
    return n;
  }
};

// (x, t) -> (r1 cos t x, r1 sin t x, r2 cos 2t, r2 sin 2t); needs r1, r2 > 0
// and r1^2 + r2^2 = 1 so the image sits on the unit sphere.
ExplicitImmersion build_sns1(int n, double r1, double r2);

// Single-factor Veronese map of degree l, realized explicitly for l <= 2.
ExplicitImmersion build_veronese(int n, int l);

// Weighted direct sum of tensor products over the atoms of mu; every atom
// must have all indices <= 2.
ExplicitImmersion build_tensor(const VeroneseMeasure& mu);

double pullback_norm2(const ExplicitImmersion& f, const Tangent& u);
std::vector<double> factor_norm2(const Tangent& u);

// Product-metric geodesic through x with initial velocity u: a great circle
// with constant speed in each factor.
Point geodesic_at(const Point& x, const Tangent& u, double t);

struct FramePoint {
  Point base;
  Eigen::VectorXd position;
  std::vector<Tangent> frame;                  // pullback-orthonormal
  std::vector<Eigen::VectorXd> frame_ambient;  // dF(e_i), orthonormal in R^N
  Eigen::VectorXd x_tan, x_nor;                // position = x_tan + x_nor
};

FramePoint make_frame_point(const ExplicitImmersion& f, const Point& x,
                            const std::vector<Tangent>& frame);

// Frame aligned with the product factors.
std::vector<Tangent> canonical_frame(const ExplicitImmersion& f, const Point& x);

std::vector<Tangent> rotate_frame(const std::vector<Tangent>& frame,
                                  const Eigen::MatrixXd& rot);
Eigen::MatrixXd random_rotation(int n, std::mt19937_64& rng);

Point random_point(const ProblemInstance& inst, std::mt19937_64& rng);
Tangent random_unit_tangent(const ExplicitImmersion& f, const Point& x,
                            std::mt19937_64& rng);

// Near-optimal step for the Richardson-combined second-difference stencil:
// truncation ~ h^4 and rounding ~ eps / h^2 balance around 2^-8.
inline constexpr double kSffStep = 0x1p-8;

// A(w,w) for any tangent w: second derivative of F along the geodesic by
// central differences with Richardson extrapolation (h and h/2), tangential
// component projected out.
Eigen::VectorXd sff_quadratic(const ExplicitImmersion& f, const FramePoint& fp,
                              const Tangent& w, double h = kSffStep);

// Unit-vector entry point; rejects non-unit u and underflowing steps.
Eigen::VectorXd sff_at(const ExplicitImmersion& f, const FramePoint& fp,
                       const Tangent& u, double h = kSffStep);

struct SffSample {
  FramePoint fp;
  std::vector<std::vector<Eigen::VectorXd>> table;  // A(e_i, e_j)
  Eigen::VectorXd mean_curvature;                   // H = tr A

  int dim() const { return static_cast<int>(table.size()); }
};

SffSample sff_sample(const ExplicitImmersion& f, const FramePoint& fp,
                     double h = kSffStep);

// |A_F(u,u)|^2 = sum_m E[lambda_m] U_m^2 + 6 sum_{a<b} E[rho_a rho_b] U_a U_b
// with U_m = |u_m|^2 in the round norm of factor m.
Rat closed_form_sff_norm2(const VeroneseMeasure& mu, const QVec& U);

struct CurvatureStats {
  double max = 0, min = 0, mean = 0, stddev = 0;
  int count = 0;
};

// Seeded sampling of |A(u,u)| over random base points and random unit
// tangent directions of the pullback metric.
CurvatureStats estimate_normal_curvature(const ExplicitImmersion& f,
                                         int samples, std::uint64_t seed);

// Independent deterministic RNG stream per (seed, index).
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index);

}  // namespace verocurv
