#include "verocurv/immersion.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "verocurv/copositivity.hpp"
#include "verocurv/sphere_moments.hpp"
#include "verocurv/spectral.hpp"

namespace verocurv {

Tangent tangent_add(const Tangent& a, const Tangent& b) {
  Tangent out = a;
  for (size_t m = 0; m < out.comp.size(); ++m) out.comp[m] += b.comp[m];
  return out;
}

Tangent tangent_sub(const Tangent& a, const Tangent& b) {
  Tangent out = a;
  for (size_t m = 0; m < out.comp.size(); ++m) out.comp[m] -= b.comp[m];
  return out;
}

Tangent tangent_scale(double c, const Tangent& a) {
  Tangent out = a;
  for (auto& v : out.comp) v *= c;
  return out;
}

std::vector<double> factor_norm2(const Tangent& u) {
  std::vector<double> out;
  out.reserve(u.comp.size());
  for (const auto& v : u.comp) out.push_back(v.squaredNorm());
  return out;
}

double pullback_norm2(const ExplicitImmersion& f, const Tangent& u) {
  double acc = 0;
  for (size_t m = 0; m < u.comp.size(); ++m)
    acc += f.metric_scales[m] * u.comp[m].squaredNorm();
  return acc;
}

Point geodesic_at(const Point& x, const Tangent& u, double t) {
  Point out = x;
  for (size_t m = 0; m < x.comp.size(); ++m) {
    const double speed = u.comp[m].norm();
    if (speed == 0.0) continue;
    out.comp[m] =
        std::cos(speed * t) * x.comp[m] + (std::sin(speed * t) / speed) * u.comp[m];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

ExplicitImmersion build_sns1(int n, double r1, double r2) {
  if (n < 1) throw std::invalid_argument("build_sns1: n must be >= 1");
  if (!(r1 > 0) || !(r2 > 0))
    throw std::invalid_argument("build_sns1: radii must be positive");
  if (std::abs(r1 * r1 + r2 * r2 - 1.0) > 1e-12)
    throw std::invalid_argument("build_sns1: r1^2 + r2^2 must equal 1");

  ExplicitImmersion f;
  f.domain = ProblemInstance{{n, 1}};
  f.ambient_dim = 2 * n + 4;
  f.metric_scales = {r1 * r1, r1 * r1 + 4 * r2 * r2};
  // The circle point is carried as (cos t, sin t); cos 2t and sin 2t come out
  // of the double-angle identities so no angle is ever extracted.
  f.value = [n, r1, r2](const Point& p) {
    const auto& x = p.comp[0];
    const double c = p.comp[1](0), s = p.comp[1](1);
    Eigen::VectorXd out(2 * n + 4);
    out.segment(0, n + 1) = r1 * c * x;
    out.segment(n + 1, n + 1) = r1 * s * x;
    out(2 * n + 2) = r2 * (c * c - s * s);
    out(2 * n + 3) = r2 * (2 * c * s);
    return out;
  };
  f.differential = [n, r1, r2](const Point& p, const Tangent& u) {
    const auto& x = p.comp[0];
    const auto& v = u.comp[0];
    const double c = p.comp[1](0), s = p.comp[1](1);
    const double dc = u.comp[1](0), ds = u.comp[1](1);
    Eigen::VectorXd out(2 * n + 4);
    out.segment(0, n + 1) = r1 * (c * v + dc * x);
    out.segment(n + 1, n + 1) = r1 * (s * v + ds * x);
    out(2 * n + 2) = r2 * 2 * (c * dc - s * ds);
    out(2 * n + 3) = r2 * 2 * (dc * s + c * ds);
    return out;
  };
  return f;
}

namespace {

// One explicit factor map phi_{n,l}, l <= 2.
struct FactorMap {
  int n = 0;
  int l = 0;
  int dim = 1;
  std::vector<Eigen::MatrixXd> forms;  // l = 2 components, x^T M_k x

  Eigen::VectorXd value(const Eigen::VectorXd& x) const {
    if (l == 0) return Eigen::VectorXd::Ones(1);
    if (l == 1) return x;
    Eigen::VectorXd out(dim);
    for (int k = 0; k < dim; ++k) out(k) = x.dot(forms[k] * x);
    return out;
  }

  Eigen::VectorXd diff(const Eigen::VectorXd& x, const Eigen::VectorXd& v) const {
    if (l == 0) return Eigen::VectorXd::Zero(1);
    if (l == 1) return v;
    Eigen::VectorXd out(dim);
    for (int k = 0; k < dim; ++k) out(k) = 2.0 * x.dot(forms[k] * v);
    return out;
  }
};

FactorMap make_factor_map(int n, int l) {
  FactorMap f;
  f.n = n;
  f.l = l;
  if (l == 0) {
    f.dim = 1;
    return f;
  }
  if (l == 1) {
    f.dim = n + 1;
    return f;
  }
  // Mean-square orthonormal eigenbasis scaled by D^{-1/2}; |phi| = 1 follows
  // from the addition theorem for the eigenspace.
  const Degree2Basis basis = degree2_harmonic_basis(n);
  f.dim = static_cast<int>(basis.forms.size());
  for (int k = 0; k < f.dim; ++k) {
    const double scale =
        1.0 / std::sqrt(to_double(basis.norms2[k]) * static_cast<double>(f.dim));
    Eigen::MatrixXd m = to_eigen(basis.forms[k]) * scale;
    f.forms.push_back(std::move(m));
  }
  return f;
}

Eigen::VectorXd kron(const std::vector<Eigen::VectorXd>& parts) {
  Eigen::VectorXd out = Eigen::VectorXd::Ones(1);
  for (const auto& p : parts) {
    Eigen::VectorXd next(out.size() * p.size());
    for (int i = 0; i < out.size(); ++i)
      next.segment(i * p.size(), p.size()) = out(i) * p;
    out = std::move(next);
  }
  return out;
}

}  // namespace

ExplicitImmersion build_veronese(int n, int l) {
  if (n < 1) throw std::invalid_argument("build_veronese: n must be >= 1");
  if (l < 0 || l > 2)
    throw std::invalid_argument(
        "build_veronese: only l <= 2 is realized explicitly");
  FactorMap fm = make_factor_map(n, l);
  ExplicitImmersion f;
  f.domain = ProblemInstance{{n}};
  f.ambient_dim = fm.dim;
  f.metric_scales = {to_double(rho({n, std::max(l, 0)}))};
  f.value = [fm](const Point& p) { return fm.value(p.comp[0]); };
  f.differential = [fm](const Point& p, const Tangent& u) {
    return fm.diff(p.comp[0], u.comp[0]);
  };
  return f;
}

ExplicitImmersion build_tensor(const VeroneseMeasure& mu) {
  if (auto bad = validate(mu))
    throw std::invalid_argument("build_tensor: invalid measure: " + *bad);
  for (const Atom& a : mu.atoms)
    for (int l : a.l_vec)
      if (l > 2) {
        std::ostringstream os;
        os << "build_tensor: atom (";
        for (size_t i = 0; i < a.l_vec.size(); ++i)
          os << (i ? "," : "") << a.l_vec[i];
        os << ") has an index > 2; no explicit factor available";
        throw std::invalid_argument(os.str());
      }
  const CurvatureData data = curvature_data(mu);
  if (auto degenerate = immersion_check(data))
    throw std::invalid_argument(
        "build_tensor: map is degenerate in coordinate " +
        std::to_string(*degenerate + 1));

  const int m = mu.instance.num_factors();
  struct Block {
    double sqrt_weight;
    std::vector<FactorMap> factors;
    int dim;
  };
  auto blocks = std::make_shared<std::vector<Block>>();
  int total = 0;
  for (const Atom& a : mu.atoms) {
    Block b;
    b.sqrt_weight = std::sqrt(to_double(a.weight));
    b.dim = 1;
    for (int k = 0; k < m; ++k) {
      b.factors.push_back(make_factor_map(mu.instance.factors[k], a.l_vec[k]));
      b.dim *= b.factors.back().dim;
    }
    total += b.dim;
    blocks->push_back(std::move(b));
  }

  ExplicitImmersion f;
  f.domain = mu.instance;
  f.ambient_dim = total;
  for (int k = 0; k < m; ++k) f.metric_scales.push_back(to_double(data.G[k]));
  f.value = [blocks, total, m](const Point& p) {
    Eigen::VectorXd out(total);
    int at = 0;
    for (const Block& b : *blocks) {
      std::vector<Eigen::VectorXd> parts;
      parts.reserve(m);
      for (int k = 0; k < m; ++k) parts.push_back(b.factors[k].value(p.comp[k]));
      out.segment(at, b.dim) = b.sqrt_weight * kron(parts);
      at += b.dim;
    }
    return out;
  };
  f.differential = [blocks, total, m](const Point& p, const Tangent& u) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(total);
    int at = 0;
    for (const Block& b : *blocks) {
      std::vector<Eigen::VectorXd> values;
      values.reserve(m);
      for (int k = 0; k < m; ++k) values.push_back(b.factors[k].value(p.comp[k]));
      for (int k = 0; k < m; ++k) {
        std::vector<Eigen::VectorXd> parts = values;
        parts[k] = b.factors[k].diff(p.comp[k], u.comp[k]);
        out.segment(at, b.dim) += b.sqrt_weight * kron(parts);
      }
      at += b.dim;
    }
    return out;
  };
  return f;
}

// ---------------------------------------------------------------------------
// Frames and sampling
// ---------------------------------------------------------------------------

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 of the pair gives independent, platform-stable streams.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z = z ^ (z >> 31);
  return std::mt19937_64(z);
}

Point random_point(const ProblemInstance& inst, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Point p;
  for (int n : inst.factors) {
    Eigen::VectorXd x(n + 1);
    do {
      for (int i = 0; i <= n; ++i) x(i) = gauss(rng);
    } while (x.norm() < 1e-8);
    p.comp.push_back(x.normalized());
  }
  return p;
}

Tangent random_unit_tangent(const ExplicitImmersion& f, const Point& x,
                            std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Tangent u;
  for (size_t m = 0; m < x.comp.size(); ++m) {
    const auto& xm = x.comp[m];
    Eigen::VectorXd v(xm.size());
    for (int i = 0; i < v.size(); ++i) v(i) = gauss(rng);
    v -= v.dot(xm) * xm;
    // isotropic in pullback-orthonormal coordinates, so that normalization
    // yields the uniform distribution on the pullback unit sphere
    u.comp.push_back(v / std::sqrt(f.metric_scales[m]));
  }
  const double norm = std::sqrt(pullback_norm2(f, u));
  if (norm < 1e-10) return random_unit_tangent(f, x, rng);
  return tangent_scale(1.0 / norm, u);
}

std::vector<Tangent> canonical_frame(const ExplicitImmersion& f, const Point& x) {
  std::vector<Tangent> frame;
  const int m = static_cast<int>(x.comp.size());
  for (int k = 0; k < m; ++k) {
    const auto& xk = x.comp[k];
    const int d = static_cast<int>(xk.size());
    // Orthonormal completion of x_k via a Householder reflection.
    Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
    Eigen::VectorXd w = xk;
    w(0) += (xk(0) >= 0 ? 1.0 : -1.0);
    Eigen::MatrixXd h = id - (2.0 / w.squaredNorm()) * (w * w.transpose());
    // Column 0 of h is -sign(x0) * x_k; the rest span the tangent space.
    const double scale = 1.0 / std::sqrt(f.metric_scales[k]);
    for (int c = 1; c < d; ++c) {
      Tangent e;
      for (int j = 0; j < m; ++j)
        e.comp.push_back(Eigen::VectorXd::Zero(x.comp[j].size()));
      e.comp[k] = scale * h.col(c);
      frame.push_back(std::move(e));
    }
  }
  return frame;
}

std::vector<Tangent> rotate_frame(const std::vector<Tangent>& frame,
                                  const Eigen::MatrixXd& rot) {
  const int n = static_cast<int>(frame.size());
  std::vector<Tangent> out;
  for (int i = 0; i < n; ++i) {
    Tangent e = tangent_scale(rot(0, i), frame[0]);
    for (int j = 1; j < n; ++j)
      e = tangent_add(e, tangent_scale(rot(j, i), frame[j]));
    out.push_back(std::move(e));
  }
  return out;
}

Eigen::MatrixXd random_rotation(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i)
    if (r(i, i) < 0) q.col(i) = -q.col(i);
  return q;
}

FramePoint make_frame_point(const ExplicitImmersion& f, const Point& x,
                            const std::vector<Tangent>& frame) {
  FramePoint fp;
  fp.base = x;
  fp.position = f.value(x);
  fp.frame = frame;
  for (const Tangent& e : frame) fp.frame_ambient.push_back(f.differential(x, e));
  fp.x_tan = Eigen::VectorXd::Zero(fp.position.size());
  for (const auto& fa : fp.frame_ambient) fp.x_tan += fp.position.dot(fa) * fa;
  fp.x_nor = fp.position - fp.x_tan;
  return fp;
}

Eigen::VectorXd sff_quadratic(const ExplicitImmersion& f, const FramePoint& fp,
                              const Tangent& w, double h) {
  if (!(h > 1e-12)) throw std::invalid_argument("sff: step size underflow");
  const Eigen::VectorXd& f0 = fp.position;
  auto second = [&](double step) -> Eigen::VectorXd {
    const Eigen::VectorXd fp1 = f.value(geodesic_at(fp.base, w, step));
    const Eigen::VectorXd fm1 = f.value(geodesic_at(fp.base, w, -step));
    return (fp1 - 2.0 * f0 + fm1) / (step * step);
  };
  // Richardson: central stencils at h and h/2 cancel the h^2 error term.
  const Eigen::VectorXd d2 = (4.0 * second(h / 2) - second(h)) / 3.0;
  Eigen::VectorXd normal = d2;
  for (const auto& fa : fp.frame_ambient) normal -= d2.dot(fa) * fa;
  return normal;
}

Eigen::VectorXd sff_at(const ExplicitImmersion& f, const FramePoint& fp,
                       const Tangent& u, double h) {
  if (std::abs(pullback_norm2(f, u) - 1.0) > 1e-8)
    throw std::invalid_argument("sff_at: u is not a pullback unit vector");
  return sff_quadratic(f, fp, u, h);
}

SffSample sff_sample(const ExplicitImmersion& f, const FramePoint& fp, double h) {
  SffSample s;
  s.fp = fp;
  const int n = static_cast<int>(fp.frame.size());
  s.table.assign(n, std::vector<Eigen::VectorXd>(n));
  for (int i = 0; i < n; ++i)
    s.table[i][i] = sff_quadratic(f, fp, fp.frame[i], h);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Eigen::VectorXd plus =
          sff_quadratic(f, fp, tangent_add(fp.frame[i], fp.frame[j]), h);
      const Eigen::VectorXd minus =
          sff_quadratic(f, fp, tangent_sub(fp.frame[i], fp.frame[j]), h);
      s.table[i][j] = s.table[j][i] = 0.25 * (plus - minus);
    }
  s.mean_curvature = Eigen::VectorXd::Zero(fp.position.size());
  for (int i = 0; i < n; ++i) s.mean_curvature += s.table[i][i];
  return s;
}

Rat closed_form_sff_norm2(const VeroneseMeasure& mu, const QVec& u) {
  for (const Rat& q : u)
    if (sgn(q) < 0)
      throw std::invalid_argument("closed_form_sff_norm2: U must be >= 0");
  return quad_form(curvature_data(mu).A, u);
}

CurvatureStats estimate_normal_curvature(const ExplicitImmersion& f,
                                         int samples, std::uint64_t seed) {
  CurvatureStats stats;
  stats.count = samples;
  stats.min = std::numeric_limits<double>::infinity();
  stats.max = -stats.min;
  long double sum = 0, sum2 = 0;
  for (int k = 0; k < samples; ++k) {
    std::mt19937_64 rng = substream(seed, k);
    const Point p = random_point(f.domain, rng);
    const Tangent u = random_unit_tangent(f, p, rng);
    const FramePoint fp = make_frame_point(f, p, canonical_frame(f, p));
    const double norm = sff_quadratic(f, fp, u).norm();
    stats.min = std::min(stats.min, norm);
    stats.max = std::max(stats.max, norm);
    sum += norm;
    sum2 += static_cast<long double>(norm) * norm;
  }
  if (samples > 0) {
    stats.mean = static_cast<double>(sum / samples);
    const long double var = sum2 / samples - (sum / samples) * (sum / samples);
    stats.stddev = var > 0 ? static_cast<double>(std::sqrt(var)) : 0.0;
  }
  return stats;
}

}  // namespace verocurv
