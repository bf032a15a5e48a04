// verocurv: build tensor Veronese immersions of products of spheres, compute
// their exact normal curvature via copositivity, search for better measures,
// and certify the conformal curvature inequalities by sampling.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "verocurv/certifier.hpp"
#include "verocurv/copositivity.hpp"
#include "verocurv/design.hpp"
#include "verocurv/immersion.hpp"
#include "verocurv/optimizer.hpp"
#include "verocurv/report.hpp"
#include "verocurv/spectral.hpp"

using namespace verocurv;
namespace fs = std::filesystem;

namespace {

struct GlobalOpts {
  std::uint64_t seed = 12022;
  std::string out;
  std::string format = "text";
};

void register_input(RunReport& rep, const std::string& label,
                    const std::string& path) {
  rep.inputs[label] = {{"path", path}, {"fnv1a64", fnv1a64_file(path)}};
}

int emit(const RunReport& rep, const GlobalOpts& g, bool ok) {
  if (g.format == "structured")
    std::cout << report_to_json(rep).dump(2) << "\n";
  else
    std::cout << report_to_text(rep);
  if (!g.out.empty()) {
    std::ofstream f(g.out);
    if (!f) {
      std::cerr << "cannot write report to " << g.out << "\n";
      return 2;
    }
    f << report_to_json(rep).dump(2) << "\n";
  }
  std::cerr << "[verocurv] " << rep.command << ": " << format_stat(rep.wall_ms)
            << " ms, " << (ok ? "ok" : "FAILED") << "\n";
  return ok ? 0 : 1;
}

std::vector<int> parse_factors(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  if (out.empty()) throw CLI::ValidationError("--factors must be nonempty");
  return out;
}

nlohmann::json certificate_json(const CopositivityCertificate& cert) {
  nlohmann::json j;
  if (cert.mode == CertMode::exact) {
    j["s"] = rat_to_string(cert.s_star);
    j["sqrt_s"] = format_stat(std::sqrt(to_double(cert.s_star)));
    nlohmann::json u = nlohmann::json::array();
    for (const Rat& q : cert.u_star) u.push_back(rat_to_string(q));
    j["u_star"] = u;
  } else {
    j["s_numeric"] = format_stat(cert.s_star_num);
    j["sqrt_s"] = format_stat(std::sqrt(cert.s_star_num));
  }
  j["support"] = cert.support;
  j["mode"] = cert.mode == CertMode::exact ? "exact" : "numeric";
  j["certified"] = cert.certified;
  return j;
}

// ---------------------------------------------------------------------------
// spectral
// ---------------------------------------------------------------------------

int cmd_spectral(const GlobalOpts& g, int n, int l) {
  const auto t0 = std::chrono::steady_clock::now();
  RunReport rep;
  rep.command = "spectral --n " + std::to_string(n) + " --l " + std::to_string(l);
  rep.seed = g.seed;
  nlohmann::json rows = nlohmann::json::array();
  for (int k = 0; k <= l; ++k) {
    SpectralParams p{n, k};
    rows.push_back({{"l", k},
                    {"dimension", eigen_dimension(p).get_str()},
                    {"rho", rat_to_string(rho(p))},
                    {"lambda", rat_to_string(lambda_iso(p))}});
  }
  rep.results["table"] = rows;
  rep.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return emit(rep, g, true);
}

// ---------------------------------------------------------------------------
// eval-measure
// ---------------------------------------------------------------------------

int cmd_eval_measure(const GlobalOpts& g, const std::string& path) {
  const auto t0 = std::chrono::steady_clock::now();
  RunReport rep;
  rep.command = "eval-measure " + path;
  rep.seed = g.seed;
  register_input(rep, "measure", path);
  bool ok = true;
  try {
    const VeroneseMeasure mu = load_measure(path);
    if (auto bad = validate(mu)) {
      rep.results["error"] = "validation: " + *bad;
      ok = false;
    } else {
      const CurvatureData data = curvature_data(mu);
      if (auto degenerate = immersion_check(data)) {
        rep.results["error"] = "not an immersion: coordinate " +
                               std::to_string(*degenerate + 1) +
                               " has E[rho] = 0";
        ok = false;
      } else {
        const CopositivityCertificate cert = critical_s(data);
        rep.results["certificate"] = certificate_json(cert);
        rep.results["ambient_dimension"] = ambient_dimension(mu).get_str();
        rep.results["isotropic"] = is_isotropic(data, cert.s_star);
        nlohmann::json gj = nlohmann::json::array();
        for (const Rat& q : data.G) gj.push_back(rat_to_string(q));
        rep.results["G"] = gj;
        nlohmann::json aj = nlohmann::json::array();
        for (const auto& row : data.A) {
          nlohmann::json r = nlohmann::json::array();
          for (const Rat& q : row) r.push_back(rat_to_string(q));
          aj.push_back(r);
        }
        rep.results["A"] = aj;
      }
    }
  } catch (const std::exception& e) {
    rep.results["error"] = e.what();
    ok = false;
  }
  rep.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return emit(rep, g, ok);
}

// ---------------------------------------------------------------------------
// min-s with a best-known results cache
// ---------------------------------------------------------------------------

std::string instance_key(const std::vector<int>& factors) {
  std::string key = "factors";
  for (int f : factors) key += "_" + std::to_string(f);
  return key;
}

int cmd_min_s(const GlobalOpts& g, const std::string& factors_csv,
              SearchConfig cfg, const std::string& warm_path,
              const std::string& cache_dir) {
  const auto t0 = std::chrono::steady_clock::now();
  RunReport rep;
  rep.command = "min-s --factors " + factors_csv;
  rep.seed = cfg.seed;
  ProblemInstance inst{parse_factors(factors_csv)};

  std::optional<VeroneseMeasure> warm;
  if (!warm_path.empty()) {
    register_input(rep, "warm_start", warm_path);
    warm = load_measure(warm_path);
  }
  const std::string cache_file =
      cache_dir.empty() ? ""
                        : (fs::path(cache_dir) / (instance_key(inst.factors) + ".json"))
                              .string();
  if (!cache_file.empty() && fs::exists(cache_file)) {
    const VeroneseMeasure cached = load_measure(cache_file);
    if (!warm) warm = cached;  // explicit warm start wins
    rep.results["cache_hit"] = true;
  }

  bool ok = true;
  try {
    const SearchOutcome out =
        minimize_s(inst, cfg, warm ? &*warm : nullptr);
    rep.results["best_measure"] = measure_to_json(out.best);
    rep.results["certificate"] = certificate_json(out.certificate);
    rep.results["complete"] = out.complete;
    rep.results["evaluations"] = out.evaluations;
    if (!cache_file.empty()) {
      bool improve = true;
      if (fs::exists(cache_file)) {
        const VeroneseMeasure cached = load_measure(cache_file);
        improve = critical_s(curvature_data(cached)).s_star >
                  out.certificate.s_star;
      }
      if (improve) {
        fs::create_directories(cache_dir);
        save_measure(out.best, cache_file);
        // index of best-known values per instance
        const fs::path index_path = fs::path(cache_dir) / "index.json";
        nlohmann::json index = nlohmann::json::object();
        if (fs::exists(index_path)) {
          std::ifstream in(index_path);
          in >> index;
        }
        index[instance_key(inst.factors)] = {
            {"file", instance_key(inst.factors) + ".json"},
            {"s", rat_to_string(out.certificate.s_star)}};
        std::ofstream outf(index_path);
        outf << index.dump(2) << "\n";
      }
    }
  } catch (const std::exception& e) {
    rep.results["error"] = e.what();
    ok = false;
  }
  rep.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return emit(rep, g, ok);
}

// ---------------------------------------------------------------------------
// map builders shared by sample / certify
// ---------------------------------------------------------------------------

struct MapSpec {
  std::string kind = "sns1";  // sns1 | veronese | tensor
  std::string measure_path;
  int n = 2;
  int l = 1;
  double r1 = std::sqrt(2.0 / 3.0);
  double r2 = std::sqrt(1.0 / 3.0);
};

ExplicitImmersion build_map(const MapSpec& spec, RunReport& rep,
                            std::optional<VeroneseMeasure>& measure_out) {
  if (spec.kind == "sns1") return build_sns1(spec.n, spec.r1, spec.r2);
  if (spec.kind == "veronese") return build_veronese(spec.n, spec.l);
  if (spec.kind == "tensor") {
    if (spec.measure_path.empty())
      throw std::invalid_argument("--map tensor requires --measure <file>");
    register_input(rep, "measure", spec.measure_path);
    measure_out = load_measure(spec.measure_path);
    return build_tensor(*measure_out);
  }
  throw std::invalid_argument("unknown map kind: " + spec.kind);
}

int cmd_sample(const GlobalOpts& g, const MapSpec& spec, int samples) {
  const auto t0 = std::chrono::steady_clock::now();
  RunReport rep;
  rep.command = "sample --map " + spec.kind;
  rep.seed = g.seed;
  bool ok = true;
  try {
    std::optional<VeroneseMeasure> mu;
    const ExplicitImmersion f = build_map(spec, rep, mu);
    const CurvatureStats st = estimate_normal_curvature(f, samples, g.seed);
    rep.results["samples"] = st.count;
    rep.results["max"] = format_stat(st.max);
    rep.results["min"] = format_stat(st.min);
    rep.results["mean"] = format_stat(st.mean);
    rep.results["stddev"] = format_stat(st.stddev);
    if (mu) {
      const CopositivityCertificate cert = critical_s(curvature_data(*mu));
      rep.results["exact_sqrt_s"] = format_stat(std::sqrt(to_double(cert.s_star)));
      rep.results["max_vs_exact"] =
          format_stat(st.max - std::sqrt(to_double(cert.s_star)));
    }
  } catch (const std::exception& e) {
    rep.results["error"] = e.what();
    ok = false;
  }
  rep.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return emit(rep, g, ok);
}

// ---------------------------------------------------------------------------
// certify
// ---------------------------------------------------------------------------

std::vector<std::pair<double, double>> pic_grid() {
  std::vector<std::pair<double, double>> grid;
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j)
      grid.emplace_back(-1.0 + 0.25 * i, -1.0 + 0.25 * j);
  return grid;  // the 9x9 grid already contains the corners and (0,0)
}

int cmd_certify(const GlobalOpts& g, const MapSpec& spec,
                const std::string& condition, double c_in, int samples,
                int frames_per_point) {
  const auto t0 = std::chrono::steady_clock::now();
  RunReport rep;
  rep.command = "certify --map " + spec.kind + " --condition " + condition;
  rep.seed = g.seed;
  bool ok = true;
  try {
    std::optional<VeroneseMeasure> mu;
    const ExplicitImmersion f = build_map(spec, rep, mu);
    const int n = f.intrinsic_dim();

    // default c: the proof constants for sec/pic2, the measured normal
    // curvature bound for the pointwise lemmas
    double c = c_in;
    if (std::isnan(c)) {
      if (condition == "sec")
        c = 3.0;
      else if (condition == "pic2")
        c = 4.0;
      else if (condition == "biricci" || condition == "ric-eigen")
        c = 0.0;
      else
        c = estimate_normal_curvature(f, 2000, g.seed ^ 0xabcd).max;
    }
    rep.results["c"] = format_stat(c);

    double min_margin = std::numeric_limits<double>::infinity();
    nlohmann::json argmin;
    std::map<std::pair<double, double>, double> grid_min;

    for (int k = 0; k < samples; ++k) {
      std::mt19937_64 rng = substream(g.seed, k);
      const Point p = random_point(f.domain, rng);
      for (int fr = 0; fr < frames_per_point; ++fr) {
        std::vector<Tangent> frame = canonical_frame(f, p);
        if (fr > 0) frame = rotate_frame(frame, random_rotation(n, rng));
        const FramePoint fp = make_frame_point(f, p, frame);
        auto note = [&](double margin, const std::string& what) {
          if (margin < min_margin) {
            min_margin = margin;
            argmin = {{"sample", k}, {"frame", fr}, {"detail", what}};
          }
        };
        if (condition == "angle") {
          note(angle_bound(fp, c).margin, "angle");
          continue;
        }
        const SffSample s = sff_sample(f, fp);
        if (condition == "sec") {
          for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
              note(conformal_sec(s, i, j, c),
                   "pair " + std::to_string(i) + "," + std::to_string(j));
        } else if (condition == "offdiag") {
          for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
              note(offdiag_bound(s, i, j, c),
                   "pair " + std::to_string(i) + "," + std::to_string(j));
        } else if (condition == "pic2") {
          if (n < 4) throw std::invalid_argument("pic2 needs dimension >= 4");
          for (const auto& [lam, mu_p] : pic_grid()) {
            const double q = pic2_quantity(s, {0, 1, 2, 3}, {lam, mu_p}, c);
            auto it = grid_min.find({lam, mu_p});
            if (it == grid_min.end() || q < it->second)
              grid_min[{lam, mu_p}] = q;
            note(q, "lam " + format_stat(lam) + " mu " + format_stat(mu_p));
          }
        } else if (condition == "biricci" || condition == "ric-eigen") {
          const ExperimentalReport er = experimental_conditions(
              s,
              condition == "biricci" ? ExperimentalCondition::biricci
                                     : ExperimentalCondition::ric_eigen,
              c);
          note(er.min_value, condition);
        } else {
          throw std::invalid_argument("unknown condition: " + condition);
        }
      }
    }
    rep.results["min_margin"] = format_stat(min_margin);
    rep.results["argmin"] = argmin;
    if (!grid_min.empty()) {
      nlohmann::json gj = nlohmann::json::array();
      for (const auto& [lm, v] : grid_min)
        gj.push_back({{"lam", format_stat(lm.first)},
                      {"mu", format_stat(lm.second)},
                      {"min", format_stat(v)}});
      rep.results["grid_minima"] = gj;
    }
  } catch (const std::exception& e) {
    rep.results["error"] = e.what();
    ok = false;
  }
  rep.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return emit(rep, g, ok);
}

// ---------------------------------------------------------------------------
// check-design
// ---------------------------------------------------------------------------

int cmd_check_design(const GlobalOpts& g, const std::string& path) {
  const auto t0 = std::chrono::steady_clock::now();
  RunReport rep;
  rep.command = "check-design " + path;
  rep.seed = g.seed;
  register_input(rep, "design", path);
  bool ok = true;
  try {
    const DesignInput d = load_design(path);
    const MomentReport mr = check_design_moments(d);
    rep.results["exact_pass"] = mr.exact_pass;
    rep.results["max_abs_residual"] = format_stat(mr.max_abs_residual);
    rep.results["numeric_pass"] = mr.numeric_pass();
    rep.results["violations"] = mr.violations();
    ok = mr.exact_pass || mr.numeric_pass();
  } catch (const std::exception& e) {
    rep.results["error"] = e.what();
    ok = false;
  }
  rep.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return emit(rep, g, ok);
}

// ---------------------------------------------------------------------------
// verify-paper
// ---------------------------------------------------------------------------

struct Battery {
  nlohmann::json checks = nlohmann::json::array();
  bool all_ok = true;

  void record(const std::string& name, bool pass, const std::string& detail = "") {
    nlohmann::json c = {{"name", name}, {"pass", pass}};
    if (!detail.empty()) c["detail"] = detail;
    checks.push_back(c);
    all_ok = all_ok && pass;
  }
};

bool critical_matches(const CurvatureData& data, const Rat& expect,
                      bool numeric_only) {
  if (numeric_only) {
    const CopositivityCertificate cert =
        critical_s_numeric(to_eigen(data.A), to_eigen(data.G));
    return std::abs(cert.s_star_num - to_double(expect)) <= 1e-9;
  }
  return critical_s(data).s_star == expect;
}

bool isotropic_matches(const CurvatureData& data, const Rat& s,
                       bool numeric_only) {
  if (!numeric_only) return is_isotropic(data, s);
  double worst = 0;
  for (const auto& row : b_of_s(data, s))
    for (const Rat& q : row) worst = std::max(worst, std::abs(to_double(q)));
  return worst <= 1e-9;
}

int cmd_verify_paper(const GlobalOpts& g, const std::string& fixtures,
                     bool numeric_only) {
  const auto t0 = std::chrono::steady_clock::now();
  RunReport rep;
  rep.command = "verify-paper";
  rep.seed = g.seed;
  Battery bat;

  // spectral closed forms
  {
    bool ok = true;
    for (int n = 1; n <= 10 && ok; ++n) {
      ok = ok && rho({n, 1}) == 1 && lambda_iso({n, 1}) == 1;
      ok = ok && rho({n, 2}) == make_rat(2 * (n + 1), n);
      ok = ok && lambda_iso({n, 2}) == make_rat(8 * (n + 1), n);
    }
    for (int l = 0; l <= 20 && ok; ++l)
      ok = ok && rho({1, l}) == Int(l) * Int(l) &&
           lambda_iso({1, l}) == Int(l) * Int(l) * Int(l) * Int(l);
    bat.record("spectral identities (n <= 10, l <= 20)", ok);
  }

  // product of two spheres
  for (int n2 = 1; n2 <= 5; ++n2) {
    const int n1 = n2;
    VeroneseMeasure mu{{{n1, n2}},
                       {{{1, 1}, make_rat(n2 + 1, 2 * n2 + 1)},
                        {{0, 2}, make_rat(n2, 2 * n2 + 1)}}};
    const CurvatureData data = curvature_data(mu);
    const Rat expect = make_rat(2 * n2 + 1, n2 + 1);
    bool ok = !validate(mu) && critical_matches(data, expect, numeric_only) &&
              isotropic_matches(data, expect, numeric_only);
    ok = ok && ambient_dimension(mu) ==
                   Int((n1 + 1) * (n2 + 1) + n2 * (n2 + 3) / 2);
    bat.record("two-sphere measure n2 = " + std::to_string(n2) +
                   ": s = " + rat_to_string(expect) + ", B(s) = 0, N matches",
               ok);
  }

  // product of three spheres
  for (int n3 = 1; n3 <= 5; ++n3) {
    const int n1 = n3, n2 = n3;
    VeroneseMeasure mu{{{n1, n2, n3}},
                       {{{1, 1, 0}, make_rat(n3 + 1, 6 * n3 + 5)},
                        {{0, 1, 1}, make_rat(2 * (n3 + 1), 6 * n3 + 5)},
                        {{1, 0, 1}, make_rat(2 * (n3 + 1), 6 * n3 + 5)},
                        {{0, 0, 2}, make_rat(n3, 6 * n3 + 5)}}};
    const CurvatureData data = curvature_data(mu);
    const Rat expect = make_rat(6 * n3 + 5, 3 * n3 + 3);
    const Int n_expect((n1 + 1) * (n2 + 1) + (n1 + 1) * (n3 + 1) +
                       (n2 + 1) * (n3 + 1) + n3 * (n3 + 3) / 2);
    bool ok = !validate(mu) && critical_matches(data, expect, numeric_only) &&
              isotropic_matches(data, expect, numeric_only) &&
              ambient_dimension(mu) == n_expect;
    bat.record("three-sphere measure n3 = " + std::to_string(n3) +
                   ": s = " + rat_to_string(expect) + ", B(s) = 0, N matches",
               ok);
  }

  // S^n x T^2
  for (int n = 1; n <= 5; ++n) {
    VeroneseMeasure mu{{{n, 1, 1}},
                       {{{1, 5, 5}, Rat(5, 9)},
                        {{0, 2, 11}, Rat(200, 7371)},
                        {{0, 5, 10}, Rat(719, 3024)},
                        {{0, 11, 2}, Rat(3025, 16848)}}};
    Rat total(0);
    for (const Atom& a : mu.atoms) total += a.weight;
    bool ok = total == 1 && !validate(mu);
    const CurvatureData data = curvature_data(mu);
    ok = ok && critical_matches(data, Rat(9, 5), numeric_only) &&
         isotropic_matches(data, Rat(9, 5), numeric_only) &&
         ambient_dimension(mu) == 4 * n + 16;
    bat.record("S^n x T^2 measure n = " + std::to_string(n) +
                   ": weights sum to 1, s = 9/5, N = 4n+16",
               ok);
  }

  // torus via the weighted 4th-moment design
  {
    DesignInput d;
    d.radius2 = 25;
    d.points = {{Rat(5), Rat(0)}, {Rat(0), Rat(5)}, {Rat(3), Rat(4)}, {Rat(4), Rat(3)}};
    d.weights = {Rat(527, 2304), Rat(527, 2304), Rat(625, 2304), Rat(625, 2304)};
    const MomentReport mr = check_design_moments(d);
    const VeroneseMeasure mu = design_to_measure(d, ProblemInstance{{1, 1}});
    const CurvatureData data = curvature_data(mu);
    bool ok = mr.exact_pass &&
              critical_matches(data, Rat(3, 2), numeric_only) &&
              isotropic_matches(data, Rat(3, 2), numeric_only);
    bat.record("torus design: exact 4th moments and s = 3/2 = 3n/(n+2)", ok);
  }

  // traced Gauss identity on every battery measure
  {
    std::vector<VeroneseMeasure> all;
    all.push_back({{{2, 1}}, {{{1, 1}, Rat(2, 3)}, {{0, 2}, Rat(1, 3)}}});
    all.push_back({{{2, 2}}, {{{1, 1}, Rat(3, 5)}, {{0, 2}, Rat(2, 5)}}});
    all.push_back({{{1, 1, 1}},
                   {{{1, 1, 0}, make_rat(2, 11)},
                    {{0, 1, 1}, make_rat(4, 11)},
                    {{1, 0, 1}, make_rat(4, 11)},
                    {{0, 0, 2}, make_rat(1, 11)}}});
    all.push_back({{{3, 1, 1}},
                   {{{1, 5, 5}, Rat(5, 9)},
                    {{0, 2, 11}, Rat(200, 7371)},
                    {{0, 5, 10}, Rat(719, 3024)},
                    {{0, 11, 2}, Rat(3025, 16848)}}});
    bool ok = true;
    for (const auto& mu : all) ok = ok && is_zero(petrunin_scalar_check(mu).residual);
    bat.record("traced Gauss identity holds exactly for all battery measures", ok);
  }

  // bundled fixture files
  const std::vector<std::pair<std::string, Rat>> bundled = {
      {"sns1_s2s1.json", Rat(3, 2)},
      {"prop32_s2s2.json", Rat(5, 3)},
      {"prop33_s3s2s1.json", Rat(11, 6)},
      {"prop34_s2t2.json", Rat(9, 5)},
      {"circle_delta1.json", Rat(1)}};
  for (const auto& [name, expect] : bundled) {
    const std::string path = (fs::path(fixtures) / name).string();
    bool ok = true;
    std::string detail;
    try {
      register_input(rep, name, path);
      const VeroneseMeasure mu = load_measure(path);
      if (auto bad = validate(mu)) {
        ok = false;
        detail = *bad;
      } else if (!critical_matches(curvature_data(mu), expect, numeric_only)) {
        ok = false;
        detail = "s does not equal " + rat_to_string(expect);
      }
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    bat.record("bundled measure " + name + ": s = " + rat_to_string(expect), ok,
               detail);
  }
  {
    const std::string path = (fs::path(fixtures) / "pythagorean_design.json").string();
    bool ok = true;
    std::string detail;
    try {
      register_input(rep, "pythagorean_design.json", path);
      ok = check_design_moments(load_design(path)).exact_pass;
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    bat.record("bundled design pythagorean_design.json: exact moments", ok, detail);
  }
  {
    const std::string path = (fs::path(fixtures) / "pentagon_design.json").string();
    bool ok = true;
    std::string detail;
    try {
      register_input(rep, "pentagon_design.json", path);
      ok = check_design_moments(load_design(path)).numeric_pass(1e-12);
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    bat.record("bundled design pentagon_design.json: moments within 1e-12", ok,
               detail);
  }

  rep.results["mode"] = numeric_only ? "numeric" : "exact";
  rep.results["checks"] = bat.checks;
  rep.results["all_pass"] = bat.all_ok;
  rep.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return emit(rep, g, bat.all_ok);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tensor Veronese immersions with minimal normal curvature"};
  app.require_subcommand(1);

  app.fallthrough();

  GlobalOpts g;
  app.add_option("--seed", g.seed, "RNG seed carried into every report");
  app.add_option("--out", g.out, "write the structured report to this file");
  app.add_option("--format", g.format, "text|structured")
      ->check(CLI::IsMember({"text", "structured"}));

  auto* spectral_cmd = app.add_subcommand("spectral", "eigenspace dimension, rho, lambda");
  int sp_n = 2, sp_l = 2;
  spectral_cmd->add_option("--n", sp_n, "sphere dimension")->required();
  spectral_cmd->add_option("--l", sp_l, "largest eigenvalue index");

  auto* eval_cmd = app.add_subcommand("eval-measure", "certificate for a measure file");
  std::string eval_path;
  eval_cmd->add_option("file", eval_path, "measure file")->required();

  auto* min_cmd = app.add_subcommand("min-s", "search for a curvature-minimizing measure");
  std::string factors_csv, warm_path, cache_dir;
  SearchConfig cfg;
  min_cmd->add_option("--factors", factors_csv, "sphere dimensions, e.g. 2,1")->required();
  min_cmd->add_option("--lmax", cfg.l_max, "grid bound per coordinate");
  min_cmd->add_option("--max-support", cfg.max_support, "atom-count bound");
  min_cmd->add_option("--restarts", cfg.restarts, "random restarts");
  min_cmd->add_option("--moves", cfg.moves_per_restart, "local moves per restart");
  min_cmd->add_option("--budget-secs", cfg.budget_secs, "time budget (0 = none)");
  min_cmd->add_option("--warm-start", warm_path, "measure file to start from");
  min_cmd->add_option("--cache", cache_dir, "best-known results cache directory");

  auto* sample_cmd = app.add_subcommand("sample", "sample |A(u,u)| of an explicit map");
  MapSpec sample_spec;
  int sample_count = 10000;
  sample_cmd->add_option("--map", sample_spec.kind, "sns1|veronese|tensor");
  sample_cmd->add_option("--measure", sample_spec.measure_path, "measure file for tensor maps");
  sample_cmd->add_option("--n", sample_spec.n, "sphere dimension");
  sample_cmd->add_option("--l", sample_spec.l, "Veronese degree (veronese map)");
  sample_cmd->add_option("--r1", sample_spec.r1, "first radius (sns1 map)");
  sample_cmd->add_option("--r2", sample_spec.r2, "second radius (sns1 map)");
  sample_cmd->add_option("--samples", sample_count, "sample count");

  auto* certify_cmd = app.add_subcommand("certify", "sampled margins of the curvature conditions");
  MapSpec certify_spec;
  std::string condition = "sec";
  double certify_c = std::numeric_limits<double>::quiet_NaN();
  int certify_samples = 2000, frames_per_point = 8;
  certify_cmd->add_option("--map", certify_spec.kind, "sns1|veronese|tensor");
  certify_cmd->add_option("--measure", certify_spec.measure_path, "measure file for tensor maps");
  certify_cmd->add_option("--n", certify_spec.n, "sphere dimension");
  certify_cmd->add_option("--l", certify_spec.l, "Veronese degree");
  certify_cmd->add_option("--r1", certify_spec.r1, "first radius");
  certify_cmd->add_option("--r2", certify_spec.r2, "second radius");
  certify_cmd
      ->add_option("--condition", condition, "sec|pic2|angle|offdiag|biricci|ric-eigen")
      ->check(CLI::IsMember({"sec", "pic2", "angle", "offdiag", "biricci", "ric-eigen"}));
  certify_cmd->add_option("--c", certify_c, "conformal constant / curvature bound");
  certify_cmd->add_option("--samples", certify_samples, "sample points");
  certify_cmd->add_option("--frames-per-point", frames_per_point, "frames per point");

  auto* design_cmd = app.add_subcommand("check-design", "verify spherical 4-design moments");
  std::string design_path;
  design_cmd->add_option("file", design_path, "design file")->required();

  auto* verify_cmd = app.add_subcommand("verify-paper", "reproduce every bundled closed-form value");
  std::string fixtures = "fixtures";
  bool numeric_only = false;
  verify_cmd->add_option("--fixtures", fixtures, "fixtures directory");
  verify_cmd->add_flag("--numeric-only", numeric_only, "use the double-precision path");

  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (spectral_cmd->parsed()) return cmd_spectral(g, sp_n, sp_l);
    if (eval_cmd->parsed()) return cmd_eval_measure(g, eval_path);
    if (min_cmd->parsed()) {
      cfg.seed = g.seed;
      return cmd_min_s(g, factors_csv, cfg, warm_path, cache_dir);
    }
    if (sample_cmd->parsed()) return cmd_sample(g, sample_spec, sample_count);
    if (certify_cmd->parsed())
      return cmd_certify(g, certify_spec, condition, certify_c, certify_samples,
                         frames_per_point);
    if (design_cmd->parsed()) return cmd_check_design(g, design_path);
    if (verify_cmd->parsed()) return cmd_verify_paper(g, fixtures, numeric_only);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
