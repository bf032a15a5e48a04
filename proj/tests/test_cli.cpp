#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>
#include <cmath>

namespace fs = std::filesystem;

namespace {

const std::string kCli = VEROCURV_CLI_PATH;
const std::string kFixtures = VEROCURV_FIXTURES_DIR;

struct RunResult {
  int exit_code;
  std::string stdout_text;
};

RunResult run(const std::string& args) {
  const fs::path out = fs::temp_directory_path() / "verocurv_cli_out.txt";
  const std::string cmd = kCli + " " + args + " > " + out.string() + " 2>/dev/null";
  const int rc = std::system(cmd.c_str());
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WEXITSTATUS(rc), ss.str()};
}

nlohmann::json run_json(const std::string& args, int expect_code = 0) {
  const RunResult r = run(args + " --format structured");
  REQUIRE(r.exit_code == expect_code);
  return nlohmann::json::parse(r.stdout_text);
}

std::string fixture(const std::string& name) {
  return (fs::path(kFixtures) / name).string();
}

}  // namespace

TEST_CASE("spectral subcommand prints the exact table") {
  const nlohmann::json j = run_json("spectral --n 2 --l 2");
  const auto& rows = j["results"]["table"];
  REQUIRE(rows.size() == 3);
  CHECK(rows[2]["dimension"] == "5");
  CHECK(rows[2]["rho"] == "3");
  CHECK(rows[2]["lambda"] == "12");
}

TEST_CASE("eval-measure on bundled fixtures") {
  const nlohmann::json j = run_json("eval-measure " + fixture("sns1_s2s1.json"));
  CHECK(j["results"]["certificate"]["s"] == "3/2");
  CHECK(j["results"]["certificate"]["mode"] == "exact");
  CHECK(j["results"]["isotropic"] == true);
  CHECK(j["results"]["ambient_dimension"] == "8");

  const nlohmann::json d1 = run_json("eval-measure " + fixture("circle_delta1.json"));
  CHECK(d1["results"]["certificate"]["s"] == "1");
}

TEST_CASE("eval-measure reports the violated invariant") {
  const fs::path bad = fs::temp_directory_path() / "bad_measure.json";
  std::ofstream(bad.string())
      << R"({"factors": [2,1], "atoms": [{"l": [1,1], "w": "1/2"}, {"l": [0,2], "w": "1/3"}]})";
  const nlohmann::json j = run_json("eval-measure " + bad.string(), 1);
  const std::string err = j["results"]["error"];
  CHECK(err.find("weights sum to 5/6") != std::string::npos);
}

TEST_CASE("eval-measure flags degenerate coordinates") {
  const fs::path bad = fs::temp_directory_path() / "degenerate_measure.json";
  std::ofstream(bad.string())
      << R"({"factors": [2,1], "atoms": [{"l": [1,0], "w": "1/2"}, {"l": [2,0], "w": "1/2"}]})";
  const nlohmann::json j = run_json("eval-measure " + bad.string(), 1);
  const std::string err = j["results"]["error"];
  CHECK(err.find("coordinate 2") != std::string::npos);
}

TEST_CASE("verify-paper passes in both modes") {
  CHECK(run("verify-paper --fixtures " + kFixtures).exit_code == 0);
  CHECK(run("verify-paper --numeric-only --fixtures " + kFixtures).exit_code == 0);
}

TEST_CASE("verify-paper fails on a corrupted bundled measure") {
  const fs::path dir = fs::temp_directory_path() / "verocurv_corrupt_fixtures";
  fs::remove_all(dir);
  fs::copy(kFixtures, dir);
  {
    std::ofstream f((dir / "prop34_s2t2.json").string());
    f << R"({"factors": [2,1,1], "atoms": [{"l": [1,5,5], "w": "5/9"},
             {"l": [0,2,11], "w": "200/7371"}, {"l": [0,5,10], "w": "719/3024"},
             {"l": [0,11,2], "w": "3025/16849"}]})";
  }
  const nlohmann::json j = run_json("verify-paper --fixtures " + dir.string(), 1);
  CHECK(j["results"]["all_pass"] == false);
  bool found = false;
  for (const auto& c : j["results"]["checks"])
    if (c["name"].get<std::string>().find("prop34") != std::string::npos &&
        c["pass"] == false)
      found = true;
  CHECK(found);
}

TEST_CASE("check-design verdicts") {
  CHECK(run("check-design " + fixture("pythagorean_design.json")).exit_code == 0);
  CHECK(run("check-design " + fixture("pentagon_design.json")).exit_code == 0);

  const fs::path square = fs::temp_directory_path() / "square_design.json";
  std::ofstream(square.string())
      << R"({"radius2": 1, "points": [[1,0],[-1,0],[0,1],[0,-1]],
             "weights": ["1/4","1/4","1/4","1/4"]})";
  const nlohmann::json j = run_json("check-design " + square.string(), 1);
  CHECK(j["results"]["exact_pass"] == false);
  CHECK(j["results"]["violations"].size() > 0);
}

TEST_CASE("reports are byte-identical for identical inputs and seeds") {
  const fs::path a = fs::temp_directory_path() / "rep_a.json";
  const fs::path b = fs::temp_directory_path() / "rep_b.json";
  const std::vector<std::string> subs = {
      "eval-measure " + fixture("prop32_s2s2.json"),
      "sample --map sns1 --n 2 --samples 200 --seed 99",
      "certify --map veronese --n 4 --l 1 --condition pic2 --samples 5 "
      "--frames-per-point 2 --seed 7"};
  for (const std::string& sub : subs) {
    REQUIRE(run(sub + " --out " + a.string()).exit_code == 0);
    REQUIRE(run(sub + " --out " + b.string()).exit_code == 0);
    std::ifstream fa(a.string()), fb(b.string());
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    CAPTURE(sub);
    CHECK(sa.str() == sb.str());
    CHECK(sa.str().size() > 0);
  }
}

TEST_CASE("sample compares against the exact value for tensor maps") {
  const nlohmann::json j = run_json(
      "sample --map tensor --measure " + fixture("prop32_s2s2.json") +
      " --samples 300 --seed 5");
  const double max = std::stod(j["results"]["max"].get<std::string>());
  const double exact = std::stod(j["results"]["exact_sqrt_s"].get<std::string>());
  CHECK(std::abs(max - std::sqrt(5.0 / 3.0)) < 1e-3);
  CHECK(std::abs(exact - std::sqrt(5.0 / 3.0)) < 1e-10);
}

TEST_CASE("min-s subcommand reaches the two-sphere optimum and caches it") {
  const fs::path cache = fs::temp_directory_path() / "verocurv_cache";
  fs::remove_all(cache);
  const nlohmann::json j = run_json(
      "min-s --factors 2,1 --lmax 2 --restarts 10 --moves 30 --cache " +
      cache.string());
  CHECK(j["results"]["certificate"]["s"] == "3/2");
  CHECK(fs::exists(cache / "factors_2_1.json"));
  CHECK(fs::exists(cache / "index.json"));

  // second run warm-starts from the cache and keeps the result
  const nlohmann::json j2 = run_json(
      "min-s --factors 2,1 --lmax 2 --restarts 1 --moves 2 --cache " +
      cache.string());
  CHECK(j2["results"]["cache_hit"] == true);
  CHECK(j2["results"]["certificate"]["s"] == "3/2");
}

TEST_CASE("certify ric-eigen runs on a four-dimensional product") {
  const fs::path mu = fs::temp_directory_path() / "s2t2_small.json";
  std::ofstream(mu.string())
      << R"({"factors": [2,1,1], "atoms": [{"l": [1,1,0], "w": "2/11"},
             {"l": [0,1,1], "w": "4/11"}, {"l": [1,0,1], "w": "4/11"},
             {"l": [0,0,2], "w": "1/11"}]})";
  const nlohmann::json j = run_json("certify --map tensor --measure " +
                                    mu.string() +
                                    " --condition ric-eigen --c 3 --samples 5 "
                                    "--frames-per-point 2 --seed 3");
  CHECK(j["results"].contains("min_margin"));
}
