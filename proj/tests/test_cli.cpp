#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "iwasawa/acs.hpp"
#include "iwasawa/forms.hpp"
#include "iwasawa/serialization.hpp"
#include "iwasawa/verify.hpp"

namespace {

namespace fs = std::filesystem;

fs::path work_dir() {
  fs::path d = fs::temp_directory_path() / "iwasawa_cli_tests";
  fs::create_directories(d);
  return d;
}

int run(const std::string& args, const fs::path& stdout_path) {
  std::string cmd = std::string(IWASAWA_CLI_PATH) + " " + args + " > " + stdout_path.string() +
                    " 2> " + (stdout_path.string() + ".err");
  int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

fs::path plus_zero_input() {
  fs::path p = work_dir() / "j0.json";
  spit(p, R"({"plus": {"a": 0.0, "b": 0.0, "c": 0.0, "d": 0.0, "x": 0.0, "y": 0.0}})");
  return p;
}

fs::path minus_zero_input() {
  fs::path p = work_dir() / "j1.json";
  spit(p, R"({"minus": {"a": 0.0, "b": 0.0, "c": 0.0, "x": 0.0, "y": 0.0, "v": 0.0}})");
  return p;
}

fs::path minus_sample_input() {
  fs::path p = work_dir() / "minus_sample.json";
  spit(p, R"({"minus": {"a": 0.2, "b": [0.1, -0.1], "c": [0.1, -0.1], "x": 0.05, "y": 0.0, "v": [0.0, 0.3]}})");
  return p;
}

fs::path swap_input() {
  iwasawa::Mat36c rows = iwasawa::Mat36c::Zero();
  rows(0, 0) = 1.0, rows(0, 4) = iwasawa::Complex(0, 1);
  rows(1, 1) = 1.0, rows(1, 2) = iwasawa::Complex(0, 1);
  rows(2, 3) = 1.0, rows(2, 5) = iwasawa::Complex(0, 1);
  iwasawa::Json j = iwasawa::json_of(iwasawa::acs_from_covectors(rows));
  fs::path p = work_dir() / "swap.json";
  spit(p, j.dump());
  return p;
}

}  // namespace

TEST_CASE("suite registry is complete and ordered") {
  const std::vector<std::string> expected = {
      "structure-equations",       "leibniz-rule",
      "p10-round-trip",            "integrability-agreement",
      "orientation-behavior",      "echelon-round-trip",
      "plus-chart-coverage",       "spectrum-invariants",
      "coincident-roots",          "wedge-eigenvalue-identities",
      "component-eigenvalue-consistency", "orbit-dimension-rank",
      "consimilarity",             "star-shaped-scaling",
      "self-dual-split",           "hemisphere-chart",
      "orthogonal-recovery",       "polar-retraction",
      "fiber-over-q1",             "su2-minus-action",
      "minus-contraction",         "dolbeault-counts",
      "negative-controls",         "serialization-round-trip",
  };
  const auto& suites = iwasawa::verification_suites();
  REQUIRE(suites.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) CHECK(suites[i].name == expected[i]);
}

TEST_CASE("classify reports the base point") {
  fs::path out = work_dir() / "classify_j0.json";
  REQUIRE(run("classify --in " + plus_zero_input().string(), out) == 0);
  iwasawa::Json r = iwasawa::Json::parse(slurp(out));
  CHECK(r["integrable"] == true);
  CHECK(r["component"] == "C+");
  CHECK(r["h1"] == 6);
  CHECK(r["in_C0_finite"] == true);
  CHECK(r["in_C1_finite"] == false);
  CHECK(r["orbit_dimension"] == 0);
}

TEST_CASE("classify reports the second anchor") {
  fs::path out = work_dir() / "classify_j1.json";
  REQUIRE(run("classify --in " + minus_zero_input().string(), out) == 0);
  iwasawa::Json r = iwasawa::Json::parse(slurp(out));
  CHECK(r["integrable"] == true);
  CHECK(r["component"] == "C-");
  CHECK(r["in_C0_finite"] == false);
  CHECK(r["spectrum"].is_null());
  CHECK(r["minus"].is_object());
}

TEST_CASE("classify omits the classification for non-integrable input") {
  fs::path out = work_dir() / "classify_swap.json";
  REQUIRE(run("classify --in " + swap_input().string(), out) == 0);
  iwasawa::Json r = iwasawa::Json::parse(slurp(out));
  CHECK(r["integrable"] == false);
  CHECK(!r.contains("component"));
  CHECK(r["obstruction"].get<double>() > 1e-3);
}

TEST_CASE("classify output matches the golden file") {
  fs::path golden = fs::path(IWASAWA_GOLDEN_DIR) / "classify_j0.json";
  REQUIRE(fs::exists(golden));
  fs::path out = work_dir() / "classify_golden_check.json";
  REQUIRE(run("classify --in " + plus_zero_input().string(), out) == 0);
  CHECK(slurp(out) == slurp(golden));
}

TEST_CASE("usage errors exit with code two") {
  fs::path out = work_dir() / "usage.txt";
  CHECK(run("", out) == 2);
  CHECK(run("frobnicate", out) == 2);
  CHECK(run("classify", out) == 2);
  CHECK(run("classify --in " + (work_dir() / "missing.json").string(), out) == 2);
  CHECK(run("verify --only no-such-suite --samples 10", out) == 2);
  CHECK(run("verify --samples 0", out) == 2);
  CHECK(run("region-map --format png", out) == 2);
}

TEST_CASE("verify runs a single suite and writes a clean report") {
  fs::path out = work_dir() / "verify.txt";
  fs::path report = work_dir() / "verify_report.json";
  REQUIRE(run("verify --only serialization-round-trip --samples 50 --out " + report.string(),
              out) == 0);
  CHECK(slurp(out).find("PASS") != std::string::npos);
  iwasawa::Json r = iwasawa::Json::parse(slurp(report));
  CHECK(r["all_pass"] == true);
  REQUIRE(r["suites"].size() == 1);
  CHECK(r["suites"][0]["name"] == "serialization-round-trip");
  CHECK(!r["suites"][0].contains("seconds"));
}

TEST_CASE("region map is deterministic and well formed") {
  fs::path a = work_dir() / "map_a.csv";
  fs::path b = work_dir() / "map_b.csv";
  fs::path out = work_dir() / "map.txt";
  REQUIRE(run("region-map --samples 25 --seed 7 --out " + a.string(), out) == 0);
  REQUIRE(run("region-map --samples 25 --seed 7 --out " + b.string(), out) == 0);
  std::string csv = slurp(a);
  CHECK(csv == slurp(b));
  CHECK(csv.rfind("lambda_re,lambda_im,mu_re,mu_im,region,component\n", 0) == 0);
  int lines = 0;
  for (char ch : csv)
    if (ch == '\n') ++lines;
  CHECK(lines >= 40);

  fs::path svg = work_dir() / "map.svg";
  REQUIRE(run("region-map --samples 25 --seed 7 --format svg --out " + svg.string(), out) == 0);
  CHECK(slurp(svg).rfind("<svg", 0) == 0);
}

TEST_CASE("retract trace tabulates the homotopy") {
  fs::path out = work_dir() / "trace.csv";
  fs::path log = work_dir() / "trace.txt";
  REQUIRE(run("retract-trace --in " + minus_sample_input().string() + " --steps 20 --out " +
                  out.string(),
              log) == 0);
  std::string csv = slurp(out);
  int lines = 0;
  for (char ch : csv)
    if (ch == '\n') ++lines;
  CHECK(lines == 22);  // header plus 21 rows
  CHECK(csv.rfind("t,h00,h01,h02,h03,h10", 0) == 0);

  // The base point restriction preserves orientation, so the trace is
  // rejected as out of scope rather than silently wrong.
  CHECK(run("retract-trace --in " + plus_zero_input().string(), log) == 1);
}

TEST_CASE("dolbeault subcommand reports counts and rationality") {
  fs::path out = work_dir() / "dolbeault_j0.json";
  REQUIRE(run("dolbeault --in " + plus_zero_input().string(), out) == 0);
  iwasawa::Json r = iwasawa::Json::parse(slurp(out));
  CHECK(r["h1"] == 6);
  CHECK(r["ker1"] == 6);
  CHECK(r["rational_coefficients"] == true);
  CHECK(r["composite_norms"]["m1_m0"].get<double>() <= 1e-10);

  fs::path out2 = work_dir() / "dolbeault_minus.json";
  REQUIRE(run("dolbeault --in " + minus_sample_input().string(), out2) == 0);
  iwasawa::Json r2 = iwasawa::Json::parse(slurp(out2));
  CHECK(r2["ker1"] == 6);
}
