#include <sys/wait.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "safetysim/commands.hpp"
#include "safetysim/report.hpp"
#include "test_support.hpp"

using namespace safetysim;
namespace fs = std::filesystem;

namespace {

const std::string kScenario = SAFETYSIM_SCENARIO_DIR "/case_study.json";

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("safetysim_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string cell; std::getline(in, cell, ',');) out.push_back(cell);
  return out;
}

cli::CommonOptions options(const fs::path& dir) {
  cli::CommonOptions o;
  o.scenario_path = kScenario;
  o.out_dir = dir.string();
  o.threads = 2;
  return o;
}

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + 1)) {
    ++n;
  }
  return n;
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(SAFETYSIM_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("format_number uses six significant digits") {
  CHECK(report::format_number(13.448700001) == "13.4487");
  CHECK(report::format_number(0.00440021) == "0.00440021");
  CHECK(report::format_number(0.0) == "0");
  CHECK(report::format_number(1234567.0) == "1.23457e+06");
}

TEST_CASE("cmd_run writes one row per day") {
  const auto dir = fresh_dir("run");
  std::ostringstream err;
  REQUIRE(cli::cmd_run(options(dir), "none", err) == cli::kSuccess);
  const auto rows = lines(slurp(dir / "trajectory.csv"));
  REQUIRE(rows.size() == 366);
  const auto header = split(rows[0]);
  // day + 7 theta + 7 xi + 21 counts + 3*7*2 obs + 2 metrics
  CHECK(header.size() == 1 + 7 + 7 + 21 + 42 + 2);
  CHECK(header.front() == "day");
  CHECK(header[1] == "theta_A");
  CHECK(header[15] == "n_e_A");
  CHECK(header[36] == "obs_pos_WSO_A");
  CHECK(header.back() == "tail_prob");
  CHECK(split(rows[1])[0] == "1");
  CHECK(split(rows[365])[0] == "365");
  CHECK(split(rows[1])[1] == "0.1");
}

TEST_CASE("cmd_run is byte-identical for the same seed") {
  const auto a = fresh_dir("run_a");
  const auto b = fresh_dir("run_b");
  std::ostringstream err;
  auto o = options(a);
  o.seed = 9;
  REQUIRE(cli::cmd_run(o, "severity", err) == 0);
  o.out_dir = b.string();
  REQUIRE(cli::cmd_run(o, "severity", err) == 0);
  CHECK(slurp(a / "trajectory.csv") == slurp(b / "trajectory.csv"));
}

TEST_CASE("cmd_run errors") {
  const auto dir = fresh_dir("errors");

  SUBCASE("unknown policy is a usage error listing valid names") {
    std::ostringstream err;
    CHECK(cli::cmd_run(options(dir), "oracle", err) == cli::kUsageError);
    CHECK(err.str().find("uniform") != std::string::npos);
    CHECK(err.str().find("weighted") != std::string::npos);
  }

  SUBCASE("invalid config is a usage error") {
    fs::create_directories(dir);
    std::ofstream(dir / "bad.json") << R"({"areas": []})";
    auto o = options(dir);
    o.scenario_path = (dir / "bad.json").string();
    std::ostringstream err;
    CHECK(cli::cmd_run(o, "none", err) == cli::kUsageError);
    CHECK(err.str().find("at least one safety area") != std::string::npos);
  }

  SUBCASE("weights that do not match the area count") {
    std::ostringstream err;
    CHECK(cli::cmd_run(options(dir), "weighted:0.5,0.5", err) == cli::kUsageError);
  }

  SUBCASE("unwritable output is a runtime failure") {
    fs::create_directories(dir);
    std::ofstream(dir / "blocker") << "x";
    auto o = options(dir / "blocker" / "sub");
    std::ostringstream err;
    CHECK(cli::cmd_run(o, "none", err) == cli::kRuntimeFailure);
  }
}

TEST_CASE("cmd_table2") {
  SUBCASE("single replication collapses the percentiles") {
    const auto dir = fresh_dir("table2_one");
    std::ostringstream err;
    REQUIRE(cli::cmd_table2(options(dir), 1, err) == 0);
    const auto rows = lines(slurp(dir / "table2.csv"));
    REQUIRE(rows.size() == 8);
    for (std::size_t r = 1; r < rows.size(); ++r) {
      const auto cells = split(rows[r]);
      REQUIRE(cells.size() == 19);
      for (std::size_t j = 0; j < 6; ++j) {
        CHECK(cells[1 + 3 * j] == cells[2 + 3 * j]);
        CHECK(cells[1 + 3 * j] == cells[3 + 3 * j]);
      }
    }
  }

  SUBCASE("100 replications") {
    const auto dir = fresh_dir("table2");
    std::ostringstream err;
    REQUIRE(cli::cmd_table2(options(dir), 100, err) == 0);
    const auto rows = lines(slurp(dir / "table2.csv"));
    CHECK(rows[0].rfind("area,ahl0_p50,ahl0_p05,ahl0_p95", 0) == 0);
    const auto a = split(rows[1]);
    CHECK(a[0] == "A");
    const int median = std::stoi(a[1]);
    CHECK(median >= 57);
    CHECK(median <= 85);
    // Area D has no mass at AHL = 5.
    const auto d = split(rows[4]);
    CHECK(d[0] == "D");
    CHECK(d[16] == "0");
    CHECK(d[17] == "0");
    CHECK(d[18] == "0");
  }
}

TEST_CASE("cmd_compare and cmd_plot") {
  const auto dir = fresh_dir("compare");
  auto o = options(dir);
  o.horizon = 120;
  std::ostringstream err;
  const std::vector<std::string> policies = {
      "uniform", "counts", "severity",
      "weighted:0.12,0.12,0.12,0.08,0.08,0.28,0.2"};
  REQUIRE(cli::cmd_compare(o, policies, 20, err) == 0);

  for (const char* stem : {"uniform", "counts", "severity", "weighted", "none"}) {
    CAPTURE(stem);
    const auto rows = lines(slurp(dir / ("compare_" + std::string(stem) + ".csv")));
    REQUIRE(rows.size() == 121);
  }

  // The baseline band has zero width.
  const auto baseline = lines(slurp(dir / "compare_none.csv"));
  for (std::size_t r = 1; r < baseline.size(); ++r) {
    const auto cells = split(baseline[r]);
    CHECK(cells[2] == "0");
    CHECK(cells[4] == "0");
  }

  const std::string loss_svg = slurp(dir / "expected_loss.svg");
  CHECK(count_of(loss_svg, "<polyline") == 5);
  CHECK(count_of(loss_svg, "stroke-dasharray") == 1);
  CHECK(count_of(slurp(dir / "tail_probability.svg"), "<polyline") == 5);

  const auto severity = lines(slurp(dir / "severity_counts.csv"));
  REQUIRE(severity.size() == 6);
  CHECK(severity[0] == "approach,ahl0,ahl1,ahl2,ahl3,ahl4,ahl5");
  CHECK(split(severity[5])[0] == "baseline");

  // Re-rendering from the CSVs reproduces the plots exactly.
  const std::string tail_svg = slurp(dir / "tail_probability.svg");
  fs::remove(dir / "expected_loss.svg");
  fs::remove(dir / "tail_probability.svg");
  REQUIRE(cli::cmd_plot(o, policies, err) == 0);
  CHECK(slurp(dir / "expected_loss.svg") == loss_svg);
  CHECK(slurp(dir / "tail_probability.svg") == tail_svg);
}

TEST_CASE("compare output does not depend on the thread count") {
  const auto a = fresh_dir("cmp_t1");
  const auto b = fresh_dir("cmp_t4");
  auto o = options(a);
  o.horizon = 60;
  o.threads = 1;
  std::ostringstream err;
  REQUIRE(cli::cmd_compare(o, {"counts"}, 12, err) == 0);
  o.out_dir = b.string();
  o.threads = 4;
  REQUIRE(cli::cmd_compare(o, {"counts"}, 12, err) == 0);
  for (const char* f : {"compare_counts.csv", "compare_none.csv",
                        "severity_counts.csv", "expected_loss.svg"}) {
    CHECK(slurp(a / f) == slurp(b / f));
  }
}

TEST_CASE("command-line exit codes") {
  const auto dir = fresh_dir("binary");
  const std::string common = "--scenario " + kScenario + " --out-dir " + dir.string();
  CHECK(run_binary("run " + common + " --policy uniform --horizon 5") == 0);
  CHECK(run_binary("run " + common + " --policy nope") == 2);
  CHECK(run_binary("run --policy none") == 2);
  CHECK(run_binary("frobnicate") == 2);
  CHECK(run_binary("run --scenario /nonexistent.json --policy none") == 2);
  CHECK(run_binary("--help") == 0);
}
