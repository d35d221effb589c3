#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qwave/errors.hpp"
#include "qwave/harness.hpp"

using namespace qwave;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("qwave_harness_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> rows(const fs::path& p) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(slurp(p));
  std::string line;
  std::getline(in, line);  // hash
  std::getline(in, line);  // columns
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    out.push_back(cells);
  }
  return out;
}

}  // namespace

TEST(Harness, ZeroPotential) {
  auto c = parse_config(R"({"potential": {"family": "zero", "alpha": [1, 2]}, "grid": {"S": 4, "nx": 40, "ny": 4}})");
  auto dir = scratch("zero");
  auto art = run_experiment(c, RunMode::Verify, dir);
  for (const auto& r : rows(dir / "spectral.csv")) EXPECT_EQ(r[4], "0");
  for (const auto& r : rows(dir / "bounds_summary.csv")) EXPECT_EQ(r[2], "1");
  EXPECT_TRUE(art.dominance_ok());
  const std::string head = slurp(dir / "spectral.csv").substr(0, 40);
  EXPECT_NE(head.find("config_hash=" + config_hash(c)), std::string::npos);
}

TEST(Harness, AlphaSweepIsMonotoneAndDeterministic) {
  auto c = parse_config(R"({
    "potential": {"family": "gaussian", "params": {"sigma": 0.8}, "alpha": [1, 4, 16]},
    "grid": {"S": 6, "nx": 120, "ny": 8, "refinements": 2},
    "constants": "calibrate", "truncation_check": true
  })");
  auto a = scratch("sweep_a"), b = scratch("sweep_b");
  auto art = run_experiment(c, RunMode::Verify, a);
  run_experiment(c, RunMode::Verify, b);
  ASSERT_EQ(art.alphas.size(), 3u);
  for (std::size_t i = 1; i < art.alphas.size(); ++i) EXPECT_GE(art.alphas[i].finest.count, art.alphas[i - 1].finest.count);
  // Calibrated on the same sweep, so every row is dominated.
  EXPECT_TRUE(art.dominance_ok());
  for (const auto& f : art.files) EXPECT_EQ(slurp(f), slurp(b / f.filename())) << f;
  std::istringstream dat(slurp(a / "count_vs_alpha.dat"));
  std::string line;
  int points = 0;
  while (std::getline(dat, line))
    if (!line.empty() && line[0] != '#') ++points;
  EXPECT_EQ(points, 3);
  EXPECT_TRUE(fs::exists(a / "convergence.csv"));
  EXPECT_TRUE(fs::exists(a / "truncation.csv"));
  EXPECT_TRUE(fs::exists(a / "bound_vs_alpha.dat"));
  EXPECT_TRUE(fs::exists(a / "eig_vs_invS.dat"));
}

TEST(Harness, CalibrateMode) {
  auto c = parse_config(R"({
    "potential": {"family": "square_well_x", "params": {"a": 1}, "alpha": [0.5, 4]},
    "grid": {"S": 5, "nx": 100, "ny": 8}
  })");
  auto dir = scratch("calibrate");
  auto art = run_experiment(c, RunMode::Calibrate, dir);
  EXPECT_TRUE(fs::exists(dir / "constants.csv"));
  EXPECT_EQ(rows(dir / "calibration.csv").size(), 2u);
  EXPECT_GT(art.constants.C16, 0.0);
}

TEST(Harness, FailureLeavesMarker) {
  auto c = parse_config(R"({"potential": {"family": "square_well_x", "params": {"a": 5}, "alpha": [1]}, "grid": {"S": 4, "nx": 40, "ny": 4}})");
  auto dir = scratch("fail");
  try {
    run_experiment(c, RunMode::Solve, dir);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::GridTooSmall);
  }
  EXPECT_NE(slurp(dir / "spectral.csv").find("FAILED"), std::string::npos);
}

TEST(Harness, ValidateExperiment) {
  auto ok = parse_config(R"({"geometry": {"d": 0.5, "curvature": {"family": "sech_bump", "params": {"amplitude": 0.5, "half_window": 3}}},
                             "potential": {"family": "gaussian", "params": {"sigma": 0.5}}})");
  EXPECT_TRUE(validate_experiment(ok).ok());
  auto bad = parse_config(R"({"geometry": {"d": 1, "curvature": {"family": "constant", "params": {"k": 1.2}}},
                              "potential": {"family": "zero"}})");
  try {
    validate_experiment(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidGeometry);
  }
}
