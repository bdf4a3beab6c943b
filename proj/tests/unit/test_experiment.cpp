#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "apseq/deployment_io.hpp"
#include "apseq/error.hpp"
#include "apseq/experiment.hpp"

namespace apseq {
namespace {

namespace fs = std::filesystem;

std::string first_line(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  return line;
}

class ExperimentTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("apseq_exp_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    write_deployment_file(
        ApDeployment(Area{20, 12}, {{1, {2, 2}}, {2, {10, 1}}, {3, {18, 2.5}}, {4, {3, 10}}, {5, {17, 11}}}),
        dir / "deploy.txt");
    config.deployment = dir / "deploy.txt";
    config.cell_size = 0.5;
    config.k_values = {2, 3, 5};
    config.test_points = TestPointMode::random(30, 0);
    config.duration_s = 6.0;
    config.seed = 4;
  }
  void TearDown() override { fs::remove_all(dir); }

  fs::path dir;
  ExperimentConfig config;
};

TEST(ErrorCdf, Steps) {
  const auto cdf = error_cdf({4, 1, 3, 2});
  ASSERT_EQ(cdf.size(), 4u);
  EXPECT_DOUBLE_EQ(cdf_at(cdf, 2.5), 0.5);
  EXPECT_DOUBLE_EQ(cdf_at(cdf, 2.0), 0.5);
  EXPECT_DOUBLE_EQ(cdf_at(cdf, 0.5), 0.0);
  EXPECT_DOUBLE_EQ(cdf_at(cdf, 4.0), 1.0);
  EXPECT_DOUBLE_EQ(median({4, 1, 3, 2}), 2.5);
}

TEST(ErrorCdf, AllEqualAndEmpty) {
  const auto cdf = error_cdf({1.5, 1.5, 1.5});
  ASSERT_EQ(cdf.size(), 1u);
  EXPECT_DOUBLE_EQ(cdf[0].cdf, 1.0);
  EXPECT_THROW(error_cdf({}), Error);
}

TEST(ErrorCdf, MonotoneAndEndsAtOne) {
  std::vector<double> errors;
  for (int i = 0; i < 97; ++i) errors.push_back(std::fmod(i * 7.31, 13.0));
  const auto cdf = error_cdf(errors);
  for (std::size_t i = 1; i < cdf.size(); ++i) {
    EXPECT_LT(cdf[i - 1].error_m, cdf[i].error_m);
    EXPECT_LT(cdf[i - 1].cdf, cdf[i].cdf);
  }
  EXPECT_DOUBLE_EQ(cdf.back().cdf, 1.0);
}

TEST(ExperimentConfigText, Parse) {
  const ExperimentConfig c = parse_experiment_config(
      "# comment\ndeployment = site.txt\nk_values = 2, 3 4\ncell_size = 0.5\nsigma_db = 3\n"
      "test_points = grid 4\ninteger_rss = true\nseed = 9\n",
      "/base");
  EXPECT_EQ(c.deployment, fs::path("/base/site.txt"));
  EXPECT_EQ(c.k_values, (std::vector<std::size_t>{2, 3, 4}));
  EXPECT_DOUBLE_EQ(c.cell_size, 0.5);
  EXPECT_DOUBLE_EQ(c.propagation.sigma_db, 3.0);
  EXPECT_TRUE(c.propagation.integer_rss);
  EXPECT_EQ(c.test_points.kind, TestPointMode::Kind::UniformGrid);
  EXPECT_EQ(c.test_points.count, 4u);
  EXPECT_EQ(c.seed, 9u);
}

TEST(ExperimentConfigText, Errors) {
  EXPECT_THROW(parse_experiment_config("k_values = 2\n"), ParseError);
  EXPECT_THROW(parse_experiment_config("deployment = d.txt\n"), ParseError);
  EXPECT_THROW(parse_experiment_config("deployment = d.txt\nk_values = 2\nbogus = 1\n"), ParseError);
  EXPECT_THROW(parse_experiment_config("deployment = d.txt\nk_values = 2\ngamma = fast\n"), ParseError);
  EXPECT_THROW(parse_experiment_config("deployment = d.txt\nk_values = 2\ntest_points = hex 3\n"), ParseError);
}

TEST_F(ExperimentTest, Validation) {
  EXPECT_EQ(validate_experiment_config(config).size(), 5u);
  config.k_values = {6};
  EXPECT_THROW(validate_experiment_config(config), Error);
  config.k_values = {2};
  config.deployment = dir / "missing.txt";
  EXPECT_THROW(validate_experiment_config(config), Error);
}

TEST_F(ExperimentTest, ZeroNoiseFullSubsetNeverMisses) {
  const ExperimentReport report = run_experiment(config);
  const KReport& all = report.for_k(5);
  EXPECT_EQ(all.missed, 0u);
  for (const auto& r : all.results) {
    ASSERT_TRUE(r.matched);
    EXPECT_LE(r.error_m, r.region_radius + config.cell_size * std::sqrt(2.0));
  }
}

TEST_F(ExperimentTest, CountsAddUpAndRunsAreDeterministic) {
  config.propagation.sigma_db = 4.0;
  const ExperimentReport a = run_experiment(config);
  const ExperimentReport b = run_experiment(config);
  ASSERT_EQ(a.per_k.size(), 3u);
  for (std::size_t i = 0; i < a.per_k.size(); ++i) {
    const KReport& r = a.per_k[i];
    EXPECT_EQ(r.points, 30u);
    EXPECT_EQ(r.errors.size() + r.missed, r.points);
    EXPECT_EQ(r.errors, b.per_k[i].errors);
    EXPECT_EQ(r.missed, b.per_k[i].missed);
    EXPECT_EQ(r.maps, binomial(5, r.k));
  }
  EXPECT_EQ(a.test_points, b.test_points);
}

TEST_F(ExperimentTest, ZeroNoiseSweepIsFlat) {
  config.k_values = {3};
  const auto sweep = window_sweep(config, {0.3, 3.0, 6.0});
  ASSERT_EQ(sweep.size(), 3u);
  for (const auto& entry : sweep) EXPECT_EQ(entry.report.per_k[0].errors, sweep[0].report.per_k[0].errors);
}

TEST_F(ExperimentTest, ReportFiles) {
  const ExperimentReport report = run_experiment(config);
  write_report(report, dir / "out");
  EXPECT_EQ(first_line(dir / "out" / "summary.csv"),
            "k,points,missed_rate,median_error_m,mean_error_m,build_ms,maps");
  for (std::size_t k : config.k_values) {
    EXPECT_EQ(first_line(dir / "out" / ("cdf_k" + std::to_string(k) + ".csv")), "error_m,cdf");
  }
  write_simulated_scans(config, dir / "scans");
  EXPECT_EQ(first_line(dir / "scans" / "points.csv"), "index,x,y");
  EXPECT_TRUE(fs::exists(dir / "scans" / "scan_029.txt"));
}

}  // namespace
}  // namespace apseq
