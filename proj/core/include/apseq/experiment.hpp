#pragma once

// Simulation-driven evaluation: build stores, synthesise a scan at every
// test point, localize it and collect error statistics per k.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

#include "apseq/mapgen.hpp"
#include "apseq/simkit.hpp"

namespace apseq {

// Config file: one `key = value` per line, keys named after the fields
// below. `test_points` is `random <count>` or `grid <per_side>`; list values
// are separated by spaces or commas.
struct ExperimentConfig {
  std::filesystem::path deployment;
  double cell_size = kDefaultCellSize;
  std::vector<std::size_t> k_values;
  PropagationParams propagation;  // propagation.seed is unused; see `seed`
  TestPointMode test_points = TestPointMode::random(27, 0);
  double duration_s = 60.0;
  double cadence_s = 0.3;
  std::uint64_t seed = 1;
  std::filesystem::path output_dir = "out";
  std::vector<std::size_t> kmeans_seed_ranks;  // empty: K largest
};

// Relative paths in the file resolve against the file's directory.
ExperimentConfig load_experiment_config(const std::filesystem::path& path);
ExperimentConfig parse_experiment_config(std::string_view text,
                                         const std::filesystem::path& base_dir = {});

// Throws Error when the deployment is unreadable, a k is outside [2, n] or a
// numeric field is out of range.
ApDeployment validate_experiment_config(const ExperimentConfig& config);

struct CdfPoint {
  double error_m = 0.0;
  double cdf = 0.0;
};

// Empirical CDF with one step per distinct error, ascending. Throws Error on
// empty input.
std::vector<CdfPoint> error_cdf(std::vector<double> errors);
// Right-continuous evaluation of a table returned by error_cdf.
double cdf_at(const std::vector<CdfPoint>& table, double error_m);

double median(std::vector<double> values);

struct PointResult {
  std::size_t index = 0;
  bool matched = false;
  double error_m = 0.0;        // matched points only
  double region_radius = 0.0;  // matched points only
  std::size_t candidates_tried = 0;
};

struct KReport {
  std::size_t k = 0;
  std::size_t points = 0;
  std::size_t missed = 0;    // includes failures
  std::size_t failures = 0;  // localize raised (e.g. too few detected APs)
  std::vector<double> errors;  // matched points, test-point order
  std::vector<PointResult> results;
  std::vector<CdfPoint> cdf;  // empty when every point was missed
  double build_ms = 0.0;
  std::size_t maps = 0;
  std::size_t regions_total = 0;
  std::size_t regions_min = 0;
  std::size_t regions_max = 0;

  double missed_rate() const;
  double median_error() const;  // NaN when nothing matched
  double mean_error() const;    // NaN when nothing matched
};

struct ExperimentReport {
  std::vector<Point2> test_points;
  std::vector<KReport> per_k;  // in config.k_values order

  const KReport& for_k(std::size_t k) const;
};

ExperimentReport run_experiment(const ExperimentConfig& config);

struct SweepEntry {
  double duration_s = 0.0;
  ExperimentReport report;
};

// One report per duration. Each test point keeps its noise stream across
// durations, so shorter windows are prefixes of longer ones.
std::vector<SweepEntry> window_sweep(const ExperimentConfig& config,
                                     const std::vector<double>& durations);

// Writes cdf_k<K>.csv and summary.csv into `dir` (created if missing).
void write_report(const ExperimentReport& report, const std::filesystem::path& dir);

// Writes points.csv and one scan_<index>.txt per test point into `dir`.
void write_simulated_scans(const ExperimentConfig& config, const std::filesystem::path& dir);

}  // namespace apseq
