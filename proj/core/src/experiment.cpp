#include "apseq/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "apseq/deployment_io.hpp"
#include "apseq/error.hpp"
#include "apseq/localize.hpp"
#include "apseq/scan_io.hpp"
#include "text_io.hpp"

namespace apseq {

namespace {

// Substreams of the config seed.
constexpr std::uint64_t kPointStream = 1;
constexpr std::uint64_t kWindowStream = 2;

std::vector<std::size_t> parse_size_list(std::string_view value, std::string_view key) {
  std::string text(value);
  std::replace(text.begin(), text.end(), ',', ' ');
  std::vector<std::size_t> out;
  for (auto tok : detail::split_ws(text)) out.push_back(detail::parse_uint(tok, key));
  return out;
}

bool parse_bool(std::string_view v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ParseError("invalid boolean '" + std::string(v) + "'");
}

std::vector<Point2> test_points_for(const ExperimentConfig& config, const Area& area) {
  TestPointMode mode = config.test_points;
  if (mode.kind == TestPointMode::Kind::Random) mode.seed = derive_seed(config.seed, kPointStream, 0);
  return gen_test_points(area, mode);
}

ScanWindow window_for(const ExperimentConfig& config, const ApDeployment& deployment, Point2 p,
                      std::size_t index, double duration_s) {
  PropagationParams params = config.propagation;
  params.seed = derive_seed(config.seed, kWindowStream, index);
  return synth_window(p, deployment, params, duration_s, config.cadence_s);
}

std::string csv_real(double v) { return std::isnan(v) ? std::string("nan") : detail::fixed6(v); }

}  // namespace

ExperimentConfig parse_experiment_config(std::string_view text,
                                         const std::filesystem::path& base_dir) {
  ExperimentConfig config;
  bool have_deployment = false;
  bool have_k = false;
  detail::LineReader reader(text);
  std::string_view line;
  while (reader.next(line)) {
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) detail::parse_fail(reader, "expected 'key = value'");
    const std::string_view key = detail::trim(line.substr(0, eq));
    const std::string_view value = detail::trim(line.substr(eq + 1));
    if (value.empty()) detail::parse_fail(reader, "empty value for '" + std::string(key) + "'");
    try {
      if (key == "deployment") {
        std::filesystem::path p{std::string(value)};
        config.deployment = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
        have_deployment = true;
      } else if (key == "cell_size") {
        config.cell_size = detail::parse_real(value, key);
      } else if (key == "k_values") {
        config.k_values = parse_size_list(value, key);
        have_k = true;
      } else if (key == "p0_dbm") {
        config.propagation.p0_dbm = detail::parse_real(value, key);
      } else if (key == "gamma") {
        config.propagation.gamma = detail::parse_real(value, key);
      } else if (key == "d0_m") {
        config.propagation.d0_m = detail::parse_real(value, key);
      } else if (key == "sigma_db") {
        config.propagation.sigma_db = detail::parse_real(value, key);
      } else if (key == "detect_floor_dbm") {
        config.propagation.detect_floor_dbm = detail::parse_real(value, key);
      } else if (key == "integer_rss") {
        config.propagation.integer_rss = parse_bool(value);
      } else if (key == "test_points") {
        const auto tok = detail::split_ws(value);
        if (tok.size() != 2) throw ParseError("test_points must be 'random <count>' or 'grid <per_side>'");
        const auto count = detail::parse_uint(tok[1], "test point count");
        if (tok[0] == "random") {
          config.test_points = TestPointMode::random(count, 0);
        } else if (tok[0] == "grid") {
          config.test_points = TestPointMode::uniform_grid(count);
        } else {
          throw ParseError("unknown test_points mode '" + std::string(tok[0]) + "'");
        }
      } else if (key == "duration_s") {
        config.duration_s = detail::parse_real(value, key);
      } else if (key == "cadence_s") {
        config.cadence_s = detail::parse_real(value, key);
      } else if (key == "seed") {
        config.seed = detail::parse_uint(value, key);
      } else if (key == "output_dir") {
        std::filesystem::path p{std::string(value)};
        config.output_dir = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
      } else if (key == "kmeans_seed_ranks") {
        config.kmeans_seed_ranks = parse_size_list(value, key);
      } else {
        throw ParseError("unknown key '" + std::string(key) + "'");
      }
    } catch (const ParseError& e) {
      detail::parse_fail(reader, e.what());
    }
  }
  if (!have_deployment) throw ParseError("config is missing 'deployment'");
  if (!have_k) throw ParseError("config is missing 'k_values'");
  return config;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  return parse_experiment_config(detail::read_file(path), path.parent_path());
}

ApDeployment validate_experiment_config(const ExperimentConfig& config) {
  if (!std::filesystem::exists(config.deployment)) {
    throw Error("deployment file '" + config.deployment.string() + "' does not exist");
  }
  ApDeployment deployment = read_deployment_file(config.deployment);
  if (config.k_values.empty()) throw Error("k_values is empty");
  for (auto k : config.k_values) {
    if (k < 2 || k > deployment.size()) {
      throw Error("k=" + std::to_string(k) + " outside [2, " + std::to_string(deployment.size()) + "]");
    }
  }
  if (!(config.cell_size > 0.0)) throw Error("cell_size must be positive");
  if (!(config.cadence_s > 0.0) || config.duration_s < config.cadence_s) {
    throw Error("window needs duration_s >= cadence_s > 0");
  }
  if (config.test_points.count == 0) throw Error("test point count must be at least 1");
  config.propagation.validate();
  return deployment;
}

std::vector<CdfPoint> error_cdf(std::vector<double> errors) {
  if (errors.empty()) throw Error("error CDF of an empty list");
  std::sort(errors.begin(), errors.end());
  const auto n = static_cast<double>(errors.size());
  std::vector<CdfPoint> out;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (i + 1 < errors.size() && errors[i + 1] == errors[i]) continue;
    out.push_back({errors[i], static_cast<double>(i + 1) / n});
  }
  return out;
}

double cdf_at(const std::vector<CdfPoint>& table, double error_m) {
  auto it = std::upper_bound(table.begin(), table.end(), error_m,
                             [](double v, const CdfPoint& p) { return v < p.error_m; });
  return it == table.begin() ? 0.0 : std::prev(it)->cdf;
}

double median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

double KReport::missed_rate() const {
  return points == 0 ? 0.0 : static_cast<double>(missed) / static_cast<double>(points);
}

double KReport::median_error() const { return median(errors); }

double KReport::mean_error() const {
  if (errors.empty()) return std::numeric_limits<double>::quiet_NaN();
  return std::accumulate(errors.begin(), errors.end(), 0.0) / static_cast<double>(errors.size());
}

const KReport& ExperimentReport::for_k(std::size_t k) const {
  for (const auto& r : per_k) {
    if (r.k == k) return r;
  }
  throw Error("report has no entry for k=" + std::to_string(k));
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  const ApDeployment deployment = validate_experiment_config(config);
  const GridSpec grid(deployment.area(), config.cell_size);

  ExperimentReport report;
  report.test_points = test_points_for(config, deployment.area());
  std::vector<RssScan> scans;
  scans.reserve(report.test_points.size());
  for (std::size_t i = 0; i < report.test_points.size(); ++i) {
    scans.push_back(aggregate_scan(
        window_for(config, deployment, report.test_points[i], i, config.duration_s)));
  }

  StoreCatalog catalog;
  for (auto k : config.k_values) {
    KReport kr;
    kr.k = k;
    if (catalog.find(k) == nullptr) {
      BuildStats stats;
      catalog.add(build_map_store(deployment, k, grid, &stats));
      kr.build_ms = stats.build_ms;
    }
    const MapStore& store = *catalog.find(k);
    kr.maps = store.maps.size();
    kr.regions_min = std::numeric_limits<std::size_t>::max();
    for (const auto& [subset, map] : store.maps) {
      kr.regions_total += map.regions.size();
      kr.regions_min = std::min(kr.regions_min, map.regions.size());
      kr.regions_max = std::max(kr.regions_max, map.regions.size());
    }

    LocalizeOptions options;
    options.kmeans.seed_ranks = config.kmeans_seed_ranks;
    if (!options.kmeans.seed_ranks.empty() && options.kmeans.seed_ranks.size() != k) {
      options.kmeans.seed_ranks.clear();
    }
    for (std::size_t i = 0; i < scans.size(); ++i) {
      PointResult pr;
      pr.index = i;
      try {
        const LocalizationOutcome outcome = localize(scans[i], catalog, k, options);
        if (const auto* est = std::get_if<Estimate>(&outcome)) {
          pr.matched = true;
          pr.error_m = distance(est->position, report.test_points[i]);
          pr.region_radius = est->region_radius;
          pr.candidates_tried = est->candidates_tried;
          kr.errors.push_back(pr.error_m);
        } else {
          pr.candidates_tried = std::get<MissedDetection>(outcome).candidates_tried;
          ++kr.missed;
        }
      } catch (const Error&) {
        ++kr.missed;
        ++kr.failures;
      }
      kr.results.push_back(pr);
    }
    kr.points = scans.size();
    if (!kr.errors.empty()) kr.cdf = error_cdf(kr.errors);
    report.per_k.push_back(std::move(kr));
  }
  return report;
}

std::vector<SweepEntry> window_sweep(const ExperimentConfig& config,
                                     const std::vector<double>& durations) {
  std::vector<SweepEntry> out;
  for (double d : durations) {
    if (!(d > 0.0)) throw Error("window durations must be positive");
    ExperimentConfig c = config;
    c.duration_s = d;
    out.push_back({d, run_experiment(c)});
  }
  return out;
}

void write_report(const ExperimentReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::string summary = "k,points,missed_rate,median_error_m,mean_error_m,build_ms,maps\n";
  for (const auto& kr : report.per_k) {
    std::string cdf = "error_m,cdf\n";
    for (const auto& p : kr.cdf) cdf += detail::fixed6(p.error_m) + ',' + detail::fixed6(p.cdf) + '\n';
    detail::write_file(dir / ("cdf_k" + std::to_string(kr.k) + ".csv"), cdf);
    summary += std::to_string(kr.k) + ',' + std::to_string(kr.points) + ',' +
               detail::fixed6(kr.missed_rate()) + ',' + csv_real(kr.median_error()) + ',' +
               csv_real(kr.mean_error()) + ',' + detail::fixed6(kr.build_ms) + ',' +
               std::to_string(kr.maps) + '\n';
  }
  detail::write_file(dir / "summary.csv", summary);
}

void write_simulated_scans(const ExperimentConfig& config, const std::filesystem::path& dir) {
  const ApDeployment deployment = validate_experiment_config(config);
  std::filesystem::create_directories(dir);
  const auto points = test_points_for(config, deployment.area());
  std::string csv = "index,x,y\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    csv += std::to_string(i) + ',' + detail::fixed6(points[i].x) + ',' + detail::fixed6(points[i].y) + '\n';
    char name[32];
    std::snprintf(name, sizeof name, "scan_%03zu.txt", i);
    write_scan_file(window_for(config, deployment, points[i], i, config.duration_s), dir / name);
  }
  detail::write_file(dir / "points.csv", csv);
}

}  // namespace apseq
