// apseq: build fingerprint-map stores, simulate scans, localize and evaluate.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "apseq/deployment_io.hpp"
#include "apseq/error.hpp"
#include "apseq/experiment.hpp"
#include "apseq/localize.hpp"
#include "apseq/map_store_io.hpp"
#include "apseq/scan_io.hpp"

namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

apseq::ExperimentConfig load_config(const std::string& path, std::optional<std::uint64_t> seed) {
  apseq::ExperimentConfig config = apseq::load_experiment_config(path);
  if (seed) config.seed = *seed;
  return config;
}

void print_summary(const apseq::ExperimentReport& report) {
  std::printf("%3s %7s %8s %10s %10s %10s %6s\n", "k", "points", "missed", "median_m", "mean_m",
              "build_ms", "maps");
  for (const auto& kr : report.per_k) {
    std::printf("%3zu %7zu %8.3f %10.3f %10.3f %10.2f %6zu\n", kr.k, kr.points, kr.missed_rate(),
                kr.median_error(), kr.mean_error(), kr.build_ms, kr.maps);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Selective AP-sequence indoor localization toolkit"};
  app.require_subcommand(1);
  std::optional<std::uint64_t> seed;
  app.add_option("--seed", seed, "Override the experiment seed");

  // mapgen
  auto* mapgen = app.add_subcommand("mapgen", "Build a fingerprint-map store");
  std::string deploy_path;
  std::string store_out;
  double cell_size = apseq::kDefaultCellSize;
  std::size_t mapgen_k = 0;
  mapgen->add_option("--deploy", deploy_path, "Deployment file")->required()->check(CLI::ExistingFile);
  mapgen->add_option("--grid", cell_size, "Grid cell size in meters")->capture_default_str();
  mapgen->add_option("--k", mapgen_k, "Number of APs per subset")->required();
  mapgen->add_option("--out", store_out, "Output map-store file")->required();

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Write simulated scan files for the test points");
  std::string sim_config;
  std::string sim_out;
  simulate->add_option("--config", sim_config, "Experiment config")->required()->check(CLI::ExistingFile);
  simulate->add_option("--out", sim_out, "Output directory")->required();

  // localize
  auto* loc = app.add_subcommand("localize", "Localize one scan file against a map store");
  std::string loc_store;
  std::string loc_scan;
  std::optional<std::size_t> loc_k;
  std::vector<std::size_t> seed_ranks;
  loc->add_option("--store", loc_store, "Map-store file")->required()->check(CLI::ExistingFile);
  loc->add_option("--scan", loc_scan, "Scan file")->required()->check(CLI::ExistingFile);
  loc->add_option("--k", loc_k, "Number of selected APs (default: the store's k)");
  loc->add_option("--seed-ranks", seed_ranks, "K-means initial centroid ranks, e.g. 1 3 5 7");

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "Run a simulated localization experiment");
  std::string eval_config;
  std::string eval_out;
  std::vector<double> windows;
  evaluate->add_option("--config", eval_config, "Experiment config")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--out", eval_out, "Output directory (default: the config's output_dir)");
  evaluate->add_option("--windows", windows, "Observation-window sweep durations in seconds")
      ->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    if (*mapgen) {
      const apseq::ApDeployment deployment = apseq::read_deployment_file(deploy_path);
      apseq::BuildStats stats;
      const apseq::MapStore store = apseq::build_map_store(
          deployment, mapgen_k, apseq::GridSpec(deployment.area(), cell_size), &stats);
      apseq::save_map_store(store, store_out);
      std::printf("maps %zu regions %zu build_ms %.3f\n", stats.maps, stats.regions, stats.build_ms);
    } else if (*simulate) {
      const apseq::ExperimentConfig config = load_config(sim_config, seed);
      apseq::write_simulated_scans(config, sim_out);
    } else if (*loc) {
      const apseq::MapStore store = apseq::load_map_store(loc_store);
      const auto ids = store.deployment.ids();
      const apseq::RssScan scan = apseq::aggregate_scan(apseq::read_scan_file(loc_scan, ids));
      apseq::LocalizeOptions options;
      options.kmeans.seed_ranks = seed_ranks;
      const auto outcome = apseq::localize(scan, store, loc_k.value_or(store.k), options);
      if (const auto* est = std::get_if<apseq::Estimate>(&outcome)) {
        std::cout << "estimate " << fixed6(est->position.x) << ' ' << fixed6(est->position.y) << ' '
                  << apseq::signature_to_text(est->signature) << ' '
                  << apseq::subset_to_text(est->subset) << '\n';
      } else {
        std::cout << "missed\n";
      }
    } else if (*evaluate) {
      const apseq::ExperimentConfig config = load_config(eval_config, seed);
      const std::filesystem::path out = eval_out.empty() ? config.output_dir : std::filesystem::path(eval_out);
      if (windows.empty()) {
        const auto report = apseq::run_experiment(config);
        apseq::write_report(report, out);
        print_summary(report);
      } else {
        for (const auto& entry : apseq::window_sweep(config, windows)) {
          char sub[48];
          std::snprintf(sub, sizeof sub, "window_%gs", entry.duration_s);
          apseq::write_report(entry.report, out / sub);
          std::printf("window %gs\n", entry.duration_s);
          print_summary(entry.report);
        }
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "apseq: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
