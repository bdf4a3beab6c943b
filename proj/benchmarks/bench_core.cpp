#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "apseq/apselect.hpp"
#include "apseq/deployment_io.hpp"
#include "apseq/localize.hpp"
#include "apseq/map_store_io.hpp"
#include "apseq/mapgen.hpp"
#include "apseq/simkit.hpp"

namespace {

using namespace apseq;

const ApDeployment& dover() {
  static const ApDeployment d = read_deployment_file(std::string(APSEQ_SCENARIO_DIR) + "/dover/deploy.txt");
  return d;
}

// Arg: k. 0.2 m grid over the 60x40 m site.
void BM_BuildMapStore(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const GridSpec grid(dover().area(), 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(build_map_store(dover(), k, grid));
}
BENCHMARK(BM_BuildMapStore)->DenseRange(2, 7)->Unit(benchmark::kMillisecond);

void BM_KMeans1d(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> rss(-95.0, -30.0);
  std::map<ApId, double> values;
  for (ApId id = 1; id <= static_cast<ApId>(state.range(0)); ++id) values[id] = rss(rng);
  for (auto _ : state) benchmark::DoNotOptimize(kmeans_1d(values, 4));
}
BENCHMARK(BM_KMeans1d)->Arg(7)->Arg(10)->Arg(20);

void BM_Localize(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const MapStore store = build_map_store(dover(), k, GridSpec(dover().area(), 0.2));
  PropagationParams p;
  p.sigma_db = 3.0;
  p.seed = 5;
  const RssScan scan = aggregate_scan(synth_window({21.3, 17.8}, dover(), p, 60.0, 0.3));
  for (auto _ : state) benchmark::DoNotOptimize(localize(scan, store, k));
}
BENCHMARK(BM_Localize)->DenseRange(3, 7);

void BM_SynthWindow(benchmark::State& state) {
  PropagationParams p;
  p.sigma_db = 3.0;
  for (auto _ : state) benchmark::DoNotOptimize(synth_window({21.3, 17.8}, dover(), p, 60.0, 0.3));
}
BENCHMARK(BM_SynthWindow);

void BM_SaveFormat(benchmark::State& state) {
  const MapStore store = build_map_store(dover(), 4, GridSpec(dover().area(), 0.2));
  for (auto _ : state) benchmark::DoNotOptimize(format_map_store(store));
}
BENCHMARK(BM_SaveFormat)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
