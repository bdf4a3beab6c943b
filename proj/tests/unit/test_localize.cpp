#include <gtest/gtest.h>

#include <cmath>

#include "apseq/error.hpp"
#include "apseq/localize.hpp"
#include "apseq/mapgen.hpp"
#include "apseq/simkit.hpp"

namespace apseq {
namespace {

ScanWindow window_of(std::map<ApId, std::vector<double>> values, std::size_t instants) {
  ScanWindow w;
  w.instants = instants;
  w.cadence_s = 0.3;
  w.duration_s = 0.3 * static_cast<double>(instants);
  for (auto& [id, rss] : values) {
    auto& series = w.series[id];
    for (std::size_t i = 0; i < rss.size(); ++i) series.push_back({0.3 * static_cast<double>(i), rss[i]});
  }
  return w;
}

TEST(AggregateScan, MeanOfDetectedSamples) {
  const RssScan scan = aggregate_scan(window_of({{1, {-40, -42, -44}}}, 3));
  EXPECT_DOUBLE_EQ(scan.values().at(1), -42.0);
}

TEST(AggregateScan, NeverDetectedGetsSentinel) {
  const RssScan scan = aggregate_scan(window_of({{1, {-40, -41}}, {2, {}}}, 2));
  EXPECT_EQ(scan.values().at(2), kUndetectedDbm);
}

TEST(AggregateScan, RareDetectionGetsSentinel) {
  std::vector<double> strong(200, -50.0);
  const RssScan scan = aggregate_scan(window_of({{1, strong}, {2, {-80}}}, 200));
  EXPECT_EQ(scan.values().at(2), kUndetectedDbm);
  // 20 of 200 is exactly the threshold and counts as detected.
  const RssScan at_threshold =
      aggregate_scan(window_of({{1, strong}, {2, std::vector<double>(20, -80.0)}}, 200));
  EXPECT_DOUBLE_EQ(at_threshold.values().at(2), -80.0);
}

TEST(AggregateScan, Errors) {
  EXPECT_THROW(aggregate_scan(window_of({{1, {}}, {2, {}}}, 5)), Error);
  EXPECT_THROW(aggregate_scan(ScanWindow{}), Error);
}

TEST(AggregateScan, ConstantSamplesAggregateExactly) {
  const double v = -47.123456789;
  const RssScan scan = aggregate_scan(window_of({{1, std::vector<double>(200, v)}}, 200));
  EXPECT_EQ(scan.values().at(1), v);
}

class TwoApLocalize : public ::testing::Test {
 protected:
  ApDeployment deployment{Area{10, 10}, {{1, {0, 0}}, {2, {10, 0}}}};
  MapStore store = build_map_store(deployment, 2, GridSpec(Area{10, 10}, 1.0));
};

TEST_F(TwoApLocalize, HalfPlaneCentroid) {
  const auto outcome = localize(RssScan({{1, -40}, {2, -60}}), store, 2);
  const auto* est = std::get_if<Estimate>(&outcome);
  ASSERT_NE(est, nullptr);
  EXPECT_DOUBLE_EQ(est->position.x, 2.5);
  EXPECT_DOUBLE_EQ(est->position.y, 5.0);
  EXPECT_EQ(est->signature, (Signature{1, 2}));
  EXPECT_EQ(est->candidates_tried, 1u);
}

TEST_F(TwoApLocalize, Errors) {
  EXPECT_THROW(localize(RssScan({{1, -40}, {2, kUndetectedDbm}}), store, 2), Error);
  EXPECT_THROW(localize(RssScan({{1, -40}, {2, -50}}), store, 1), Error);
}

TEST_F(TwoApLocalize, RequestedKDegradesToDetectedCount) {
  const auto outcome = localize(RssScan({{1, -40}, {2, -50}}), store, 3);
  ASSERT_TRUE(std::holds_alternative<Estimate>(outcome));
  EXPECT_EQ(std::get<Estimate>(outcome).k_used, 2u);
}

TEST(Localize, CollinearInfeasibleOrderIsMissed) {
  const ApDeployment d(Area{10, 10}, {{1, {0, 0}}, {2, {5, 0}}, {3, {10, 0}}});
  const MapStore store = build_map_store(d, 3, GridSpec(d.area(), 1.0));
  const auto outcome = localize(RssScan({{1, -40}, {2, -60}, {3, -50}}), store, 3);
  const auto* missed = std::get_if<MissedDetection>(&outcome);
  ASSERT_NE(missed, nullptr);
  EXPECT_EQ(missed->candidates_tried, 1u);
}

TEST(Localize, FallsBackToLaterCandidates) {
  // Four APs on the x axis. Clusters {1} {4, 2} {3} give candidates {1,3,4}
  // with order 1-4-3 (needs x < 7.5 and x > 12.5, impossible) and then
  // {1,2,3} with order 1-2-3.
  const ApDeployment d(Area{15, 10}, {{1, {0, 0}}, {2, {5, 0}}, {3, {10, 0}}, {4, {15, 0}}});
  const MapStore store = build_map_store(d, 3, GridSpec(d.area(), 0.5));
  const RssScan scan({{1, -40.0}, {4, -60.0}, {2, -60.5}, {3, -80.0}});
  const auto outcome = localize(scan, store, 3);
  ASSERT_TRUE(std::holds_alternative<Estimate>(outcome));
  const auto& est = std::get<Estimate>(outcome);
  EXPECT_EQ(est.candidates_tried, 2u);
  EXPECT_EQ(est.subset, (SubsetKey{1, 2, 3}));
  EXPECT_EQ(est.signature, (Signature{1, 2, 3}));
  EXPECT_EQ(est.position, store.map_for(SubsetKey{1, 2, 3}).find(Signature{1, 2, 3})->centroid);
}

TEST(Localize, DegradesKWhenApsAreMissing) {
  const ApDeployment d(Area{20, 20}, {{1, {0, 0}}, {2, {20, 0}}, {3, {0, 20}}, {4, {20, 20}}});
  StoreCatalog catalog;
  catalog.add(build_map_store(d, 4, GridSpec(d.area(), 1.0)));
  const RssScan scan({{1, -40}, {2, -50}, {3, -55}, {4, kUndetectedDbm}});
  EXPECT_THROW(localize(scan, catalog, 4), Error);  // no k=3 store
  catalog.add(build_map_store(d, 3, GridSpec(d.area(), 1.0)));
  const auto outcome = localize(scan, catalog, 4);
  ASSERT_TRUE(std::holds_alternative<Estimate>(outcome));
  EXPECT_EQ(std::get<Estimate>(outcome).k_used, 3u);
}

TEST(MatchSignature, LookupAndErrors) {
  const ApDeployment d(Area{10, 10}, {{1, {0, 0}}, {2, {5, 0}}, {3, {10, 0}}});
  const FingerprintMap map = build_fingerprint_map(d, SubsetKey{1, 2, 3}, GridSpec(d.area(), 1.0));
  const Region* r = match_signature(Signature{2, 1, 3}, map);
  ASSERT_NE(r, nullptr);
  EXPECT_EQ(r->signature, (Signature{2, 1, 3}));
  EXPECT_EQ(match_signature(Signature{1, 3, 2}, map), nullptr);
  EXPECT_THROW(match_signature(Signature{1, 2}, map), Error);
}

// Zero-noise scans away from bisectors land in the region containing the point.
TEST(LocalizeProperties, ZeroNoiseSoundnessAndDeterminism) {
  const ApDeployment d(Area{30, 20},
                       {{1, {3, 4}}, {2, {15, 2}}, {3, {27, 5}}, {4, {5, 17}}, {5, {24, 16}}});
  const GridSpec grid(d.area(), 0.5);
  const MapStore store = build_map_store(d, 5, grid);
  const SubsetKey all{1, 2, 3, 4, 5};
  const PropagationParams params;
  int checked = 0;
  for (const Point2& p : gen_test_points(d.area(), TestPointMode::random(200, 9))) {
    const Signature truth = cell_signature(p, all, d);
    if (truth != cell_signature(grid.cell_center(grid.cell_of(p)), all, d)) continue;
    const RssScan scan = aggregate_scan(synth_window(p, d, params, 3.0, 0.3));
    const auto outcome = localize(scan, store, 5);
    ASSERT_TRUE(std::holds_alternative<Estimate>(outcome));
    const auto& est = std::get<Estimate>(outcome);
    EXPECT_EQ(est.signature, truth);
    EXPECT_EQ(est.position, store.region_at(all, p).centroid);
    EXPECT_EQ(localize(scan, store, 5), outcome);
    ++checked;
  }
  EXPECT_GT(checked, 150);
}

}  // namespace
}  // namespace apseq
