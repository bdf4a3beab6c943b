#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "apseq/error.hpp"
#include "apseq/model.hpp"

namespace apseq {
namespace {

TEST(Signature, MakeSignatureOrdersByDescendingRss) {
  const RssScan scan({{3, -35.0}, {6, -40.0}, {7, -48.0}, {2, -60.0}});
  EXPECT_EQ(make_signature(scan, SubsetKey{2, 3, 6, 7}), (Signature{3, 6, 7, 2}));
}

TEST(Signature, TiesBrokenByAscendingId) {
  const RssScan scan({{1, -50.0}, {2, -50.0}});
  EXPECT_EQ(make_signature(scan, SubsetKey{1, 2}), (Signature{1, 2}));
}

TEST(Signature, StrongestFirstOverManyAps) {
  // S1 > S3 > S7 > S2 > S6 > S4 > S5
  const RssScan scan(
      {{1, -31.0}, {3, -35.0}, {7, -40.0}, {2, -42.0}, {6, -50.0}, {4, -55.0}, {5, -70.0}});
  EXPECT_EQ(make_signature(scan, SubsetKey{1, 2, 3, 4, 5, 6, 7}), (Signature{1, 3, 7, 2, 6, 4, 5}));
}

TEST(Signature, UndetectedApInSubsetIsAnError) {
  const RssScan scan({{1, -50.0}, {2, kUndetectedDbm}});
  EXPECT_THROW(make_signature(scan, SubsetKey{1, 2}), Error);
}

TEST(Signature, MissingApIsAnError) {
  const RssScan scan({{1, -50.0}});
  EXPECT_THROW(make_signature(scan, SubsetKey{1, 2}), Error);
}

TEST(Signature, Validation) {
  EXPECT_THROW(Signature({1}), Error);
  EXPECT_THROW(Signature({1, 1}), Error);
  EXPECT_THROW(Signature({0, 2}), Error);
  EXPECT_THROW(SubsetKey({4, 4}), Error);
  EXPECT_EQ(SubsetKey({5, 2, 3}), (SubsetKey{2, 3, 5}));
}

TEST(SignatureText, FormatAndParse) {
  EXPECT_EQ(signature_to_text(Signature{3, 6, 7, 2}), "3-6-7-2");
  EXPECT_EQ(parse_signature("1-2"), (Signature{1, 2}));
  EXPECT_EQ(parse_signature("12-3-104"), (Signature{12, 3, 104}));
}

TEST(SignatureText, MalformedInputs) {
  for (const char* bad : {"1-1", "", "-", "1-", "-1", "1--2", "1-x", "1", "1-2 ", "0-1", "1-+2"}) {
    EXPECT_THROW(parse_signature(bad), ParseError) << bad;
  }
}

// Random signatures: permutation, order-only dependence and text round trip.
TEST(SignatureProperties, RandomScans) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> rss(-95.0, -30.0);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + rng() % 9;
    std::vector<ApId> ids(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<ApId>(1 + i * 3 + rng() % 3);
    RssScan scan;
    RssScan transformed;
    // Increasing affine maps that keep every value above the sentinel.
    const double a = 0.5 + static_cast<double>(rng() % 50) / 100.0;
    const double b = static_cast<double>(rng() % 20);
    for (ApId id : ids) {
      const double v = std::round(rss(rng));  // integers make ties common
      scan.set(id, v);
      transformed.set(id, a * v + b);
    }
    const SubsetKey subset(ids);
    const Signature sig = make_signature(scan, subset);

    std::vector<ApId> sorted(sig.ids().begin(), sig.ids().end());
    std::sort(sorted.begin(), sorted.end());
    EXPECT_TRUE(std::equal(sorted.begin(), sorted.end(), subset.ids().begin(), subset.ids().end()));
    EXPECT_EQ(make_signature(transformed, subset), sig);
    EXPECT_EQ(parse_signature(signature_to_text(sig)), sig);
    EXPECT_EQ(signature_to_text(parse_signature(signature_to_text(sig))), signature_to_text(sig));
  }
}

TEST(Deployment, Validation) {
  const Area area{10.0, 10.0};
  EXPECT_NO_THROW(ApDeployment(area, {{1, {0, 0}}, {2, {10, 10}}}));
  EXPECT_THROW(ApDeployment(area, {{1, {0, 0}}}), Error);
  EXPECT_THROW(ApDeployment(area, {{1, {0, 0}}, {1, {1, 1}}}), Error);
  EXPECT_THROW(ApDeployment(area, {{1, {0, 0}}, {2, {10.5, 1}}}), Error);
  EXPECT_THROW(ApDeployment(area, {{0, {0, 0}}, {2, {1, 1}}}), Error);
  EXPECT_THROW(ApDeployment(Area{0.0, 5.0}, {{1, {0, 0}}, {2, {0, 1}}}), Error);

  const ApDeployment d(area, {{7, {1, 1}}, {2, {3, 3}}});
  EXPECT_EQ(d.ids(), (std::vector<ApId>{2, 7}));
  EXPECT_TRUE(d.contains(7));
  EXPECT_FALSE(d.contains(3));
  EXPECT_THROW(d.at(3), Error);
}

TEST(RssScan, DetectedValuesSkipSentinel) {
  const RssScan scan({{1, -40.0}, {2, kUndetectedDbm}, {3, -99.5}});
  EXPECT_EQ(scan.detected_values().size(), 2u);
  EXPECT_FALSE(scan.detected(2));
  EXPECT_TRUE(scan.detected(3));
}

}  // namespace
}  // namespace apseq
