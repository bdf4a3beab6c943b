#pragma once

// Synthetic RSS source: log-distance path loss with optional Gaussian
// shadowing. At zero shadowing the RSS order of the APs equals their
// distance order, which is the assumption the fingerprint maps rely on.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "apseq/localize.hpp"
#include "apseq/model.hpp"

namespace apseq {

struct PropagationParams {
  double p0_dbm = -30.0;            // RSS at the reference distance
  double gamma = 2.5;               // path-loss exponent
  double d0_m = 1.0;                // reference distance
  double sigma_db = 0.0;            // shadowing standard deviation
  double detect_floor_dbm = -95.0;  // weaker samples are not detected
  bool integer_rss = false;         // round each sample to whole dBm
  std::uint64_t seed = 0;

  // Throws Error when a field is out of range.
  void validate() const;

  friend bool operator==(const PropagationParams&, const PropagationParams&) = default;
};

// p0 - 10 gamma log10(max(d, d0) / d0) + noise, clamped above at p0.
// Returns nullopt below the detection floor.
std::optional<double> rss_at(Point2 point, const AccessPoint& ap, const PropagationParams& params,
                             double noise_draw);

// floor(duration / cadence) instants; shadowing drawn per (instant, AP) from a
// generator seeded with params.seed. Draws happen in a fixed order, so a
// shorter window is a prefix of a longer one with the same seed.
ScanWindow synth_window(Point2 point, const ApDeployment& deployment,
                        const PropagationParams& params, double duration_s, double cadence_s);

std::size_t instant_count(double duration_s, double cadence_s);

struct TestPointMode {
  enum class Kind { UniformGrid, Random };

  Kind kind = Kind::Random;
  std::size_t count = 1;  // points per side for UniformGrid, total for Random
  std::uint64_t seed = 0;

  static TestPointMode uniform_grid(std::size_t per_side) {
    return {Kind::UniformGrid, per_side, 0};
  }
  static TestPointMode random(std::size_t count, std::uint64_t seed) {
    return {Kind::Random, count, seed};
  }
};

// Points strictly inside the area. Throws Error for count == 0.
std::vector<Point2> gen_test_points(const Area& area, const TestPointMode& mode);

// Independent substream seed for (stream, index) under one root seed.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream, std::uint64_t index);

}  // namespace apseq
