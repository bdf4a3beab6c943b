#include "apseq/simkit.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "apseq/error.hpp"

namespace apseq {

void PropagationParams::validate() const {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw Error("gamma must be positive");
  if (!(d0_m > 0.0) || !std::isfinite(d0_m)) throw Error("d0_m must be positive");
  if (!(sigma_db >= 0.0) || !std::isfinite(sigma_db)) throw Error("sigma_db must be non-negative");
  if (!(detect_floor_dbm > kUndetectedDbm) || !std::isfinite(detect_floor_dbm)) {
    throw Error("detect_floor_dbm must be above -100");
  }
  if (!std::isfinite(p0_dbm)) throw Error("p0_dbm must be finite");
}

std::optional<double> rss_at(Point2 point, const AccessPoint& ap, const PropagationParams& params,
                             double noise_draw) {
  const double d = std::max(distance(point, ap.position), params.d0_m);
  double rss = params.p0_dbm - 10.0 * params.gamma * std::log10(d / params.d0_m) + noise_draw;
  rss = std::min(rss, params.p0_dbm);
  if (params.integer_rss) rss = std::round(rss);
  if (rss < params.detect_floor_dbm) return std::nullopt;
  return rss;
}

std::size_t instant_count(double duration_s, double cadence_s) {
  return static_cast<std::size_t>(std::floor(duration_s / cadence_s + 1e-9));
}

ScanWindow synth_window(Point2 point, const ApDeployment& deployment,
                        const PropagationParams& params, double duration_s, double cadence_s) {
  params.validate();
  if (!(cadence_s > 0.0) || !(duration_s >= cadence_s)) {
    throw Error("window needs duration >= cadence > 0");
  }
  ScanWindow window;
  window.cadence_s = cadence_s;
  window.duration_s = duration_s;
  window.instants = instant_count(duration_s, cadence_s);
  for (const auto& ap : deployment.aps()) window.series[ap.id];

  std::mt19937_64 rng(params.seed);
  std::normal_distribution<double> shadowing(0.0, 1.0);
  for (std::size_t i = 0; i < window.instants; ++i) {
    const double t = static_cast<double>(i) * cadence_s;
    for (const auto& ap : deployment.aps()) {
      const double noise = params.sigma_db * shadowing(rng);
      if (auto rss = rss_at(point, ap, params, noise)) {
        window.series[ap.id].push_back({t, *rss});
      }
    }
  }
  return window;
}

std::vector<Point2> gen_test_points(const Area& area, const TestPointMode& mode) {
  if (mode.count == 0) throw Error("test point count must be at least 1");
  std::vector<Point2> points;
  if (mode.kind == TestPointMode::Kind::UniformGrid) {
    const auto n = static_cast<double>(mode.count);
    for (std::size_t row = 0; row < mode.count; ++row) {
      for (std::size_t col = 0; col < mode.count; ++col) {
        points.push_back({(static_cast<double>(col) + 0.5) * area.width / n,
                          (static_cast<double>(row) + 0.5) * area.height / n});
      }
    }
    return points;
  }
  std::mt19937_64 rng(mode.seed);
  std::uniform_real_distribution<double> ux(0.0, area.width);
  std::uniform_real_distribution<double> uy(0.0, area.height);
  while (points.size() < mode.count) {
    const Point2 p{ux(rng), uy(rng)};
    if (p.x > 0.0 && p.y > 0.0 && p.x < area.width && p.y < area.height) points.push_back(p);
  }
  return points;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream, std::uint64_t index) {
  return splitmix64(splitmix64(splitmix64(root) ^ stream) ^ index);
}

}  // namespace apseq
