#pragma once

#include <cstddef>
#include <map>
#include <variant>
#include <vector>

#include "apseq/apselect.hpp"
#include "apseq/mapgen.hpp"
#include "apseq/model.hpp"

namespace apseq {

struct RssSample {
  double t_s = 0.0;
  double rss_dbm = 0.0;

  friend bool operator==(const RssSample&, const RssSample&) = default;
};

// Raw measurements over one observation window. `series` has an entry for
// every AP of interest; an AP that was never detected has an empty series.
struct ScanWindow {
  std::map<ApId, std::vector<RssSample>> series;
  std::size_t instants = 0;  // sampling instants in the window
  double cadence_s = 0.0;
  double duration_s = 0.0;

  friend bool operator==(const ScanWindow&, const ScanWindow&) = default;
};

inline constexpr double kMinDetectionRatio = 0.1;

// Mean dBm over the samples in which each AP was detected. APs detected in
// fewer than 10% of the instants get kUndetectedDbm. Throws Error for an
// empty window or when no AP qualifies ("no signal").
RssScan aggregate_scan(const ScanWindow& window);

struct Estimate {
  Point2 position;  // centroid of the matched region
  Signature signature;
  SubsetKey subset;
  double region_accuracy = 0.0;
  double region_radius = 0.0;
  std::size_t candidates_tried = 0;
  std::size_t k_used = 0;

  friend bool operator==(const Estimate&, const Estimate&) = default;
};

struct MissedDetection {
  std::size_t candidates_tried = 0;
  std::size_t k_used = 0;

  friend bool operator==(const MissedDetection&, const MissedDetection&) = default;
};

using LocalizationOutcome = std::variant<Estimate, MissedDetection>;

// Map stores for several k over one deployment.
class StoreCatalog {
 public:
  StoreCatalog() = default;

  // Throws Error when a store for the same k exists or the deployment differs.
  void add(MapStore store);
  const MapStore* find(std::size_t k) const;
  std::vector<std::size_t> ks() const;

 private:
  std::map<std::size_t, MapStore> stores_;
};

struct LocalizeOptions {
  KMeansOptions kmeans;
};

// Exact lookup of `sig` in `map`; nullptr when the signature has no region.
// Throws Error when sig ranks a different AP set than the map covers.
const Region* match_signature(const Signature& sig, const FingerprintMap& map);

// Drops undetected APs (and APs unknown to the deployment), clusters the rest
// into k groups and tries the candidate AP sets in order; the first whose
// signature has a region wins. With fewer than k detected APs, k shrinks to
// the detected count. Throws Error "insufficient APs" below two detected APs
// and "store/k mismatch" when no store exists for the k actually used.
LocalizationOutcome localize(const RssScan& scan, const StoreCatalog& stores, std::size_t k,
                             const LocalizeOptions& options = {});
LocalizationOutcome localize(const RssScan& scan, const MapStore& store, std::size_t k,
                             const LocalizeOptions& options = {});

}  // namespace apseq
