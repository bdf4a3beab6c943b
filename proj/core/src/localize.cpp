#include "apseq/localize.hpp"

#include <functional>

#include "apseq/error.hpp"

namespace apseq {

RssScan aggregate_scan(const ScanWindow& window) {
  if (window.instants == 0 || window.series.empty()) throw Error("empty scan window");
  RssScan scan;
  bool any = false;
  for (const auto& [id, samples] : window.series) {
    if (samples.empty() || samples.size() * 10 < window.instants) {
      scan.set(id, kUndetectedDbm);
      continue;
    }
    // Incremental mean: constant input yields exactly that constant.
    double mean = 0.0;
    std::size_t n = 0;
    for (const auto& s : samples) {
      ++n;
      mean += (s.rss_dbm - mean) / static_cast<double>(n);
    }
    scan.set(id, mean);
    any = true;
  }
  if (!any) throw Error("no signal");
  return scan;
}

void StoreCatalog::add(MapStore store) {
  if (!stores_.empty() && !(stores_.begin()->second.deployment == store.deployment)) {
    throw Error("all stores in a catalog must share one deployment");
  }
  const std::size_t k = store.k;
  if (!stores_.emplace(k, std::move(store)).second) {
    throw Error("catalog already holds a store for k=" + std::to_string(k));
  }
}

const MapStore* StoreCatalog::find(std::size_t k) const {
  auto it = stores_.find(k);
  return it == stores_.end() ? nullptr : &it->second;
}

std::vector<std::size_t> StoreCatalog::ks() const {
  std::vector<std::size_t> out;
  for (const auto& [k, s] : stores_) out.push_back(k);
  return out;
}

const Region* match_signature(const Signature& sig, const FingerprintMap& map) {
  if (sig.subset() != map.subset) {
    throw Error("signature " + signature_to_text(sig) + " does not rank the map's AP subset " +
                subset_to_text(map.subset));
  }
  return map.find(sig);
}

namespace {

using StoreLookup = std::function<const MapStore*(std::size_t)>;

const MapStore& require_store(const StoreLookup& lookup, std::size_t k) {
  const MapStore* store = lookup(k);
  if (store == nullptr) throw Error("store/k mismatch: no map store for k=" + std::to_string(k));
  return *store;
}

LocalizationOutcome localize_with(const RssScan& scan, const StoreLookup& lookup, std::size_t k,
                                  const LocalizeOptions& options) {
  if (k < 2) throw Error("k must be at least 2");
  std::map<ApId, double> detected = scan.detected_values();
  if (detected.size() < 2) throw Error("insufficient APs: fewer than 2 detected");
  std::size_t k_used = std::min(k, detected.size());
  const MapStore* store = &require_store(lookup, k_used);
  std::erase_if(detected, [&](const auto& e) { return !store->deployment.contains(e.first); });
  if (detected.size() < 2) throw Error("insufficient APs: fewer than 2 detected");
  if (detected.size() < k_used) {
    k_used = detected.size();
    store = &require_store(lookup, k_used);
  }

  KMeansOptions km = options.kmeans;
  Clustering clustering;
  try {
    clustering = kmeans_1d(detected, k_used, km);
  } catch (const DegenerateClusteringError& e) {
    // Too many equal RSS values for k clusters; use the largest feasible k.
    if (e.max_feasible_k() < 2) throw Error("insufficient APs: fewer than 2 distinct RSS values");
    k_used = e.max_feasible_k();
    store = &require_store(lookup, k_used);
    km.seed_ranks.clear();
    clustering = kmeans_1d(detected, k_used, km);
  }

  std::size_t tried = 0;
  for (const CandidateSet& candidate : generate_candidate_sets(clustering)) {
    ++tried;
    const Signature sig = make_signature(scan, candidate.subset);
    const Region* region = match_signature(sig, store->map_for(candidate.subset));
    if (region != nullptr) {
      return Estimate{region->centroid, sig,           candidate.subset, region->accuracy,
                      region->radius,   tried,         k_used};
    }
  }
  return MissedDetection{tried, k_used};
}

}  // namespace

LocalizationOutcome localize(const RssScan& scan, const StoreCatalog& stores, std::size_t k,
                             const LocalizeOptions& options) {
  return localize_with(scan, [&](std::size_t kk) { return stores.find(kk); }, k, options);
}

LocalizationOutcome localize(const RssScan& scan, const MapStore& store, std::size_t k,
                             const LocalizeOptions& options) {
  return localize_with(
      scan, [&](std::size_t kk) { return kk == store.k ? &store : nullptr; }, k, options);
}

}  // namespace apseq
