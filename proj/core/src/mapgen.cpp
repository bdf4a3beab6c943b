#include "apseq/mapgen.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "apseq/error.hpp"

namespace apseq {

namespace {

// Guards against cols = 301 for 60 / 0.2 = 300.00000000000006.
constexpr double kCeilSlack = 1e-9;

std::size_t cells_along(double extent, double cell_size) {
  const double q = extent / cell_size;
  return static_cast<std::size_t>(std::max(1.0, std::ceil(q - kCeilSlack)));
}

}  // namespace

GridSpec::GridSpec(const Area& area, double cell_size) : cell_size_(cell_size) {
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) {
    throw Error("grid cell size must be positive");
  }
  if (!(area.width > 0.0) || !(area.height > 0.0)) {
    throw Error("grid area must have positive width and height");
  }
  cols_ = cells_along(area.width, cell_size);
  rows_ = cells_along(area.height, cell_size);
  if (cols_ * rows_ > 0xFFFFFFFFull) throw Error("grid has too many cells");
}

Point2 GridSpec::cell_center(std::size_t index) const {
  const std::size_t col = index % cols_;
  const std::size_t row = index / cols_;
  return {(static_cast<double>(col) + 0.5) * cell_size_,
          (static_cast<double>(row) + 0.5) * cell_size_};
}

std::size_t GridSpec::cell_of(Point2 p) const {
  auto clamp_index = [this](double v, std::size_t n) {
    const double f = std::floor(v / cell_size_);
    if (!(f > 0.0)) return std::size_t{0};
    return std::min(static_cast<std::size_t>(f), n - 1);
  };
  return clamp_index(p.y, rows_) * cols_ + clamp_index(p.x, cols_);
}

const Region* FingerprintMap::find(const Signature& sig) const {
  auto it = regions.find(sig);
  return it == regions.end() ? nullptr : &it->second;
}

const FingerprintMap& MapStore::map_for(const SubsetKey& subset) const {
  auto it = maps.find(subset);
  if (it == maps.end()) {
    throw Error("no fingerprint map for AP subset " + subset_to_text(subset));
  }
  return it->second;
}

const Region& MapStore::region_at(const SubsetKey& subset, Point2 p) const {
  const FingerprintMap& map = map_for(subset);
  const Signature sig = cell_signature(grid.cell_center(grid.cell_of(p)), subset, deployment);
  const Region* region = map.find(sig);
  if (region == nullptr) throw Error("grid cell has no region (corrupt map)");
  return *region;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<SubsetKey> enumerate_ap_subsets(std::span<const ApId> ids, std::size_t k) {
  std::vector<ApId> sorted(ids.begin(), ids.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  if (k < 2 || k > n) {
    throw Error("subset size k=" + std::to_string(k) + " outside [2, " + std::to_string(n) + "]");
  }
  std::vector<SubsetKey> out;
  out.reserve(binomial(n, k));
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    std::vector<ApId> chosen(k);
    for (std::size_t i = 0; i < k; ++i) chosen[i] = sorted[idx[i]];
    out.emplace_back(std::move(chosen));
    // Advance to the next combination in lexicographic order.
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

std::vector<SubsetKey> enumerate_ap_subsets(std::size_t n, std::size_t k) {
  std::vector<ApId> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<ApId>(i + 1);
  return enumerate_ap_subsets(ids, k);
}

namespace {

struct SubsetGeometry {
  std::vector<ApId> ids;  // ascending
  std::vector<Point2> positions;
};

SubsetGeometry resolve(const SubsetKey& subset, const ApDeployment& deployment) {
  SubsetGeometry g;
  for (ApId id : subset.ids()) {
    g.ids.push_back(id);
    g.positions.push_back(deployment.at(id).position);
  }
  return g;
}

// Writes the distance order of the subset's APs at p into `order` as indices
// into the (ascending-id) subset. Equal distances keep the lower index first.
void distance_order(Point2 p, const SubsetGeometry& g, std::vector<double>& d2,
                    std::vector<std::uint8_t>& order) {
  const std::size_t k = g.positions.size();
  for (std::size_t i = 0; i < k; ++i) {
    const double dx = p.x - g.positions[i].x;
    const double dy = p.y - g.positions[i].y;
    d2[i] = dx * dx + dy * dy;
  }
  for (std::size_t i = 0; i < k; ++i) {
    const auto cur = static_cast<std::uint8_t>(i);
    std::size_t j = i;
    while (j > 0 && d2[order[j - 1]] > d2[cur]) {
      order[j] = order[j - 1];
      --j;
    }
    order[j] = cur;
  }
}

Signature to_signature(const std::vector<std::uint8_t>& order, const SubsetGeometry& g) {
  std::vector<ApId> ids;
  ids.reserve(order.size());
  for (auto i : order) ids.push_back(g.ids[i]);
  return Signature(std::move(ids));
}

}  // namespace

Signature cell_signature(Point2 point, const SubsetKey& subset, const ApDeployment& deployment) {
  const SubsetGeometry g = resolve(subset, deployment);
  std::vector<double> d2(g.ids.size());
  std::vector<std::uint8_t> order(g.ids.size());
  distance_order(point, g, d2, order);
  return to_signature(order, g);
}

FingerprintMap build_fingerprint_map(const ApDeployment& deployment, const SubsetKey& subset,
                                     const GridSpec& grid) {
  if (subset.size() > 255) throw Error("AP subsets larger than 255 are not supported");
  const SubsetGeometry g = resolve(subset, deployment);
  const std::size_t k = g.ids.size();
  const std::size_t n_cells = grid.cell_count();

  // Label cells with a dense region index. Row-major scans visit long runs of
  // one label, so the previous cell's label is checked before the lookup.
  std::map<std::vector<std::uint8_t>, std::uint32_t> label_of;
  std::vector<std::vector<std::uint8_t>> orders;
  std::vector<std::uint32_t> labels(n_cells);
  std::vector<double> d2(k);
  std::vector<std::uint8_t> order(k);
  std::uint32_t last = 0;
  for (std::size_t c = 0; c < n_cells; ++c) {
    distance_order(grid.cell_center(c), g, d2, order);
    if (!orders.empty() && orders[last] == order) {
      labels[c] = last;
      continue;
    }
    auto [it, inserted] = label_of.try_emplace(order, static_cast<std::uint32_t>(orders.size()));
    if (inserted) orders.push_back(order);
    last = it->second;
    labels[c] = last;
  }

  std::vector<std::vector<std::uint32_t>> members(orders.size());
  for (std::size_t c = 0; c < n_cells; ++c) {
    members[labels[c]].push_back(static_cast<std::uint32_t>(c));
  }

  FingerprintMap map{subset, grid, {}};
  for (std::size_t r = 0; r < orders.size(); ++r) {
    Region region;
    region.signature = to_signature(orders[r], g);
    region.cells = std::move(members[r]);
    double sx = 0.0;
    double sy = 0.0;
    for (auto c : region.cells) {
      const Point2 p = grid.cell_center(c);
      sx += p.x;
      sy += p.y;
    }
    const auto count = static_cast<double>(region.cells.size());
    region.centroid = {sx / count, sy / count};
    double sum = 0.0;
    double worst = 0.0;
    for (auto c : region.cells) {
      const double d = distance(grid.cell_center(c), region.centroid);
      sum += d;
      worst = std::max(worst, d);
    }
    region.accuracy = sum / count;
    region.radius = worst;
    Signature key = region.signature;
    map.regions.emplace(std::move(key), std::move(region));
  }
  return map;
}

MapStore build_map_store(const ApDeployment& deployment, std::size_t k, const GridSpec& grid,
                         BuildStats* stats) {
  const auto start = std::chrono::steady_clock::now();
  MapStore store{deployment, grid, k, {}};
  std::size_t regions = 0;
  for (auto& subset : enumerate_ap_subsets(deployment.ids(), k)) {
    FingerprintMap map = build_fingerprint_map(deployment, subset, grid);
    regions += map.regions.size();
    store.maps.emplace(std::move(subset), std::move(map));
  }
  if (stats != nullptr) {
    stats->build_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    stats->maps = store.maps.size();
    stats->regions = regions;
  }
  return store;
}

}  // namespace apseq
