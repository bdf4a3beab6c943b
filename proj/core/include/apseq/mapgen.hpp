#pragma once

// Offline fingerprint-map construction.
//
// For a subset of APs, every grid cell is labelled with the order of the
// subset's APs by ascending distance from the cell center. Under any
// propagation model where RSS strictly decreases with distance this is the
// RSS order a receiver would observe, so the set of cells sharing a label is
// the region that label identifies. No measurements are needed, only the AP
// positions.

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "apseq/model.hpp"

namespace apseq {

inline constexpr double kDefaultCellSize = 0.2;

// Square-cell raster over a deployment area. Cell (col, row) has index
// row * cols + col and center ((col + 0.5) * cell_size, (row + 0.5) * cell_size).
class GridSpec {
 public:
  GridSpec() = default;
  // cols = ceil(width / cell_size), rows = ceil(height / cell_size).
  GridSpec(const Area& area, double cell_size);

  double cell_size() const { return cell_size_; }
  std::size_t cols() const { return cols_; }
  std::size_t rows() const { return rows_; }
  std::size_t cell_count() const { return cols_ * rows_; }

  Point2 cell_center(std::size_t index) const;
  // Cell containing p; points outside the raster clamp to the nearest cell.
  std::size_t cell_of(Point2 p) const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  double cell_size_ = kDefaultCellSize;
  std::size_t cols_ = 0;
  std::size_t rows_ = 0;
};

struct Region {
  Signature signature;
  std::vector<std::uint32_t> cells;  // ascending cell indices
  Point2 centroid;                   // mean of member cell centers
  double accuracy = 0.0;             // mean cell-center distance to centroid
  double radius = 0.0;               // max cell-center distance to centroid

  friend bool operator==(const Region&, const Region&) = default;
};

struct FingerprintMap {
  SubsetKey subset;
  GridSpec grid;
  std::map<Signature, Region> regions;

  const Region* find(const Signature& sig) const;

  friend bool operator==(const FingerprintMap&, const FingerprintMap&) = default;
};

// One fingerprint map per k-subset of the deployment's APs.
struct MapStore {
  ApDeployment deployment;
  GridSpec grid;
  std::size_t k = 0;
  std::map<SubsetKey, FingerprintMap> maps;

  // Throws Error when the subset has no map in this store.
  const FingerprintMap& map_for(const SubsetKey& subset) const;
  // Region whose cells contain p in the map for `subset`.
  const Region& region_at(const SubsetKey& subset, Point2 p) const;

  friend bool operator==(const MapStore&, const MapStore&) = default;
};

struct BuildStats {
  double build_ms = 0.0;
  std::size_t maps = 0;
  std::size_t regions = 0;
};

std::size_t binomial(std::size_t n, std::size_t k);

// All k-subsets of `ids` in lexicographic order. Throws Error unless 2 <= k <= ids.size().
std::vector<SubsetKey> enumerate_ap_subsets(std::span<const ApId> ids, std::size_t k);
// Same, over ids 1..n.
std::vector<SubsetKey> enumerate_ap_subsets(std::size_t n, std::size_t k);

// The subset's APs sorted by ascending distance to `point`; ties by ascending id.
Signature cell_signature(Point2 point, const SubsetKey& subset, const ApDeployment& deployment);

FingerprintMap build_fingerprint_map(const ApDeployment& deployment, const SubsetKey& subset,
                                     const GridSpec& grid);

MapStore build_map_store(const ApDeployment& deployment, std::size_t k, const GridSpec& grid,
                         BuildStats* stats = nullptr);

}  // namespace apseq
