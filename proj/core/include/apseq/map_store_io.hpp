#pragma once

// Map-store file format:
//
//   APSEQMAP v1
//   deploy
//   <deployment file contents>
//   grid <cell_size>
//   map <subset ids ascending>
//   region <signature> <centroid_x> <centroid_y> <accuracy> <radius> <cell_count>
//   ...
//
// Reals carry exactly six fractional digits. Cell memberships are not
// stored: the loader rebuilds every map from the deployment and grid and
// rejects the file unless the rebuilt regions agree with the region lines.

#include <filesystem>
#include <string>
#include <string_view>

#include "apseq/mapgen.hpp"

namespace apseq {

inline constexpr std::string_view kMapStoreHeader = "APSEQMAP v1";

// Throws Error when a coordinate or the cell size cannot be written exactly
// with six fractional digits (the loaded store would differ).
std::string format_map_store(const MapStore& store);
MapStore parse_map_store(std::string_view text);

void save_map_store(const MapStore& store, const std::filesystem::path& path);
MapStore load_map_store(const std::filesystem::path& path);

}  // namespace apseq
