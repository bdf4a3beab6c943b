#include "apseq/map_store_io.hpp"

#include <algorithm>
#include <vector>

#include "apseq/error.hpp"
#include "deployment_text.hpp"
#include "text_io.hpp"

namespace apseq {

namespace {

using detail::fixed6;

std::string region_line(const Region& r) {
  return "region " + signature_to_text(r.signature) + ' ' + fixed6(r.centroid.x) + ' ' +
         fixed6(r.centroid.y) + ' ' + fixed6(r.accuracy) + ' ' + fixed6(r.radius) + ' ' +
         std::to_string(r.cells.size());
}

void require_representable(const MapStore& store) {
  auto check = [](double v, const char* what) {
    if (!detail::representable6(v)) {
      throw Error(std::string(what) + " " + fixed6(v) +
                  " is not exactly representable with 6 fractional digits");
    }
  };
  check(store.deployment.area().width, "area width");
  check(store.deployment.area().height, "area height");
  for (const auto& ap : store.deployment.aps()) {
    check(ap.position.x, "AP x");
    check(ap.position.y, "AP y");
  }
  check(store.grid.cell_size(), "cell size");
}

struct RegionRecord {
  std::string line;  // normalised text, compared against the rebuilt region
  std::size_t at_line = 0;
};

}  // namespace

std::string format_map_store(const MapStore& store) {
  require_representable(store);
  std::string out;
  out += kMapStoreHeader;
  out += "\ndeploy\n";
  detail::append_deployment(out, store.deployment);
  out += "grid " + fixed6(store.grid.cell_size()) + '\n';
  for (const auto& [subset, map] : store.maps) {
    out += "map";
    for (ApId id : subset.ids()) out += ' ' + std::to_string(id);
    out += '\n';
    for (const auto& [sig, region] : map.regions) {
      out += region_line(region);
      out += '\n';
    }
  }
  return out;
}

MapStore parse_map_store(std::string_view text) {
  detail::LineReader reader(text);
  std::string_view line;
  if (!reader.next(line)) throw ParseError("empty map-store file");
  if (line != kMapStoreHeader) {
    if (line.starts_with("APSEQMAP ")) {
      throw ParseError("unsupported version '" + std::string(line.substr(9)) + "'");
    }
    throw ParseError("not a map-store file");
  }
  if (!reader.next(line) || line != "deploy") detail::parse_fail(reader, "expected 'deploy'");
  const ApDeployment deployment = detail::read_deployment(reader);

  if (!reader.next(line)) detail::parse_fail(reader, "missing 'grid' line");
  auto tok = detail::split_ws(line);
  if (tok.size() != 2 || tok[0] != "grid") detail::parse_fail(reader, "expected 'grid <cell_size>'");
  const double cell_size = detail::parse_real(tok[1], "cell size");
  GridSpec grid;
  try {
    grid = GridSpec(deployment.area(), cell_size);
  } catch (const Error& e) {
    throw ParseError(e.what());
  }

  // Collect the map blocks as text first.
  std::vector<std::pair<SubsetKey, std::vector<RegionRecord>>> blocks;
  while (reader.next(line)) {
    tok = detail::split_ws(line);
    if (tok[0] == "map") {
      std::vector<ApId> ids;
      for (std::size_t i = 1; i < tok.size(); ++i) {
        ids.push_back(static_cast<ApId>(detail::parse_uint(tok[i], "AP id")));
      }
      if (!std::is_sorted(ids.begin(), ids.end())) {
        detail::parse_fail(reader, "map ids must be ascending");
      }
      try {
        blocks.emplace_back(SubsetKey(std::move(ids)), std::vector<RegionRecord>{});
      } catch (const Error& e) {
        detail::parse_fail(reader, e.what());
      }
    } else if (tok[0] == "region") {
      if (blocks.empty()) detail::parse_fail(reader, "region line before any map line");
      if (tok.size() != 7) detail::parse_fail(reader, "region line needs 6 fields");
      // Re-render the fields so formatting differences do not matter.
      const Signature sig = parse_signature(tok[1]);
      std::string norm = "region " + signature_to_text(sig);
      for (std::size_t i = 2; i < 6; ++i) norm += ' ' + fixed6(detail::parse_real(tok[i], "real"));
      norm += ' ' + std::to_string(detail::parse_uint(tok[6], "cell count"));
      blocks.back().second.push_back({std::move(norm), reader.line_number()});
    } else {
      detail::parse_fail(reader, "unexpected line '" + std::string(line) + "'");
    }
  }
  if (blocks.empty()) throw ParseError("map-store file has no maps");

  const std::size_t k = blocks.front().first.size();
  const auto expected = enumerate_ap_subsets(deployment.ids(), k);
  if (blocks.size() != expected.size()) {
    throw ParseError("shape mismatch: " + std::to_string(blocks.size()) + " maps, expected " +
                     std::to_string(expected.size()) + " for k=" + std::to_string(k));
  }

  MapStore store{deployment, grid, k, {}};
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto& [subset, records] = blocks[i];
    if (subset != expected[i]) {
      throw ParseError("shape mismatch: map " + subset_to_text(subset) + " out of order or unknown");
    }
    FingerprintMap map = build_fingerprint_map(deployment, subset, grid);
    if (records.size() != map.regions.size()) {
      throw ParseError("region count mismatch in map " + subset_to_text(subset) + ": file has " +
                       std::to_string(records.size()) + ", rebuilt map has " +
                       std::to_string(map.regions.size()));
    }
    std::size_t j = 0;
    for (const auto& [sig, region] : map.regions) {
      if (records[j].line != region_line(region)) {
        throw ParseError("line " + std::to_string(records[j].at_line) +
                         ": checksum mismatch, region does not match the rebuilt map");
      }
      ++j;
    }
    store.maps.emplace(subset, std::move(map));
  }
  return store;
}

void save_map_store(const MapStore& store, const std::filesystem::path& path) {
  detail::write_file(path, format_map_store(store));
}

MapStore load_map_store(const std::filesystem::path& path) {
  return parse_map_store(detail::read_file(path));
}

}  // namespace apseq
