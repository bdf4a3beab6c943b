#include "apseq/scan_io.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>
#include <vector>

#include "apseq/error.hpp"
#include "apseq/simkit.hpp"
#include "text_io.hpp"

namespace apseq {

std::string format_scan_window(const ScanWindow& window) {
  std::vector<std::tuple<double, ApId, double>> rows;
  for (const auto& [id, samples] : window.series) {
    for (const auto& s : samples) rows.emplace_back(s.t_s, id, s.rss_dbm);
  }
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
  });
  std::string out;
  out += kScanHeader;
  out += '\n';
  if (window.cadence_s > 0.0 && window.duration_s > 0.0) {
    out += "window " + detail::fixed6(window.duration_s) + ' ' + detail::fixed6(window.cadence_s) +
           '\n';
  }
  for (const auto& [t, id, rss] : rows) {
    out += "sample " + detail::fixed6(t) + ' ' + std::to_string(id) + ' ' + detail::fixed6(rss) +
           '\n';
  }
  return out;
}

ScanWindow parse_scan_window(std::string_view text, std::span<const ApId> expected_aps) {
  detail::LineReader reader(text);
  std::string_view line;
  if (!reader.next(line) || line != kScanHeader) {
    throw ParseError("expected '" + std::string(kScanHeader) + "' header");
  }
  ScanWindow window;
  for (ApId id : expected_aps) window.series[id];
  std::set<double> stamps;
  double last_t = -INFINITY;
  bool have_window = false;
  while (reader.next(line)) {
    const auto tok = detail::split_ws(line);
    if (tok[0] == "window") {
      if (tok.size() != 3) detail::parse_fail(reader, "expected 'window <duration_s> <cadence_s>'");
      window.duration_s = detail::parse_real(tok[1], "window duration");
      window.cadence_s = detail::parse_real(tok[2], "window cadence");
      if (!(window.cadence_s > 0.0) || window.duration_s < window.cadence_s) {
        detail::parse_fail(reader, "window needs duration >= cadence > 0");
      }
      have_window = true;
      continue;
    }
    if (tok[0] != "sample" || tok.size() != 4) {
      detail::parse_fail(reader, "expected 'sample <t_seconds> <ap_id> <rss_dbm>'");
    }
    const double t = detail::parse_real(tok[1], "timestamp");
    const auto id = detail::parse_uint(tok[2], "AP id");
    const double rss = detail::parse_real(tok[3], "RSS");
    if (id == 0 || id > 0xFFFFFFFFul) detail::parse_fail(reader, "AP id out of range");
    if (t < last_t) detail::parse_fail(reader, "timestamps must be non-decreasing");
    last_t = t;
    stamps.insert(t);
    window.series[static_cast<ApId>(id)].push_back({t, rss});
  }
  if (have_window) {
    window.instants = instant_count(window.duration_s, window.cadence_s);
    if (window.instants < stamps.size()) {
      throw ParseError("scan has more distinct timestamps than window instants");
    }
  } else {
    window.instants = stamps.size();
    if (stamps.size() >= 2) {
      window.cadence_s = (*stamps.rbegin() - *stamps.begin()) / static_cast<double>(stamps.size() - 1);
      window.duration_s = window.cadence_s * static_cast<double>(stamps.size());
    }
  }
  return window;
}

void write_scan_file(const ScanWindow& window, const std::filesystem::path& path) {
  detail::write_file(path, format_scan_window(window));
}

ScanWindow read_scan_file(const std::filesystem::path& path, std::span<const ApId> expected_aps) {
  return parse_scan_window(detail::read_file(path), expected_aps);
}

}  // namespace apseq
