#pragma once

// Scan file format:
//
//   APSEQ-SCAN v1
//   window <duration_s> <cadence_s>      (optional)
//   sample <t_seconds> <ap_id> <rss_dbm>
//   ...
//
// Without a window line the instant count is the number of distinct
// timestamps.

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "apseq/localize.hpp"

namespace apseq {

inline constexpr std::string_view kScanHeader = "APSEQ-SCAN v1";

std::string format_scan_window(const ScanWindow& window);
// `expected_aps` get an (empty) series even when they have no samples.
ScanWindow parse_scan_window(std::string_view text, std::span<const ApId> expected_aps = {});

void write_scan_file(const ScanWindow& window, const std::filesystem::path& path);
ScanWindow read_scan_file(const std::filesystem::path& path,
                          std::span<const ApId> expected_aps = {});

}  // namespace apseq
