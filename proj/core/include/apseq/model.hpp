#pragma once

// Domain types shared across the toolkit: AP deployments, location
// signatures (AP ids ordered strongest-first), AP subsets and RSS scans.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace apseq {

using ApId = std::uint32_t;

// RSS reported for an AP that was not detected in a window.
inline constexpr double kUndetectedDbm = -100.0;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

double distance(Point2 a, Point2 b);

// Axis-aligned rectangle with its lower-left corner at the origin.
struct Area {
  double width = 0.0;
  double height = 0.0;

  bool contains(Point2 p) const {
    return p.x >= 0.0 && p.y >= 0.0 && p.x <= width && p.y <= height;
  }

  friend bool operator==(const Area&, const Area&) = default;
};

struct AccessPoint {
  ApId id = 0;
  Point2 position;

  friend bool operator==(const AccessPoint&, const AccessPoint&) = default;
};

// A set of APs with known positions inside a rectangular area. APs are kept
// sorted by id.
class ApDeployment {
 public:
  ApDeployment() = default;
  // Throws Error unless ids are unique and positive, there are at least two
  // APs, the area is non-degenerate and every AP lies inside it.
  ApDeployment(Area area, std::vector<AccessPoint> aps);

  const Area& area() const { return area_; }
  std::span<const AccessPoint> aps() const { return aps_; }
  std::size_t size() const { return aps_.size(); }
  std::vector<ApId> ids() const;

  bool contains(ApId id) const;
  // Throws Error for unknown ids.
  const AccessPoint& at(ApId id) const;

  friend bool operator==(const ApDeployment&, const ApDeployment&) = default;

 private:
  Area area_;
  std::vector<AccessPoint> aps_;
};

// Sorted ascending list of k >= 2 distinct AP ids.
class SubsetKey {
 public:
  SubsetKey() = default;
  // Sorts the input; throws Error on duplicates or fewer than two ids.
  explicit SubsetKey(std::vector<ApId> ids);
  SubsetKey(std::initializer_list<ApId> ids) : SubsetKey(std::vector<ApId>(ids)) {}

  std::span<const ApId> ids() const { return ids_; }
  std::size_t size() const { return ids_.size(); }
  bool contains(ApId id) const;

  friend bool operator==(const SubsetKey&, const SubsetKey&) = default;
  friend auto operator<=>(const SubsetKey&, const SubsetKey&) = default;

 private:
  std::vector<ApId> ids_;
};

// Ordered list of distinct AP ids, strongest (closest) first.
class Signature {
 public:
  Signature() = default;
  // Throws Error on duplicates, zero ids or fewer than two ids.
  explicit Signature(std::vector<ApId> ids);
  Signature(std::initializer_list<ApId> ids) : Signature(std::vector<ApId>(ids)) {}

  std::span<const ApId> ids() const { return ids_; }
  std::size_t size() const { return ids_.size(); }

  // The unordered set of APs this signature ranks.
  SubsetKey subset() const;

  friend bool operator==(const Signature&, const Signature&) = default;
  friend auto operator<=>(const Signature&, const Signature&) = default;

 private:
  std::vector<ApId> ids_;
};

// Dash-separated text form, e.g. "3-6-7-2".
std::string signature_to_text(const Signature& sig);
// Exact inverse of signature_to_text; throws ParseError on malformed text.
Signature parse_signature(std::string_view text);

std::string subset_to_text(const SubsetKey& subset);

// Aggregated per-AP RSS in dBm. Undetected APs carry kUndetectedDbm.
class RssScan {
 public:
  RssScan() = default;
  explicit RssScan(std::map<ApId, double> values) : values_(std::move(values)) {}

  void set(ApId id, double rss_dbm) { values_[id] = rss_dbm; }
  const std::map<ApId, double>& values() const { return values_; }

  bool detected(ApId id) const;
  // APs with a non-sentinel value.
  std::map<ApId, double> detected_values() const;

  friend bool operator==(const RssScan&, const RssScan&) = default;

 private:
  std::map<ApId, double> values_;
};

// Orders the subset's APs by descending RSS, ties by ascending id.
// Throws Error when an AP is missing from the scan, undetected or non-finite.
Signature make_signature(const RssScan& scan, const SubsetKey& subset);

}  // namespace apseq
