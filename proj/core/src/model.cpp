#include "apseq/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include "apseq/error.hpp"

namespace apseq {

double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

ApDeployment::ApDeployment(Area area, std::vector<AccessPoint> aps)
    : area_(area), aps_(std::move(aps)) {
  if (!(area_.width > 0.0) || !(area_.height > 0.0) || !std::isfinite(area_.width) ||
      !std::isfinite(area_.height)) {
    throw Error("deployment area must have positive finite width and height");
  }
  if (aps_.size() < 2) throw Error("deployment needs at least 2 APs");
  std::sort(aps_.begin(), aps_.end(),
            [](const AccessPoint& a, const AccessPoint& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < aps_.size(); ++i) {
    const auto& ap = aps_[i];
    if (ap.id == 0) throw Error("AP ids must be positive");
    if (i > 0 && aps_[i - 1].id == ap.id) {
      throw Error("duplicate AP id " + std::to_string(ap.id));
    }
    if (!std::isfinite(ap.position.x) || !std::isfinite(ap.position.y) ||
        !area_.contains(ap.position)) {
      throw Error("AP " + std::to_string(ap.id) + " lies outside the deployment area");
    }
  }
}

std::vector<ApId> ApDeployment::ids() const {
  std::vector<ApId> out;
  out.reserve(aps_.size());
  for (const auto& ap : aps_) out.push_back(ap.id);
  return out;
}

bool ApDeployment::contains(ApId id) const {
  return std::binary_search(aps_.begin(), aps_.end(), AccessPoint{id, {}},
                            [](const AccessPoint& a, const AccessPoint& b) { return a.id < b.id; });
}

const AccessPoint& ApDeployment::at(ApId id) const {
  auto it = std::lower_bound(aps_.begin(), aps_.end(), id,
                             [](const AccessPoint& a, ApId v) { return a.id < v; });
  if (it == aps_.end() || it->id != id) {
    throw Error("unknown AP id " + std::to_string(id));
  }
  return *it;
}

SubsetKey::SubsetKey(std::vector<ApId> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  if (ids_.size() < 2) throw Error("an AP subset needs at least 2 ids");
  if (std::adjacent_find(ids_.begin(), ids_.end()) != ids_.end()) {
    throw Error("duplicate id in AP subset");
  }
}

bool SubsetKey::contains(ApId id) const {
  return std::binary_search(ids_.begin(), ids_.end(), id);
}

Signature::Signature(std::vector<ApId> ids) : ids_(std::move(ids)) {
  if (ids_.size() < 2) throw Error("a signature needs at least 2 ids");
  std::set<ApId> seen;
  for (ApId id : ids_) {
    if (id == 0) throw Error("AP ids must be positive");
    if (!seen.insert(id).second) throw Error("duplicate id in signature");
  }
}

SubsetKey Signature::subset() const { return SubsetKey(ids_); }

namespace {

std::string join_ids(std::span<const ApId> ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out.push_back('-');
    out += std::to_string(ids[i]);
  }
  return out;
}

}  // namespace

std::string signature_to_text(const Signature& sig) { return join_ids(sig.ids()); }

std::string subset_to_text(const SubsetKey& subset) { return join_ids(subset.ids()); }

Signature parse_signature(std::string_view text) {
  std::vector<ApId> ids;
  std::size_t start = 0;
  while (true) {
    const std::size_t dash = text.find('-', start);
    const std::string_view field =
        text.substr(start, dash == std::string_view::npos ? std::string_view::npos : dash - start);
    if (field.empty()) throw ParseError("malformed signature '" + std::string(text) + "'");
    ApId id = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), id);
    if (ec != std::errc{} || ptr != field.data() + field.size() || id == 0) {
      throw ParseError("malformed signature '" + std::string(text) + "'");
    }
    ids.push_back(id);
    if (dash == std::string_view::npos) break;
    start = dash + 1;
  }
  try {
    return Signature(std::move(ids));
  } catch (const Error& e) {
    throw ParseError("malformed signature '" + std::string(text) + "': " + e.what());
  }
}

bool RssScan::detected(ApId id) const {
  auto it = values_.find(id);
  return it != values_.end() && it->second != kUndetectedDbm;
}

std::map<ApId, double> RssScan::detected_values() const {
  std::map<ApId, double> out;
  for (const auto& [id, rss] : values_) {
    if (rss != kUndetectedDbm) out.emplace(id, rss);
  }
  return out;
}

Signature make_signature(const RssScan& scan, const SubsetKey& subset) {
  std::vector<std::pair<ApId, double>> entries;
  entries.reserve(subset.size());
  for (ApId id : subset.ids()) {
    auto it = scan.values().find(id);
    if (it == scan.values().end()) {
      throw Error("no RSS entry for AP " + std::to_string(id));
    }
    if (it->second == kUndetectedDbm) throw Error("undetected AP in subset");
    if (!std::isfinite(it->second)) {
      throw Error("non-finite RSS for AP " + std::to_string(id));
    }
    entries.emplace_back(id, it->second);
  }
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::vector<ApId> ids;
  ids.reserve(entries.size());
  for (const auto& e : entries) ids.push_back(e.first);
  return Signature(std::move(ids));
}

}  // namespace apseq
