#include "lidarcap/behavior_tagging.hpp"

#include <array>

#include "lidarcap/error.hpp"

namespace lidarcap {

namespace {

constexpr std::array<LaneTag, 7> kLanes{LaneTag::Right,       LaneTag::Left,         LaneTag::Host,
                                        LaneTag::Oncoming,    LaneTag::LeftLateral, LaneTag::RightLateral,
                                        LaneTag::HostLateral};
constexpr std::array<NeighborMotion, 4> kMotions{NeighborMotion::Approach, NeighborMotion::Away,
                                                 NeighborMotion::Constant, NeighborMotion::Stationary};
constexpr std::array<ObjectClass, 5> kClasses{ObjectClass::Car, ObjectClass::Truck, ObjectClass::Bike,
                                              ObjectClass::Pedestrian, ObjectClass::Other};

bool open_interval(double x, double lo, double hi) noexcept { return lo < x && x < hi; }

}  // namespace

std::string_view to_string(LaneTag lane) noexcept {
  switch (lane) {
    case LaneTag::Right: return "right";
    case LaneTag::Left: return "left";
    case LaneTag::Host: return "host";
    case LaneTag::Oncoming: return "oncoming";
    case LaneTag::LeftLateral: return "leftlateral";
    case LaneTag::RightLateral: return "rightlateral";
    case LaneTag::HostLateral: return "hostlateral";
  }
  return "host";
}

std::string_view to_string(NeighborMotion motion) noexcept {
  switch (motion) {
    case NeighborMotion::Approach: return "approach";
    case NeighborMotion::Away: return "away";
    case NeighborMotion::Constant: return "constant";
    case NeighborMotion::Stationary: return "stationary";
  }
  return "constant";
}

std::string to_string(const ConcatenatedTag& tag) {
  std::string out(to_string(tag.object));
  out += '-';
  out += to_string(tag.lane);
  out += '-';
  out += to_string(tag.motion);
  return out;
}

std::optional<ConcatenatedTag> parse_concatenated_tag(std::string_view text) {
  auto first = text.find('-');
  if (first == std::string_view::npos) return std::nullopt;
  auto second = text.find('-', first + 1);
  if (second == std::string_view::npos || text.find('-', second + 1) != std::string_view::npos) return std::nullopt;
  auto obj = text.substr(0, first);
  auto lane = text.substr(first + 1, second - first - 1);
  auto motion = text.substr(second + 1);
  ConcatenatedTag tag;
  bool found = false;
  for (auto c : kClasses) {
    if (to_string(c) == obj) { tag.object = c; found = true; }
  }
  if (!found) return std::nullopt;
  found = false;
  for (auto l : kLanes) {
    if (to_string(l) == lane) { tag.lane = l; found = true; }
  }
  if (!found) return std::nullopt;
  found = false;
  for (auto m : kMotions) {
    if (to_string(m) == motion) { tag.motion = m; found = true; }
  }
  if (!found) return std::nullopt;
  return tag;
}

BaselineLane baseline_lane(double yaw, const NeighborConfig& cfg) noexcept {
  if (open_interval(yaw, cfg.oncoming_lower, cfg.oncoming_upper)) return BaselineLane::Oncoming;
  if (open_interval(yaw, cfg.lateral_lower, cfg.lateral_upper) ||
      open_interval(kTwoPi - yaw, cfg.lateral_lower, cfg.lateral_upper)) {
    return BaselineLane::Lateral;
  }
  return BaselineLane::Ongoing;
}

LaneTag lane_tag(double yaw, double y, const NeighborConfig& cfg) noexcept {
  switch (baseline_lane(yaw, cfg)) {
    case BaselineLane::Lateral:
      if (y > cfg.T_h) return LaneTag::RightLateral;
      if (y < -cfg.T_h) return LaneTag::LeftLateral;
      if (cfg.emit_host_lateral) return LaneTag::HostLateral;
      return y >= 0.0 ? LaneTag::RightLateral : LaneTag::LeftLateral;
    case BaselineLane::Ongoing:
      if (y > cfg.T_h) return LaneTag::Right;
      if (y < -cfg.T_h) return LaneTag::Left;
      return LaneTag::Host;
    case BaselineLane::Oncoming:
      break;
  }
  return LaneTag::Oncoming;
}

bool is_lateral(LaneTag lane) noexcept {
  return lane == LaneTag::LeftLateral || lane == LaneTag::RightLateral || lane == LaneTag::HostLateral;
}

NeighborMotion motion_tag(const KinematicSeries& kin, std::size_t i, LaneTag lane, double T_m,
                          bool stationary_now) noexcept {
  if (lane == LaneTag::Oncoming) return NeighborMotion::Approach;
  if (stationary_now) return NeighborMotion::Stationary;
  const std::size_t r = KinematicSeries::rate_index(i);
  const double rate = is_lateral(lane) ? kin.abs_lateral_rate[r] : kin.range_rate[r];
  if (rate < -T_m) return NeighborMotion::Approach;
  if (rate > T_m) return NeighborMotion::Away;
  return NeighborMotion::Constant;
}

std::vector<ConcatenatedTag> tag_track(std::span<const TrackSample> samples, const KinematicSeries& kin,
                                       ObjectClass cls, const NeighborConfig& cfg) {
  const auto& th = cfg.thresholds(cls);
  std::vector<ConcatenatedTag> tags;
  tags.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    LaneTag lane = lane_tag(samples[i], cfg);
    bool stationary_now = kin.compensated_speed[KinematicSeries::rate_index(i)] < th.T_s;
    tags.push_back({cls, lane, motion_tag(kin, i, lane, th.T_m, stationary_now)});
  }
  return tags;
}

UnifiedTagSequence unify(std::span<const ConcatenatedTag> tags, std::size_t min_dwell) {
  if (tags.empty()) throw Error(Errc::EmptySeries, "cannot unify an empty tag series");
  struct Run {
    ConcatenatedTag tag;
    std::size_t length;
  };
  std::vector<Run> runs;
  for (const auto& t : tags) {
    if (!runs.empty() && runs.back().tag == t) {
      ++runs.back().length;
    } else {
      runs.push_back({t, 1});
    }
  }

  std::vector<Run> kept;
  std::size_t leading = 0;
  for (const auto& run : runs) {
    if (run.length >= min_dwell) {
      kept.push_back({run.tag, run.length + leading});
      leading = 0;
    } else if (!kept.empty()) {
      kept.back().length += run.length;
    } else {
      leading += run.length;
    }
  }
  if (kept.empty()) kept.push_back({runs.front().tag, leading});

  UnifiedTagSequence out;
  for (const auto& run : kept) {
    if (out.empty() || !(out.back() == run.tag)) out.push_back(run.tag);
  }
  return out;
}

}  // namespace lidarcap
