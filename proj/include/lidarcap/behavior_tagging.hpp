#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lidarcap/domain.hpp"
#include "lidarcap/kinematics.hpp"

namespace lidarcap {

enum class BaselineLane { Oncoming, Lateral, Ongoing };
enum class LaneTag { Right, Left, Host, Oncoming, LeftLateral, RightLateral, HostLateral };
enum class NeighborMotion { Approach, Away, Constant, Stationary };

std::string_view to_string(LaneTag lane) noexcept;
std::string_view to_string(NeighborMotion motion) noexcept;

struct ConcatenatedTag {
  ObjectClass object = ObjectClass::Car;
  LaneTag lane = LaneTag::Host;
  NeighborMotion motion = NeighborMotion::Constant;
  friend bool operator==(const ConcatenatedTag&, const ConcatenatedTag&) = default;
};

// "object-lane-motion", e.g. "car-host-away" or "pedestrian-rightlateral-approach".
std::string to_string(const ConcatenatedTag& tag);
std::optional<ConcatenatedTag> parse_concatenated_tag(std::string_view text);

using UnifiedTagSequence = std::vector<ConcatenatedTag>;

BaselineLane baseline_lane(double yaw, const NeighborConfig& cfg) noexcept;

LaneTag lane_tag(double yaw, double y, const NeighborConfig& cfg) noexcept;
inline LaneTag lane_tag(const TrackSample& s, const NeighborConfig& cfg) noexcept {
  return lane_tag(s.yaw, s.center.y, cfg);
}

bool is_lateral(LaneTag lane) noexcept;

// Motion tag for sample `i` of `kin`. Lateral lanes classify on d|y|/dt, all
// other lanes on range rate, both against the dead band `T_m`. Oncoming
// neighbors are always Approach.
NeighborMotion motion_tag(const KinematicSeries& kin, std::size_t i, LaneTag lane, double T_m,
                          bool stationary_now) noexcept;

// Per-sample concatenated tags for one track (all samples, in order).
std::vector<ConcatenatedTag> tag_track(std::span<const TrackSample> samples, const KinematicSeries& kin,
                                       ObjectClass cls, const NeighborConfig& cfg);

// Runs shorter than `min_dwell` merge into the preceding run (the following run
// for a leading one); adjacent duplicates then collapse.
UnifiedTagSequence unify(std::span<const ConcatenatedTag> tags, std::size_t min_dwell = 1);

}  // namespace lidarcap
