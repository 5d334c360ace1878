#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lidarcap/domain.hpp"

namespace lidarcap {

enum class HostMotion { Stationary, Accelerating, Decelerating, Cruising };
enum class HostDirection { SteeringLeft, SteeringRight, Straight };

struct HostTag {
  HostMotion motion = HostMotion::Cruising;
  HostDirection direction = HostDirection::Straight;
  friend bool operator==(const HostTag&, const HostTag&) = default;
};

// Inclusive frame range over which the host tag is constant.
struct ClipSegment {
  std::size_t frame_start = 0;
  std::size_t frame_end = 0;
  HostTag tag;

  std::size_t length() const noexcept { return frame_end - frame_start + 1; }
  friend bool operator==(const ClipSegment&, const ClipSegment&) = default;
};

HostMotion tag_host_motion(double v, double dv_dt, const HostTagConfig& cfg) noexcept;
HostDirection tag_host_direction(double yaw_rate, const HostTagConfig& cfg) noexcept;

// One tag per telemetry sample. Acceleration is the finite-difference rate
// stamped at the later sample; the first sample borrows the first rate.
// A stationary host is always tagged Straight.
std::vector<HostTag> tag_host_frames(const EgoTelemetry& ego, const HostTagConfig& cfg);

// Maximal runs of identical tags whose length lies in
// [min_segment_frames, max_segment_frames]; other runs are dropped.
std::vector<ClipSegment> segment_clips(const EgoTelemetry& ego, const HostTagConfig& cfg);
std::vector<ClipSegment> segment_runs(const std::vector<HostTag>& tags, const HostTagConfig& cfg);

std::string host_caption(const HostTag& tag);
inline std::string host_caption(const ClipSegment& segment) { return host_caption(segment.tag); }

// Every tag pair the tagger can emit (ten of them).
std::vector<HostTag> valid_host_tags();

}  // namespace lidarcap
