#pragma once

#include <span>
#include <vector>

#include "lidarcap/domain.hpp"

namespace lidarcap {

struct TimedValue {
  double t = 0.0;
  double value = 0.0;
  friend bool operator==(const TimedValue&, const TimedValue&) = default;
};

// Pairwise slopes (q[i+1]-q[i])/(t[i+1]-t[i]), each stamped at t[i+1].
std::vector<TimedValue> finite_difference_rate(std::span<const TimedValue> values);

// Per-track derived quantities. Position series have one entry per sample;
// rate series have one entry per consecutive pair, aligned to the later sample.
struct KinematicSeries {
  std::vector<double> t;
  std::vector<double> range;
  std::vector<double> lateral;  // host-frame y
  std::vector<Vec2> compensated;

  std::vector<double> range_rate;
  std::vector<double> lateral_rate;
  std::vector<double> abs_lateral_rate;  // d|y|/dt
  std::vector<double> compensated_vx;
  std::vector<double> compensated_vy;
  std::vector<double> compensated_speed;

  std::size_t size() const noexcept { return t.size(); }
  // Rate index used for sample i; sample 0 borrows the first pair's rate.
  static std::size_t rate_index(std::size_t sample) noexcept { return sample == 0 ? 0 : sample - 1; }
};

// Host-frame point (x ahead, y right) to world coordinates.
Vec2 host_to_world(const Pose2& host, Vec2 p) noexcept;
// World point to the host frame (x ahead, y right).
Vec2 world_to_host(const Pose2& host, Vec2 w) noexcept;

// Expresses every sample center in the host frame at `reference_time` (the first
// sample when omitted) and differentiates. Throws PoseGap, EmptySeries, NonMonotoneTime.
KinematicSeries host_compensate(std::span<const TrackSample> samples, const EgoTelemetry& ego,
                                double pose_tolerance = kDefaultPoseTolerance);
KinematicSeries host_compensate(std::span<const TrackSample> samples, const EgoTelemetry& ego,
                                double reference_time, double pose_tolerance);

}  // namespace lidarcap
