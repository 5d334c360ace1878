#pragma once

#include <cstddef>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lidarcap {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

// Wraps an angle into (-pi, pi].
double wrap_pi(double angle) noexcept;
// Wraps an angle into [0, 2pi).
double wrap_two_pi(double angle) noexcept;

enum class ObjectClass { Car, Truck, Bike, Pedestrian, Other };

std::string_view to_string(ObjectClass cls) noexcept;
// Unknown strings map to Other; `known` is cleared in that case.
ObjectClass parse_object_class(std::string_view text, bool* known = nullptr) noexcept;
bool is_captioned_class(ObjectClass cls) noexcept;

// Planar pose in the fixed world frame (x, y right-handed, heading counter-clockwise).
struct Pose2 {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;
  friend bool operator==(const Pose2&, const Pose2&) = default;
};

struct EgoSample {
  double t = 0.0;
  double v = 0.0;
  double yaw_rate = 0.0;
  Pose2 pose;
  friend bool operator==(const EgoSample&, const EgoSample&) = default;
};

inline constexpr double kDefaultPoseTolerance = 0.15;

class EgoTelemetry {
 public:
  EgoTelemetry() = default;
  // Validates v >= 0 and strictly increasing t; normalizes headings into (-pi, pi].
  explicit EgoTelemetry(std::vector<EgoSample> samples);

  std::span<const EgoSample> samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  bool empty() const noexcept { return samples_.empty(); }
  const EgoSample& operator[](std::size_t i) const { return samples_[i]; }

  // Pose at time t: linear in position, shortest-arc in heading. Throws PoseGap
  // when the nearest telemetry sample is farther than `tolerance` seconds away.
  Pose2 pose_at(double t, double tolerance = kDefaultPoseTolerance) const;

  // Index of the sample nearest to t, if within tolerance.
  std::optional<std::size_t> nearest_frame(double t, double tolerance = kDefaultPoseTolerance) const;

  friend bool operator==(const EgoTelemetry&, const EgoTelemetry&) = default;

 private:
  std::vector<EgoSample> samples_;
};

// One tracked box at one timestamp, in the host frame at that timestamp:
// x ahead, y to the right of the host heading, z up. `yaw` is the box heading
// relative to the host heading in [0, 2pi), rotating +x toward +y.
struct TrackSample {
  std::string track_id;
  double t = 0.0;
  ObjectClass cls = ObjectClass::Other;
  Vec3 center;
  Vec3 size;  // length, width, height
  double yaw = 0.0;
  std::vector<Vec3> points;
  friend bool operator==(const TrackSample&, const TrackSample&) = default;
};

struct ObjectTrack {
  std::string id;
  ObjectClass cls = ObjectClass::Other;
  std::vector<TrackSample> samples;  // strictly increasing t
  friend bool operator==(const ObjectTrack&, const ObjectTrack&) = default;
};

using TrackMap = std::map<std::string, ObjectTrack>;

struct HostTagConfig {
  double T_v = 0.5;   // m/s
  double T_a = 0.5;   // m/s^2
  double T_w = 0.05;  // rad/s
  std::size_t min_segment_frames = 8;
  std::size_t max_segment_frames = 300;
  std::size_t smoothing_window = 1;  // moving average over v and yaw rate; 1 = off

  void validate() const;
};

struct ClassThresholds {
  double T_x = 40.0;   // neighborhood length, m
  double T_y = 20.0;   // neighborhood half-width, m
  double T_s = 0.15;   // stationarity, m/s
  double T_m = 0.1;    // motion tag dead band, m/s
};

struct NeighborConfig {
  ClassThresholds pedestrian{30.0, 15.0, 0.1, 0.01};
  ClassThresholds car{40.0, 20.0, 0.15, 0.1};
  ClassThresholds truck{40.0, 20.0, 0.15, 0.1};
  ClassThresholds bike{40.0, 20.0, 0.1, 0.1};
  double T_h = 2.5;
  double oncoming_lower = 3.0 * kPi / 4.0;
  double oncoming_upper = 5.0 * kPi / 4.0;
  // Interval around pi/2; mirrored onto the interval around 3pi/2.
  double lateral_lower = kPi / 4.0;
  double lateral_upper = 3.0 * kPi / 4.0;
  std::size_t min_presence_frames = 2;
  std::size_t min_dwell_frames = 1;
  bool emit_host_lateral = false;
  bool require_visibility = true;
  double pose_tolerance = kDefaultPoseTolerance;

  const ClassThresholds& thresholds(ObjectClass cls) const noexcept;
  void validate() const;
};

}  // namespace lidarcap
