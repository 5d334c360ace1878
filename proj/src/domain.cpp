#include "lidarcap/domain.hpp"

#include <algorithm>
#include <cmath>

#include "lidarcap/error.hpp"

namespace lidarcap {

double wrap_pi(double angle) noexcept {
  double a = std::fmod(angle, kTwoPi);
  if (a <= -kPi) a += kTwoPi;
  if (a > kPi) a -= kTwoPi;
  return a;
}

double wrap_two_pi(double angle) noexcept {
  double a = std::fmod(angle, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a -= kTwoPi;
  return a;
}

std::string_view to_string(ObjectClass cls) noexcept {
  switch (cls) {
    case ObjectClass::Car: return "car";
    case ObjectClass::Truck: return "truck";
    case ObjectClass::Bike: return "bike";
    case ObjectClass::Pedestrian: return "pedestrian";
    case ObjectClass::Other: return "other";
  }
  return "other";
}

ObjectClass parse_object_class(std::string_view text, bool* known) noexcept {
  if (known) *known = true;
  if (text == "car") return ObjectClass::Car;
  if (text == "truck") return ObjectClass::Truck;
  if (text == "bike") return ObjectClass::Bike;
  if (text == "pedestrian") return ObjectClass::Pedestrian;
  if (text == "other") return ObjectClass::Other;
  if (known) *known = false;
  return ObjectClass::Other;
}

bool is_captioned_class(ObjectClass cls) noexcept { return cls != ObjectClass::Other; }

EgoTelemetry::EgoTelemetry(std::vector<EgoSample> samples) : samples_(std::move(samples)) {
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    auto& s = samples_[i];
    if (!(s.v >= 0.0)) throw Error(Errc::BadValue, "host speed must be non-negative", i + 1);
    if (i > 0 && !(s.t > samples_[i - 1].t)) throw Error(Errc::NonMonotoneTime, "telemetry time must increase", i + 1);
    s.pose.heading = wrap_pi(s.pose.heading);
  }
}

std::optional<std::size_t> EgoTelemetry::nearest_frame(double t, double tolerance) const {
  if (samples_.empty()) return std::nullopt;
  auto it = std::lower_bound(samples_.begin(), samples_.end(), t,
                             [](const EgoSample& s, double value) { return s.t < value; });
  std::size_t best = samples_.size();
  double best_gap = 0.0;
  auto consider = [&](std::size_t i) {
    double gap = std::abs(samples_[i].t - t);
    if (best == samples_.size() || gap < best_gap) {
      best = i;
      best_gap = gap;
    }
  };
  if (it != samples_.end()) consider(static_cast<std::size_t>(it - samples_.begin()));
  if (it != samples_.begin()) consider(static_cast<std::size_t>(it - samples_.begin()) - 1);
  if (best_gap > tolerance) return std::nullopt;
  return best;
}

Pose2 EgoTelemetry::pose_at(double t, double tolerance) const {
  if (!nearest_frame(t, tolerance)) {
    throw Error(Errc::PoseGap, "no ego pose within " + std::to_string(tolerance) + " s of t=" + std::to_string(t));
  }
  auto it = std::lower_bound(samples_.begin(), samples_.end(), t,
                             [](const EgoSample& s, double value) { return s.t < value; });
  if (it == samples_.end()) return samples_.back().pose;
  if (it->t == t || it == samples_.begin()) return it->pose;
  const auto& a = *(it - 1);
  const auto& b = *it;
  double f = (t - a.t) / (b.t - a.t);
  Pose2 p;
  p.x = a.pose.x + f * (b.pose.x - a.pose.x);
  p.y = a.pose.y + f * (b.pose.y - a.pose.y);
  p.heading = wrap_pi(a.pose.heading + f * wrap_pi(b.pose.heading - a.pose.heading));
  return p;
}

void HostTagConfig::validate() const {
  if (!(T_v > 0.0 && T_a > 0.0 && T_w > 0.0)) throw Error(Errc::BadConfig, "host thresholds must be positive");
  if (!(min_segment_frames < max_segment_frames))
    throw Error(Errc::BadConfig, "host.min_segment_frames must be below host.max_segment_frames");
  if (smoothing_window == 0) throw Error(Errc::BadConfig, "host.smoothing_window must be >= 1");
}

const ClassThresholds& NeighborConfig::thresholds(ObjectClass cls) const noexcept {
  switch (cls) {
    case ObjectClass::Pedestrian: return pedestrian;
    case ObjectClass::Truck: return truck;
    case ObjectClass::Bike: return bike;
    case ObjectClass::Car:
    case ObjectClass::Other: return car;
  }
  return car;
}

void NeighborConfig::validate() const {
  for (const auto* row : {&pedestrian, &car, &truck, &bike}) {
    if (!(row->T_x > 0.0 && row->T_y > 0.0 && row->T_s > 0.0 && row->T_m > 0.0))
      throw Error(Errc::BadConfig, "neighbor thresholds must be positive");
  }
  if (!(T_h > 0.0)) throw Error(Errc::BadConfig, "neighbor.T_h must be positive");
  if (!(0.0 <= oncoming_lower && oncoming_lower < oncoming_upper && oncoming_upper <= kTwoPi))
    throw Error(Errc::BadConfig, "oncoming yaw interval must be non-empty within [0, 2pi]");
  if (!(0.0 <= lateral_lower && lateral_lower < lateral_upper && lateral_upper <= kPi))
    throw Error(Errc::BadConfig, "lateral yaw interval must be non-empty within [0, pi]");
  // The mirrored lateral interval is (2pi - upper, 2pi - lower).
  bool overlaps = lateral_upper > oncoming_lower || (kTwoPi - lateral_upper) < oncoming_upper;
  if (overlaps) throw Error(Errc::BadConfig, "lateral and oncoming yaw intervals overlap");
  if (min_presence_frames == 0) throw Error(Errc::BadConfig, "neighbor.min_presence_frames must be >= 1");
  if (min_dwell_frames == 0) throw Error(Errc::BadConfig, "neighbor.min_dwell_frames must be >= 1");
  if (!(pose_tolerance >= 0.0)) throw Error(Errc::BadConfig, "neighbor.pose_tolerance must be >= 0");
}

}  // namespace lidarcap
