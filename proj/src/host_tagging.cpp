#include "lidarcap/host_tagging.hpp"

#include <algorithm>

#include "lidarcap/error.hpp"
#include "lidarcap/kinematics.hpp"

namespace lidarcap {

HostMotion tag_host_motion(double v, double dv_dt, const HostTagConfig& cfg) noexcept {
  if (v < cfg.T_v) return HostMotion::Stationary;
  if (dv_dt > cfg.T_a) return HostMotion::Accelerating;
  if (dv_dt < -cfg.T_a) return HostMotion::Decelerating;
  return HostMotion::Cruising;
}

HostDirection tag_host_direction(double yaw_rate, const HostTagConfig& cfg) noexcept {
  if (yaw_rate < -cfg.T_w) return HostDirection::SteeringRight;
  if (yaw_rate > cfg.T_w) return HostDirection::SteeringLeft;
  return HostDirection::Straight;
}

namespace {

// Trailing moving average; the window shrinks at the start of the series.
std::vector<double> smooth(const std::vector<double>& x, std::size_t window) {
  if (window <= 1) return x;
  std::vector<double> out(x.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sum += x[i];
    if (i >= window) sum -= x[i - window];
    out[i] = sum / static_cast<double>(std::min(i + 1, window));
  }
  return out;
}

}  // namespace

std::vector<HostTag> tag_host_frames(const EgoTelemetry& ego, const HostTagConfig& cfg) {
  if (ego.size() < 2) throw Error(Errc::EmptySeries, "host tagging needs at least two telemetry samples");
  const std::size_t n = ego.size();
  std::vector<double> v(n), w(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = ego[i].v;
    w[i] = ego[i].yaw_rate;
  }
  v = smooth(v, cfg.smoothing_window);
  w = smooth(w, cfg.smoothing_window);

  std::vector<TimedValue> speed(n);
  for (std::size_t i = 0; i < n; ++i) speed[i] = {ego[i].t, v[i]};
  auto accel = finite_difference_rate(speed);

  std::vector<HostTag> tags(n);
  for (std::size_t i = 0; i < n; ++i) {
    double a = accel[KinematicSeries::rate_index(i)].value;
    HostTag tag{tag_host_motion(v[i], a, cfg), tag_host_direction(w[i], cfg)};
    if (tag.motion == HostMotion::Stationary) tag.direction = HostDirection::Straight;
    tags[i] = tag;
  }
  return tags;
}

std::vector<ClipSegment> segment_runs(const std::vector<HostTag>& tags, const HostTagConfig& cfg) {
  std::vector<ClipSegment> out;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= tags.size(); ++i) {
    if (i < tags.size() && tags[i] == tags[start]) continue;
    ClipSegment seg{start, i - 1, tags[start]};
    if (seg.length() >= cfg.min_segment_frames && seg.length() <= cfg.max_segment_frames) out.push_back(seg);
    start = i;
  }
  return out;
}

std::vector<ClipSegment> segment_clips(const EgoTelemetry& ego, const HostTagConfig& cfg) {
  return segment_runs(tag_host_frames(ego, cfg), cfg);
}

std::string host_caption(const HostTag& tag) {
  const char* motion = "cruising";
  switch (tag.motion) {
    case HostMotion::Stationary: return "Host is stationary.";
    case HostMotion::Accelerating: motion = "accelerating"; break;
    case HostMotion::Decelerating: motion = "decelerating"; break;
    case HostMotion::Cruising: motion = "cruising"; break;
  }
  const char* direction = "heading straight";
  switch (tag.direction) {
    case HostDirection::SteeringLeft: direction = "steering left"; break;
    case HostDirection::SteeringRight: direction = "steering right"; break;
    case HostDirection::Straight: direction = "heading straight"; break;
  }
  return std::string("Host is ") + motion + " and " + direction + ".";
}

std::vector<HostTag> valid_host_tags() {
  std::vector<HostTag> tags{{HostMotion::Stationary, HostDirection::Straight}};
  for (auto m : {HostMotion::Accelerating, HostMotion::Decelerating, HostMotion::Cruising}) {
    for (auto d : {HostDirection::SteeringLeft, HostDirection::SteeringRight, HostDirection::Straight}) {
      tags.push_back({m, d});
    }
  }
  return tags;
}

}  // namespace lidarcap
