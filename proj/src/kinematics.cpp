#include "lidarcap/kinematics.hpp"

#include <cmath>

#include "lidarcap/error.hpp"

namespace lidarcap {

std::vector<TimedValue> finite_difference_rate(std::span<const TimedValue> values) {
  if (values.size() < 2) throw Error(Errc::EmptySeries, "rate needs at least two samples");
  std::vector<TimedValue> rates;
  rates.reserve(values.size() - 1);
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    double dt = values[i + 1].t - values[i].t;
    if (!(dt > 0.0)) throw Error(Errc::NonMonotoneTime, "timestamps must strictly increase", i + 2);
    rates.push_back({values[i + 1].t, (values[i + 1].value - values[i].value) / dt});
  }
  return rates;
}

Vec2 host_to_world(const Pose2& host, Vec2 p) noexcept {
  double c = std::cos(host.heading), s = std::sin(host.heading);
  return {host.x + p.x * c + p.y * s, host.y + p.x * s - p.y * c};
}

Vec2 world_to_host(const Pose2& host, Vec2 w) noexcept {
  double c = std::cos(host.heading), s = std::sin(host.heading);
  double dx = w.x - host.x, dy = w.y - host.y;
  return {dx * c + dy * s, dx * s - dy * c};
}

namespace {

std::vector<double> rate_of(const std::vector<double>& t, const std::vector<double>& q) {
  std::vector<TimedValue> series(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) series[i] = {t[i], q[i]};
  auto rates = finite_difference_rate(series);
  std::vector<double> out(rates.size());
  for (std::size_t i = 0; i < rates.size(); ++i) out[i] = rates[i].value;
  return out;
}

}  // namespace

KinematicSeries host_compensate(std::span<const TrackSample> samples, const EgoTelemetry& ego,
                                double pose_tolerance) {
  if (samples.empty()) throw Error(Errc::EmptySeries, "track has no samples");
  return host_compensate(samples, ego, samples.front().t, pose_tolerance);
}

KinematicSeries host_compensate(std::span<const TrackSample> samples, const EgoTelemetry& ego,
                                double reference_time, double pose_tolerance) {
  if (samples.size() < 2) throw Error(Errc::EmptySeries, "track needs at least two samples");
  const Pose2 reference = ego.pose_at(reference_time, pose_tolerance);

  KinematicSeries k;
  const std::size_t n = samples.size();
  k.t.resize(n);
  k.range.resize(n);
  k.lateral.resize(n);
  k.compensated.resize(n);
  std::vector<double> abs_lateral(n), hx(n), hy(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = samples[i];
    k.t[i] = s.t;
    k.range[i] = std::hypot(s.center.x, s.center.y);
    k.lateral[i] = s.center.y;
    abs_lateral[i] = std::abs(s.center.y);
    Vec2 world = host_to_world(ego.pose_at(s.t, pose_tolerance), {s.center.x, s.center.y});
    k.compensated[i] = world_to_host(reference, world);
    hx[i] = k.compensated[i].x;
    hy[i] = k.compensated[i].y;
  }
  k.range_rate = rate_of(k.t, k.range);
  k.lateral_rate = rate_of(k.t, k.lateral);
  k.abs_lateral_rate = rate_of(k.t, abs_lateral);
  k.compensated_vx = rate_of(k.t, hx);
  k.compensated_vy = rate_of(k.t, hy);
  k.compensated_speed.resize(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) k.compensated_speed[i] = std::hypot(k.compensated_vx[i], k.compensated_vy[i]);
  return k;
}

}  // namespace lidarcap
