#include <doctest.h>

#include <cmath>
#include <random>

#include "lidarcap/domain.hpp"
#include "lidarcap/error.hpp"
#include "lidarcap/kinematics.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace lidarcap;

namespace {

Errc code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::Io;
}

TrackSample at(double t, double x, double y) {
  TrackSample s;
  s.track_id = "o";
  s.t = t;
  s.cls = ObjectClass::Car;
  s.center = {x, y, 0.0};
  s.size = {4, 2, 1.5};
  return s;
}

}  // namespace

TEST_CASE("finite differences") {
  std::vector<TimedValue> two{{0, 0}, {1, 2}};
  auto r = finite_difference_rate(two);
  REQUIRE(r.size() == 1);
  CHECK(r[0].t == 1.0);
  CHECK(r[0].value == 2.0);

  std::vector<TimedValue> flat{{0, 5}, {1, 5}, {2, 5}};
  r = finite_difference_rate(flat);
  REQUIRE(r.size() == 2);
  CHECK(r[0] == TimedValue{1, 0.0});
  CHECK(r[1] == TimedValue{2, 0.0});

  std::vector<TimedValue> uneven{{0, 0}, {0.5, 1}, {1.5, 4}};
  r = finite_difference_rate(uneven);
  CHECK(r[0].t == 0.5);
  CHECK(r[0].value == doctest::Approx(2.0));
  CHECK(r[1].t == 1.5);
  CHECK(r[1].value == doctest::Approx(3.0));

  std::vector<TimedValue> one{{0, 1}};
  CHECK(code_of([&] { finite_difference_rate(one); }) == Errc::EmptySeries);
  std::vector<TimedValue> dup{{0, 1}, {1, 2}, {1, 3}};
  CHECK(code_of([&] { finite_difference_rate(dup); }) == Errc::NonMonotoneTime);
}

TEST_CASE("finite difference of a linear series is its slope") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-10, 10), dt(0.01, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    double a = u(rng), b = u(rng), t = u(rng);
    std::vector<TimedValue> s;
    for (int i = 0; i < 20; ++i) {
      s.push_back({t, a * t + b});
      t += dt(rng);
    }
    for (auto& r : finite_difference_rate(s)) CHECK(std::abs(r.value - a) < 1e-9 * std::max(1.0, std::abs(a)) * 100);
  }
}

TEST_CASE("angle wrapping") {
  CHECK(wrap_two_pi(7.0) == doctest::Approx(7.0 - kTwoPi));
  CHECK(wrap_two_pi(-0.5) == doctest::Approx(kTwoPi - 0.5));
  CHECK(wrap_two_pi(0.0) == 0.0);
  CHECK(wrap_pi(kPi) == doctest::Approx(kPi));
  CHECK(wrap_pi(-kPi) == doctest::Approx(kPi));
  CHECK(wrap_pi(3 * kPi / 2) == doctest::Approx(-kPi / 2));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-100, 100);
  for (int i = 0; i < 1000; ++i) {
    double a = u(rng);
    double w = wrap_two_pi(a);
    CHECK(w >= 0.0);
    CHECK(w < kTwoPi);
    double p = wrap_pi(a);
    CHECK(p > -kPi);
    CHECK(p <= kPi);
  }
}

TEST_CASE("object classes") {
  bool known = true;
  CHECK(parse_object_class("pedestrian", &known) == ObjectClass::Pedestrian);
  CHECK(known);
  CHECK(parse_object_class("traffic_cone", &known) == ObjectClass::Other);
  CHECK_FALSE(known);
  CHECK(is_captioned_class(ObjectClass::Bike));
  CHECK_FALSE(is_captioned_class(ObjectClass::Other));
}

TEST_CASE("ego telemetry validation and pose lookup") {
  CHECK(code_of([] { EgoTelemetry({{0, -1.0, 0, {}}}); }) == Errc::BadValue);
  CHECK(code_of([] { EgoTelemetry({{0, 1, 0, {}}, {0, 1, 0, {}}}); }) == Errc::NonMonotoneTime);

  EgoTelemetry ego({{0.0, 1, 0, {0, 0, 3.0}}, {1.0, 1, 0, {10, 0, -3.0}}});
  // heading wraps into (-pi, pi]
  CHECK(ego[0].pose.heading == doctest::Approx(3.0));
  // shortest arc from 3.0 to -3.0 passes through pi
  Pose2 mid = ego.pose_at(0.5, 1.0);
  CHECK(mid.x == doctest::Approx(5.0));
  CHECK(std::abs(wrap_pi(mid.heading - kPi)) < 1e-12);
  CHECK(code_of([&] { ego.pose_at(2.0); }) == Errc::PoseGap);
  CHECK(ego.pose_at(1.1).x == doctest::Approx(10.0));
  CHECK(ego.nearest_frame(0.4, 0.5) == 0u);
  CHECK(ego.nearest_frame(0.6, 0.5) == 1u);
  CHECK_FALSE(ego.nearest_frame(5.0).has_value());
}

TEST_CASE("host compensation: static object, host driving forward 10 m") {
  auto ego = support::straight_ego(11, 10.0, 10.0);  // 1 s at 10 m/s
  std::vector<TrackSample> s;
  for (std::size_t i = 0; i < ego.size(); ++i) s.push_back(at(ego[i].t, 30.0 - ego[i].pose.x, 2.0));
  auto k = host_compensate(s, ego);
  for (auto p : k.compensated) {
    CHECK(p.x == doctest::Approx(30.0));
    CHECK(p.y == doctest::Approx(2.0));
  }
  for (double v : k.compensated_speed) CHECK(v < 1e-9);
}

TEST_CASE("host compensation: co-moving object at offset (10, 0)") {
  auto ego = support::straight_ego(11, 10.0, 10.0);
  std::vector<TrackSample> s;
  for (std::size_t i = 0; i < ego.size(); ++i) s.push_back(at(ego[i].t, 10.0, 0.0));
  auto k = host_compensate(s, ego);
  CHECK(k.compensated.front().x == doctest::Approx(10.0));
  CHECK(k.compensated.back().x == doctest::Approx(20.0));
  for (double v : k.compensated_vx) CHECK(v == doctest::Approx(10.0));
  CHECK(k.range_rate.size() == s.size() - 1);
}

TEST_CASE("host compensation: host turning 90 degrees around a static object") {
  // Three poses composed by hand: origin facing +x, then (5, 5) facing +y, then (10, 10) facing +y.
  std::vector<EgoSample> e{{0, 5, 0, {0, 0, 0}}, {1, 5, 0, {5, 5, kPi / 2}}, {2, 5, 0, {10, 10, kPi / 2}}};
  EgoTelemetry ego(e);
  const Vec2 world{20, 0};
  std::vector<TrackSample> s;
  for (const auto& p : e) {
    Vec2 h = oracle::world_to_host_point(p.pose.x, p.pose.y, p.pose.heading, world.x, world.y);
    s.push_back(at(p.t, h.x, h.y));
  }
  // At pose 2 the host faces +y from (5, 5): the object sits 5 m behind-ish and 15 m to the right.
  CHECK(s[1].center.x == doctest::Approx(-5.0));
  CHECK(s[1].center.y == doctest::Approx(15.0));
  auto k = host_compensate(s, ego);
  for (auto p : k.compensated) {
    CHECK(p.x == doctest::Approx(20.0));
    CHECK(p.y == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("world-static objects have zero compensated speed on random host paths") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<EgoSample> e;
    Pose2 p{u(rng) * 50, u(rng) * 50, u(rng) * kPi};
    for (int i = 0; i < 30; ++i) {
      double v = 5 + 5 * u(rng), w = 0.5 * u(rng);
      e.push_back({0.1 * i, v, w, p});
      p.heading += w * 0.1;
      p.x += v * 0.1 * std::cos(p.heading);
      p.y += v * 0.1 * std::sin(p.heading);
    }
    EgoTelemetry ego(e);
    Vec2 world{u(rng) * 40, u(rng) * 40};
    std::vector<TrackSample> s;
    for (const auto& es : ego.samples()) {
      Vec2 h = world_to_host(es.pose, world);
      s.push_back(at(es.t, h.x, h.y));
    }
    auto k = host_compensate(s, ego);
    for (double v : k.compensated_speed) CHECK(v < 1e-9);
  }
}

TEST_CASE("frame composition round trip") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 1000; ++i) {
    Pose2 a{u(rng) * 100, u(rng) * 100, u(rng) * kPi}, b{u(rng) * 100, u(rng) * 100, u(rng) * kPi};
    Vec2 p{u(rng) * 50, u(rng) * 50};
    Vec2 w = host_to_world(a, p);
    Vec2 hand = oracle::host_point_to_world(a.x, a.y, a.heading, p.x, p.y);
    CHECK(std::hypot(w.x - hand.x, w.y - hand.y) < 1e-9);
    Vec2 back = host_to_world(b, world_to_host(b, w));
    CHECK(std::hypot(back.x - w.x, back.y - w.y) < 1e-9);
  }
}

TEST_CASE("config validation") {
  HostTagConfig h;
  CHECK_NOTHROW(h.validate());
  h.T_v = 0;
  CHECK(code_of([&] { h.validate(); }) == Errc::BadConfig);
  h = {};
  h.min_segment_frames = 300;
  CHECK(code_of([&] { h.validate(); }) == Errc::BadConfig);

  NeighborConfig n;
  CHECK_NOTHROW(n.validate());
  CHECK(n.thresholds(ObjectClass::Pedestrian).T_x == 30.0);
  CHECK(n.thresholds(ObjectClass::Truck).T_s == 0.15);
  n.lateral_upper = 3.0;  // runs into the oncoming sector
  CHECK(code_of([&] { n.validate(); }) == Errc::BadConfig);
}
