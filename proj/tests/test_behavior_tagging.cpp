#include <doctest.h>

#include <random>

#include "lidarcap/behavior_tagging.hpp"
#include "lidarcap/error.hpp"
#include "support.hpp"

using namespace lidarcap;

namespace {

ConcatenatedTag tag(LaneTag lane, NeighborMotion m, ObjectClass c = ObjectClass::Car) { return {c, lane, m}; }

std::vector<ConcatenatedTag> repeat(std::initializer_list<std::pair<ConcatenatedTag, int>> runs) {
  std::vector<ConcatenatedTag> out;
  for (auto& [t, n] : runs)
    for (int i = 0; i < n; ++i) out.push_back(t);
  return out;
}

TrackSample sample(double t, double x, double y, double yaw, ObjectClass cls = ObjectClass::Car) {
  TrackSample s;
  s.track_id = "o";
  s.t = t;
  s.cls = cls;
  s.center = {x, y, 0};
  s.size = {1, 1, 1};
  s.yaw = yaw;
  return s;
}

const auto A = tag(LaneTag::Host, NeighborMotion::Away);
const auto B = tag(LaneTag::Right, NeighborMotion::Away);
const auto C = tag(LaneTag::Left, NeighborMotion::Constant);

}  // namespace

TEST_CASE("baseline lane") {
  NeighborConfig c;
  CHECK(baseline_lane(kPi, c) == BaselineLane::Oncoming);
  CHECK(baseline_lane(kPi / 2, c) == BaselineLane::Lateral);
  CHECK(baseline_lane(3 * kPi / 2, c) == BaselineLane::Lateral);
  CHECK(baseline_lane(0.1, c) == BaselineLane::Ongoing);
  CHECK(baseline_lane(kTwoPi - 0.1, c) == BaselineLane::Ongoing);
}

TEST_CASE("lane tags") {
  NeighborConfig c;
  CHECK(lane_tag(0.0, 5, c) == LaneTag::Right);
  CHECK(lane_tag(0.0, -5, c) == LaneTag::Left);
  CHECK(lane_tag(0.0, 2.5, c) == LaneTag::Host);
  CHECK(lane_tag(kPi, 0, c) == LaneTag::Oncoming);
  CHECK(lane_tag(kPi, 10, c) == LaneTag::Oncoming);
  CHECK(lane_tag(kPi / 2, -6, c) == LaneTag::LeftLateral);
  CHECK(lane_tag(kPi / 2, 6, c) == LaneTag::RightLateral);
  // host-lateral folds onto a side unless enabled
  CHECK(lane_tag(kPi / 2, 1, c) == LaneTag::RightLateral);
  CHECK(lane_tag(kPi / 2, -1, c) == LaneTag::LeftLateral);
  c.emit_host_lateral = true;
  CHECK(lane_tag(kPi / 2, 1, c) == LaneTag::HostLateral);
}

TEST_CASE("lane tags partition the (yaw, y) plane and ignore x and z") {
  NeighborConfig c;
  for (int i = 0; i < 720; ++i) {
    double yaw = kTwoPi * i / 720.0;
    for (int j = 0; j <= 120; ++j) {
      double y = -30.0 + 0.5 * j;
      LaneTag l = lane_tag(yaw, y, c);
      switch (baseline_lane(yaw, c)) {
        case BaselineLane::Oncoming: CHECK(l == LaneTag::Oncoming); break;
        case BaselineLane::Lateral:
          CHECK(is_lateral(l));
          CHECK(l != LaneTag::HostLateral);
          break;
        case BaselineLane::Ongoing:
          CHECK((l == LaneTag::Right || l == LaneTag::Left || l == LaneTag::Host));
          break;
      }
    }
  }
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-50, 50), uyaw(0, kTwoPi);
  for (int i = 0; i < 1000; ++i) {
    double yaw = uyaw(rng), y = u(rng) * 0.6;
    auto s = sample(0, u(rng), y, yaw);
    auto moved = s;
    moved.center.x = u(rng);
    moved.center.z = u(rng);
    CHECK(lane_tag(s, c) == lane_tag(moved, c));
  }
}

TEST_CASE("motion tags") {
  KinematicSeries k;
  k.range_rate = {-0.5, 0.5, 0.05};
  k.abs_lateral_rate = {0.5, -0.5, 0.0};
  CHECK(motion_tag(k, 1, LaneTag::Host, 0.1, false) == NeighborMotion::Approach);
  CHECK(motion_tag(k, 2, LaneTag::Host, 0.1, false) == NeighborMotion::Away);
  CHECK(motion_tag(k, 3, LaneTag::Host, 0.1, false) == NeighborMotion::Constant);
  // sample 0 shares the first rate
  CHECK(motion_tag(k, 0, LaneTag::Right, 0.1, false) == NeighborMotion::Approach);
  // lateral lanes read |y|, not range
  CHECK(motion_tag(k, 1, LaneTag::LeftLateral, 0.1, false) == NeighborMotion::Away);
  CHECK(motion_tag(k, 2, LaneTag::RightLateral, 0.1, false) == NeighborMotion::Approach);
  CHECK(motion_tag(k, 2, LaneTag::Host, 0.1, true) == NeighborMotion::Stationary);
  // oncoming is only ever approaching
  CHECK(motion_tag(k, 2, LaneTag::Oncoming, 0.1, false) == NeighborMotion::Approach);
  CHECK(motion_tag(k, 2, LaneTag::Oncoming, 0.1, true) == NeighborMotion::Approach);
}

TEST_CASE("pedestrian closing on the host laterally") {
  auto ego = support::straight_ego(2, 0.0, 1.0);
  std::vector<TrackSample> s{sample(0, 10, 6.0, 3 * kPi / 2, ObjectClass::Pedestrian),
                             sample(1, 10, 5.5, 3 * kPi / 2, ObjectClass::Pedestrian)};
  auto kin = host_compensate(s, ego);
  NeighborConfig c;
  auto tags = tag_track(s, kin, ObjectClass::Pedestrian, c);
  REQUIRE(tags.size() == 2);
  CHECK(tags[1] == tag(LaneTag::RightLateral, NeighborMotion::Approach, ObjectClass::Pedestrian));
  CHECK(tags[0] == tags[1]);
}

TEST_CASE("radially receding objects are tagged away") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> ang(-0.5, 0.5), r0(5, 20), sp(0.5, 15);
  NeighborConfig c;
  auto ego = support::straight_ego(10, 0.0);
  for (int trial = 0; trial < 300; ++trial) {
    double th = ang(rng), r = r0(rng), v = sp(rng);
    double yaw = wrap_two_pi(std::uniform_real_distribution<double>(-0.7, 0.7)(rng));
    std::vector<TrackSample> s;
    for (std::size_t i = 0; i < ego.size(); ++i) {
      double rr = r + v * ego[i].t;
      s.push_back(sample(ego[i].t, rr * std::cos(th), rr * std::sin(th), yaw));
    }
    auto kin = host_compensate(s, ego);
    for (const auto& t : tag_track(s, kin, ObjectClass::Car, c)) {
      CHECK(baseline_lane(yaw, c) == BaselineLane::Ongoing);
      CHECK(t.motion == NeighborMotion::Away);
    }
  }
}

TEST_CASE("an oncoming car keeps its approach tag while moving away") {
  auto ego = support::straight_ego(10, 0.0);
  std::vector<TrackSample> s;
  for (std::size_t i = 0; i < ego.size(); ++i) s.push_back(sample(ego[i].t, 10 + 5 * ego[i].t, -4, kPi));
  auto tags = tag_track(s, host_compensate(s, ego), ObjectClass::Car, NeighborConfig{});
  for (const auto& t : tags) CHECK(t == tag(LaneTag::Oncoming, NeighborMotion::Approach));
}

TEST_CASE("per-frame stationary tag for an object that stops") {
  auto ego = support::straight_ego(20, 0.0);
  std::vector<TrackSample> s;
  for (std::size_t i = 0; i < ego.size(); ++i) {
    double t = ego[i].t;
    s.push_back(sample(t, 10 + 3 * std::min(t, 1.0), 0, 0));
  }
  auto tags = tag_track(s, host_compensate(s, ego), ObjectClass::Car, NeighborConfig{});
  auto u = unify(tags);
  REQUIRE(u.size() == 2);
  CHECK(u[0] == tag(LaneTag::Host, NeighborMotion::Away));
  CHECK(u[1] == tag(LaneTag::Host, NeighborMotion::Stationary));
}

TEST_CASE("unify") {
  CHECK(unify(repeat({{A, 7}, {B, 4}})) == UnifiedTagSequence{A, B});
  CHECK(unify(repeat({{A, 1}})) == UnifiedTagSequence{A});
  CHECK(unify(repeat({{A, 2}, {B, 2}, {A, 1}})) == UnifiedTagSequence{A, B, A});
  CHECK_THROWS_AS(unify(std::vector<ConcatenatedTag>{}), Error);

  // dwell filter absorbs short runs into their predecessor
  CHECK(unify(repeat({{A, 5}, {B, 2}, {A, 5}}), 3) == UnifiedTagSequence{A});
  CHECK(unify(repeat({{A, 5}, {B, 3}, {A, 5}}), 3) == UnifiedTagSequence{A, B, A});
  CHECK(unify(repeat({{B, 1}, {A, 5}, {C, 4}}), 3) == UnifiedTagSequence{A, C});
  CHECK(unify(repeat({{A, 1}, {B, 1}}), 3) == UnifiedTagSequence{A});
}

TEST_CASE("unify is idempotent and yields a duplicate-free subsequence") {
  std::mt19937_64 rng(4);
  const ConcatenatedTag pool[] = {A, B, C, tag(LaneTag::Host, NeighborMotion::Approach)};
  std::uniform_int_distribution<int> pick(0, 3), len(1, 60);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<ConcatenatedTag> s(len(rng));
    for (auto& t : s) t = pool[pick(rng)];
    for (std::size_t dwell : {1u, 2u, 4u}) {
      auto u = unify(s, dwell);
      REQUIRE_FALSE(u.empty());
      if (dwell == 1) CHECK(unify(u) == u);
      for (std::size_t i = 1; i < u.size(); ++i) CHECK_FALSE(u[i] == u[i - 1]);
      std::size_t j = 0;
      for (const auto& t : s)
        if (j < u.size() && t == u[j]) ++j;
      CHECK(j == u.size());
    }
  }
}

TEST_CASE("concatenated tag strings") {
  auto t = tag(LaneTag::RightLateral, NeighborMotion::Approach, ObjectClass::Pedestrian);
  CHECK(to_string(t) == "pedestrian-rightlateral-approach");
  CHECK(to_string(A) == "car-host-away");
  for (auto cls : {ObjectClass::Car, ObjectClass::Truck, ObjectClass::Bike, ObjectClass::Pedestrian})
    for (auto lane : {LaneTag::Right, LaneTag::Left, LaneTag::Host, LaneTag::Oncoming, LaneTag::LeftLateral,
                      LaneTag::RightLateral, LaneTag::HostLateral})
      for (auto m : {NeighborMotion::Approach, NeighborMotion::Away, NeighborMotion::Constant,
                     NeighborMotion::Stationary}) {
        ConcatenatedTag x{cls, lane, m};
        CHECK(parse_concatenated_tag(to_string(x)) == x);
      }
  CHECK_FALSE(parse_concatenated_tag("car-host").has_value());
  CHECK_FALSE(parse_concatenated_tag("car-sky-away").has_value());
}
