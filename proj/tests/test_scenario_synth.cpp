#include <doctest.h>

#include <sstream>

#include "lidarcap/error.hpp"
#include "lidarcap/io.hpp"
#include "lidarcap/scenario_synth.hpp"
#include "support.hpp"

using namespace lidarcap;

namespace {

std::string serialized(const Scenario& sc) {
  std::ostringstream o;
  write_ego_telemetry(o, sc.ego);
  write_tracks(o, sc.tracks);
  write_calibration(o, sc.calib);
  write_expected_tags(o, sc.expected);
  return o.str();
}

UnifiedTagSequence parse_all(std::initializer_list<const char*> tags) {
  UnifiedTagSequence out;
  for (auto t : tags) out.push_back(*parse_concatenated_tag(t));
  return out;
}

Errc code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::Io;
}

}  // namespace

TEST_CASE("expected sequences follow from the trajectories") {
  auto first_expected = [](ScenarioKind k) {
    auto sc = generate_scenario(k);
    return sc.expected.empty() ? UnifiedTagSequence{} : sc.expected.front().unified;
  };
  CHECK(first_expected(ScenarioKind::OvertakeLeft) == parse_all({"car-left-approach", "car-left-away"}));
  CHECK(first_expected(ScenarioKind::CutInRight) == parse_all({"car-right-away", "car-host-away"}));
  CHECK(first_expected(ScenarioKind::OncomingPass) == parse_all({"car-oncoming-approach"}));
  CHECK(first_expected(ScenarioKind::PedestrianCross) ==
        parse_all({"pedestrian-rightlateral-approach", "pedestrian-leftlateral-away"}));
  CHECK(first_expected(ScenarioKind::LeadFollow) == parse_all({"car-host-approach", "car-host-constant"}));
  auto parked = generate_scenario(ScenarioKind::ParkedRow);
  CHECK(parked.expected.empty());
  CHECK(parked.tracks.size() == 5);
}

TEST_CASE("pipeline reproduces every noise-free scenario") {
  for (auto kind : all_scenarios()) {
    CAPTURE(to_string(kind));
    auto sc = generate_scenario(kind);
    CHECK(support::pipeline_tags(sc) == support::expected_tags(sc));
  }
  // other rates and durations inside the documented ranges
  for (int rate : {5, 10, 20})
    for (double dur : {6.0, 12.0, 30.0})
      for (auto kind : all_scenarios()) {
        CAPTURE(to_string(kind));
        CAPTURE(rate);
        CAPTURE(dur);
        ScenarioParams p;
        p.rate_hz = rate;
        p.duration_s = dur;
        if (rate * dur > 300) {
          CHECK(code_of([&] { generate_scenario(kind, p); }) == Errc::BadParams);
          continue;
        }
        auto sc = generate_scenario(kind, p);
        CHECK(support::pipeline_tags(sc) == support::expected_tags(sc));
      }
}

TEST_CASE("generation is deterministic and noise-free injection is the identity") {
  for (auto kind : all_scenarios()) {
    auto a = generate_scenario(kind, {}, 7);
    auto b = generate_scenario(kind, {}, 7);
    CHECK(serialized(a) == serialized(b));
    auto same = inject_noise(a, 0.0, 0.0, 99);
    CHECK(serialized(same) == serialized(a));
    CHECK(same.tracks == a.tracks);
    auto n1 = inject_noise(a, 0.1, 0.01, 3);
    auto n2 = inject_noise(a, 0.1, 0.01, 3);
    CHECK(serialized(n1) == serialized(n2));
    CHECK(n1.ego == a.ego);
    if (!a.tracks.empty()) CHECK_FALSE(n1.tracks == a.tracks);
  }
  CHECK(serialized(inject_noise(generate_scenario(ScenarioKind::OvertakeLeft), 0.1, 0, 1)) !=
        serialized(inject_noise(generate_scenario(ScenarioKind::OvertakeLeft), 0.1, 0, 2)));
}

TEST_CASE("out-of-range parameters") {
  ScenarioParams p;
  p.duration_s = 1.0;
  CHECK(code_of([&] { generate_scenario(ScenarioKind::LeadFollow, p); }) == Errc::BadParams);
  p = {};
  p.rate_hz = 50;
  CHECK(code_of([&] { generate_scenario(ScenarioKind::LeadFollow, p); }) == Errc::BadParams);
  p = {};
  p.host_speed = 31.0;
  CHECK(code_of([&] { generate_scenario(ScenarioKind::OncomingPass, p); }) == Errc::BadParams);
  p.host_speed = 26.0;  // the overtaking car would be over the speed range
  CHECK(code_of([&] { generate_scenario(ScenarioKind::OvertakeLeft, p); }) == Errc::BadParams);
  p.host_speed = 5.0;  // the crossing scenario needs a stopped host
  CHECK(code_of([&] { generate_scenario(ScenarioKind::PedestrianCross, p); }) == Errc::BadParams);
  CHECK(code_of([&] { inject_noise(generate_scenario(ScenarioKind::LeadFollow), -1.0, 0.0, 0); }) ==
        Errc::BadParams);
}

TEST_CASE("light box noise leaves the overtake tags intact") {
  PipelineConfig cfg;
  cfg.neighbor.min_dwell_frames = 5;
  auto base = generate_scenario(ScenarioKind::OvertakeLeft);
  auto expected = support::expected_tags(base);
  int matches = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed)
    matches += support::pipeline_tags(inject_noise(base, 0.05, 0.0, seed), cfg) == expected;
  MESSAGE("overtake_left matches under 0.05 m noise: " << matches << "/100");
  CHECK(matches >= 95);
}

TEST_CASE("heavy noise runs without failing") {
  auto base = generate_scenario(ScenarioKind::OvertakeLeft);
  int matches = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed)
    matches += support::pipeline_tags(inject_noise(base, 5.0, 0.2, seed)) == support::expected_tags(base);
  MESSAGE("overtake_left matches under 5 m noise: " << matches << "/10");
}

TEST_CASE("embedding harnesses") {
  auto b = biased_embeddings(50, 16, 3);
  auto s = semantic_embeddings(50, 16, 3);
  CHECK(b.size() == 50);
  CHECK(s.size() == 50);
  CHECK(b == biased_embeddings(50, 16, 3));
  CHECK_NOTHROW(EmbeddingIndex(b));
  CHECK_NOTHROW(EmbeddingIndex(s));
  CHECK(b[0].vec.size() == 16);
  CHECK(code_of([] { biased_embeddings(0, 16, 0); }) == Errc::BadParams);
}
