#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lidarcap/behavior_tagging.hpp"
#include "lidarcap/camera.hpp"
#include "lidarcap/domain.hpp"
#include "lidarcap/embedding.hpp"

namespace lidarcap {

enum class ScenarioKind { OvertakeLeft, CutInRight, OncomingPass, PedestrianCross, LeadFollow, ParkedRow };

std::string_view to_string(ScenarioKind kind) noexcept;
std::optional<ScenarioKind> parse_scenario_kind(std::string_view text) noexcept;
std::vector<ScenarioKind> all_scenarios();

struct ScenarioParams {
  std::optional<double> host_speed;  // m/s; unset picks the scenario default
  double duration_s = 10.0;
  int rate_hz = 10;
};

struct ExpectedTags {
  std::string track_id;
  UnifiedTagSequence unified;
  friend bool operator==(const ExpectedTags&, const ExpectedTags&) = default;
};

struct Scenario {
  ScenarioKind kind = ScenarioKind::OvertakeLeft;
  std::string name;
  EgoTelemetry ego;
  TrackMap tracks;
  CameraCalibration calib;
  std::vector<ExpectedTags> expected;  // captioned tracks only, by track id
};

// Closed-form host and object trajectories on a straight road. Expected unified
// sequences come from the trajectory algebra and assume the default thresholds.
// Throws BadParams outside the documented ranges (speeds 0-30 m/s, duration
// 2-30 s, rate 5-20 Hz) or when a scenario's event would not fit.
Scenario generate_scenario(ScenarioKind kind, const ScenarioParams& params = {}, std::uint64_t seed = 0);

// Gaussian noise on box centers and yaw; telemetry and points untouched.
// sigma == 0 leaves the scenario bit-identical.
Scenario inject_noise(const Scenario& scenario, double sigma_pos, double sigma_yaw, std::uint64_t seed);

// Scenes of near-duplicate vectors recorded minutes apart, one caption per scene:
// retrieval leans on scene identity.
std::vector<EmbeddingRecord> biased_embeddings(std::size_t n, std::size_t dim, std::uint64_t seed);
// Vectors derived from the caption, recording times spread out: retrieval
// tracks semantics, not time.
std::vector<EmbeddingRecord> semantic_embeddings(std::size_t n, std::size_t dim, std::uint64_t seed);

}  // namespace lidarcap
