#pragma once

#include <map>
#include <string>
#include <vector>

#include "lidarcap/pipeline.hpp"
#include "lidarcap/scenario_synth.hpp"

namespace support {

inline lidarcap::EgoTelemetry straight_ego(std::size_t n, double v, double rate = 10.0, double yaw_rate = 0.0) {
  std::vector<lidarcap::EgoSample> s(n);
  for (std::size_t i = 0; i < n; ++i) {
    double t = static_cast<double>(i) / rate;
    s[i] = {t, v, yaw_rate, {v * t, 0.0, 0.0}};
  }
  return lidarcap::EgoTelemetry(std::move(s));
}

// Unified sequences the pipeline produced for every captioned track, merged over clips.
inline std::map<std::string, lidarcap::UnifiedTagSequence> pipeline_tags(const lidarcap::Scenario& sc,
                                                                         const lidarcap::PipelineConfig& cfg = {}) {
  auto clips = lidarcap::caption_recording(sc.name, sc.ego, sc.tracks, &sc.calib, cfg);
  std::map<std::string, lidarcap::UnifiedTagSequence> out;
  for (const auto& c : clips)
    for (const auto& o : c.objects) out[o.track_id] = o.unified;
  return out;
}

inline std::map<std::string, lidarcap::UnifiedTagSequence> expected_tags(const lidarcap::Scenario& sc) {
  std::map<std::string, lidarcap::UnifiedTagSequence> out;
  for (const auto& e : sc.expected) out[e.track_id] = e.unified;
  return out;
}

}  // namespace support
