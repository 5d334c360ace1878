#include "lidarcap/error.hpp"
#include "lidarcap/pipeline.hpp"

namespace lidarcap::reference {

std::vector<ClipCaption> caption_recording_serial(const std::string& recording, const EgoTelemetry& ego,
                                                  const TrackMap& tracks, const CameraCalibration* calib,
                                                  const PipelineConfig& cfg) {
  cfg.host.validate();
  cfg.neighbor.validate();
  if (cfg.neighbor.require_visibility && calib == nullptr)
    throw Error(Errc::BadConfig, "visibility check enabled but no camera calibration supplied");
  std::vector<ClipCaption> out;
  for (const auto& seg : segment_clips(ego, cfg.host)) out.push_back(caption_clip(recording, seg, ego, tracks, calib, cfg));
  return out;
}

}  // namespace lidarcap::reference
