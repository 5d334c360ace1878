#pragma once

#include <string>
#include <vector>

#include "lidarcap/behavior_tagging.hpp"
#include "lidarcap/camera.hpp"
#include "lidarcap/domain.hpp"
#include "lidarcap/host_tagging.hpp"
#include "lidarcap/mask_geometry.hpp"

namespace lidarcap {

struct ObjectCaption {
  std::string track_id;
  ObjectClass cls = ObjectClass::Other;
  UnifiedTagSequence unified;
  std::string caption;
  std::size_t length = 0;
  std::vector<std::size_t> mask_frames;  // ego frames where the track is a visible neighbor
};

struct ClipCaption {
  std::string clip_id;
  ClipSegment segment;
  std::string host_caption;
  std::vector<ObjectCaption> objects;  // by track id
};

struct PipelineConfig {
  HostTagConfig host;
  NeighborConfig neighbor;
};

// "<recording>_<frame_start>_<frame_end>".
std::string make_clip_id(const std::string& recording, const ClipSegment& segment);

// Captions for one clip.
ClipCaption caption_clip(const std::string& recording, const ClipSegment& segment, const EgoTelemetry& ego,
                         const TrackMap& tracks, const CameraCalibration* calib, const PipelineConfig& cfg);

// Segments the recording and captions every clip; clips run across OpenMP
// threads (`workers` <= 0 uses the runtime default). Output is in clip order.
std::vector<ClipCaption> caption_recording(const std::string& recording, const EgoTelemetry& ego,
                                           const TrackMap& tracks, const CameraCalibration* calib,
                                           const PipelineConfig& cfg, int workers = 0);

struct MaskWarning {
  std::string clip_id;
  std::string track_id;
  std::size_t frame = 0;
  std::string message;
};

struct MaskRun {
  std::vector<MaskArtifact> masks;
  std::vector<MaskWarning> warnings;
};

// One mask per captioned object per qualifying frame. Frames whose mask cannot
// be built (no points, nothing projectable) become warnings.
MaskRun mask_recording(const std::vector<ClipCaption>& captions, const TrackMap& tracks, const EgoTelemetry& ego,
                       const CameraCalibration& calib, const MaskOptions& options, double pose_tolerance);

namespace reference {

std::vector<ClipCaption> caption_recording_serial(const std::string& recording, const EgoTelemetry& ego,
                                                  const TrackMap& tracks, const CameraCalibration* calib,
                                                  const PipelineConfig& cfg);

}  // namespace reference

}  // namespace lidarcap
