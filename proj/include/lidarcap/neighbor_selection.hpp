#pragma once

#include <string>
#include <vector>

#include "lidarcap/camera.hpp"
#include "lidarcap/domain.hpp"
#include "lidarcap/host_tagging.hpp"
#include "lidarcap/kinematics.hpp"

namespace lidarcap {

// Strictly inside the rectangle 0 < x < T_x, -T_y < y < T_y ahead of the host.
bool is_neighbor(const TrackSample& sample, const NeighborConfig& cfg) noexcept;

// Both |dh_x/dt| and |dh_y/dt| stay below the class T_s over the whole series.
bool is_stationary(const KinematicSeries& kin, const ClassThresholds& th) noexcept;
bool is_stationary(const ObjectTrack& track, const EgoTelemetry& ego, const NeighborConfig& cfg);

// At least one of the eight box corners lands in front of the camera and inside the image.
bool is_visible(const TrackSample& sample, const CameraCalibration& calib) noexcept;

// A track retained for one clip. `samples` are the track samples that fall in
// the clip; `frames[i]` is the ego frame of samples[i]. `flags` has one entry
// per clip frame and marks frames where the track is a visible neighbor.
struct SelectedNeighbor {
  std::string track_id;
  ObjectClass cls = ObjectClass::Other;
  std::vector<TrackSample> samples;
  std::vector<std::size_t> frames;
  std::vector<bool> flags;
  KinematicSeries kin;

  std::size_t qualifying_frames() const noexcept;
};

// Track samples whose nearest ego frame lies inside the clip.
std::vector<TrackSample> clip_samples(const ObjectTrack& track, const ClipSegment& clip, const EgoTelemetry& ego,
                                      double pose_tolerance, std::vector<std::size_t>* frames = nullptr);

// `calib` may be null only when cfg.require_visibility is false. Output is
// ordered by track id.
std::vector<SelectedNeighbor> select_neighbors(const ClipSegment& clip, const TrackMap& tracks,
                                               const EgoTelemetry& ego, const CameraCalibration* calib,
                                               const NeighborConfig& cfg);

}  // namespace lidarcap
