#include "lidarcap/neighbor_selection.hpp"

#include <algorithm>
#include <cmath>

#include "lidarcap/box.hpp"
#include "lidarcap/error.hpp"

namespace lidarcap {

bool is_neighbor(const TrackSample& s, const NeighborConfig& cfg) noexcept {
  const auto& th = cfg.thresholds(s.cls);
  return 0.0 < s.center.x && s.center.x < th.T_x && -th.T_y < s.center.y && s.center.y < th.T_y;
}

bool is_stationary(const KinematicSeries& kin, const ClassThresholds& th) noexcept {
  double max_vx = 0.0, max_vy = 0.0;
  for (double v : kin.compensated_vx) max_vx = std::max(max_vx, std::abs(v));
  for (double v : kin.compensated_vy) max_vy = std::max(max_vy, std::abs(v));
  return max_vx < th.T_s && max_vy < th.T_s;
}

bool is_stationary(const ObjectTrack& track, const EgoTelemetry& ego, const NeighborConfig& cfg) {
  auto kin = host_compensate(track.samples, ego, cfg.pose_tolerance);
  return is_stationary(kin, cfg.thresholds(track.cls));
}

bool is_visible(const TrackSample& sample, const CameraCalibration& calib) noexcept {
  for (const auto& corner : box_corners(box_of(sample))) {
    auto px = project_point(calib, corner);
    if (px && inside_image(calib, *px)) return true;
  }
  return false;
}

std::size_t SelectedNeighbor::qualifying_frames() const noexcept {
  return static_cast<std::size_t>(std::count(flags.begin(), flags.end(), true));
}

std::vector<TrackSample> clip_samples(const ObjectTrack& track, const ClipSegment& clip, const EgoTelemetry& ego,
                                      double pose_tolerance, std::vector<std::size_t>* frames) {
  std::vector<TrackSample> out;
  if (frames) frames->clear();
  for (const auto& s : track.samples) {
    auto f = ego.nearest_frame(s.t, pose_tolerance);
    if (!f || *f < clip.frame_start || *f > clip.frame_end) continue;
    // A sample may map onto the same frame as its predecessor at high track rates; keep the first.
    if (frames && !frames->empty() && frames->back() == *f) continue;
    out.push_back(s);
    if (frames) frames->push_back(*f);
  }
  return out;
}

std::vector<SelectedNeighbor> select_neighbors(const ClipSegment& clip, const TrackMap& tracks,
                                               const EgoTelemetry& ego, const CameraCalibration* calib,
                                               const NeighborConfig& cfg) {
  if (cfg.require_visibility && calib == nullptr)
    throw Error(Errc::BadConfig, "visibility check enabled but no camera calibration supplied");
  if (clip.frame_end >= ego.size()) throw Error(Errc::BadParams, "clip extends past the telemetry");

  std::vector<SelectedNeighbor> out;
  const double t0 = ego[clip.frame_start].t;
  for (const auto& [id, track] : tracks) {
    if (!is_captioned_class(track.cls)) continue;
    SelectedNeighbor n;
    n.samples = clip_samples(track, clip, ego, cfg.pose_tolerance, &n.frames);
    if (n.samples.size() < 2) continue;
    n.kin = host_compensate(n.samples, ego, t0, cfg.pose_tolerance);
    if (is_stationary(n.kin, cfg.thresholds(track.cls))) continue;

    n.flags.assign(clip.length(), false);
    for (std::size_t i = 0; i < n.samples.size(); ++i) {
      const auto& s = n.samples[i];
      bool ok = is_neighbor(s, cfg) && (!cfg.require_visibility || is_visible(s, *calib));
      if (ok) n.flags[n.frames[i] - clip.frame_start] = true;
    }
    if (n.qualifying_frames() < cfg.min_presence_frames) continue;
    n.track_id = id;
    n.cls = track.cls;
    out.push_back(std::move(n));
  }
  return out;
}

}  // namespace lidarcap
