#include "lidarcap/pipeline.hpp"

#include <omp.h>

#include <exception>

#include "lidarcap/caption_templater.hpp"
#include "lidarcap/error.hpp"
#include "lidarcap/neighbor_selection.hpp"

namespace lidarcap {

std::string make_clip_id(const std::string& recording, const ClipSegment& segment) {
  return recording + "_" + std::to_string(segment.frame_start) + "_" + std::to_string(segment.frame_end);
}

ClipCaption caption_clip(const std::string& recording, const ClipSegment& segment, const EgoTelemetry& ego,
                         const TrackMap& tracks, const CameraCalibration* calib, const PipelineConfig& cfg) {
  ClipCaption out;
  out.clip_id = make_clip_id(recording, segment);
  out.segment = segment;
  out.host_caption = host_caption(segment);
  const bool host_stationary = segment.tag.motion == HostMotion::Stationary;

  for (auto& n : select_neighbors(segment, tracks, ego, calib, cfg.neighbor)) {
    auto tags = tag_track(n.samples, n.kin, n.cls, cfg.neighbor);
    ObjectCaption obj;
    obj.track_id = n.track_id;
    obj.cls = n.cls;
    obj.unified = unify(tags, cfg.neighbor.min_dwell_frames);
    auto cap = neighbor_caption(obj.unified, host_stationary);
    obj.caption = std::move(cap.text);
    obj.length = cap.length;
    for (std::size_t i = 0; i < n.flags.size(); ++i)
      if (n.flags[i]) obj.mask_frames.push_back(segment.frame_start + i);
    out.objects.push_back(std::move(obj));
  }
  return out;
}

std::vector<ClipCaption> caption_recording(const std::string& recording, const EgoTelemetry& ego,
                                           const TrackMap& tracks, const CameraCalibration* calib,
                                           const PipelineConfig& cfg, int workers) {
  cfg.host.validate();
  cfg.neighbor.validate();
  if (cfg.neighbor.require_visibility && calib == nullptr)
    throw Error(Errc::BadConfig, "visibility check enabled but no camera calibration supplied");

  const auto segments = segment_clips(ego, cfg.host);
  std::vector<ClipCaption> out(segments.size());
  std::exception_ptr failure;
  const int threads = workers > 0 ? workers : omp_get_max_threads();
  const auto n = static_cast<std::ptrdiff_t>(segments.size());

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] =
          caption_clip(recording, segments[static_cast<std::size_t>(i)], ego, tracks, calib, cfg);
    } catch (...) {
#pragma omp critical(lidarcap_caption_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

MaskRun mask_recording(const std::vector<ClipCaption>& captions, const TrackMap& tracks, const EgoTelemetry& ego,
                       const CameraCalibration& calib, const MaskOptions& options, double pose_tolerance) {
  MaskRun run;
  for (const auto& clip : captions) {
    for (const auto& obj : clip.objects) {
      auto it = tracks.find(obj.track_id);
      if (it == tracks.end()) throw Error(Errc::BadValue, "caption refers to unknown track " + obj.track_id);
      std::vector<std::size_t> frames;
      auto samples = clip_samples(it->second, clip.segment, ego, pose_tolerance, &frames);
      std::size_t j = 0;
      for (std::size_t frame : obj.mask_frames) {
        while (j < frames.size() && frames[j] < frame) ++j;
        if (j == frames.size() || frames[j] != frame) continue;
        try {
          auto mask = object_mask(samples[j], calib, options);
          mask.clip_id = clip.clip_id;
          mask.frame = frame;
          run.masks.push_back(std::move(mask));
        } catch (const Error& e) {
          if (e.code() != Errc::NoLidarPoints && e.code() != Errc::NoProjectablePoints) throw;
          run.warnings.push_back({clip.clip_id, obj.track_id, frame, e.what()});
        }
      }
    }
  }
  return run;
}

}  // namespace lidarcap
