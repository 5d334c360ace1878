#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lidarcap/camera.hpp"
#include "lidarcap/domain.hpp"
#include "lidarcap/embedding.hpp"
#include "lidarcap/mask_geometry.hpp"
#include "lidarcap/pipeline.hpp"
#include "lidarcap/retrieval_eval.hpp"
#include "lidarcap/scenario_synth.hpp"

namespace lidarcap {

// Loaders read JSON-Lines (blank lines skipped); error line numbers are 1-based file lines.

EgoTelemetry load_ego_telemetry(const std::string& path);
EgoTelemetry read_ego_telemetry(std::istream& in);

// Groups by track_id and sorts each group by time. Unknown classes become
// Other unless `strict_classes`, which raises BadClass. Each track takes the
// majority class of its samples (lowest class on ties).
TrackMap load_tracks(const std::string& path, bool strict_classes = false);
TrackMap read_tracks(std::istream& in, bool strict_classes = false);

CameraCalibration load_calibration(const std::string& path);
CameraCalibration read_calibration(std::istream& in);

EmbeddingIndex load_embeddings(const std::string& path);
EmbeddingIndex read_embeddings(std::istream& in);

std::vector<ExpectedTags> read_expected_tags(std::istream& in);

// Writers emit doubles in shortest round-trip form; output is byte-stable.

void write_ego_telemetry(std::ostream& out, const EgoTelemetry& ego);
void write_tracks(std::ostream& out, const TrackMap& tracks);
void write_calibration(std::ostream& out, const CameraCalibration& calib);
void write_embeddings(std::ostream& out, const std::vector<EmbeddingRecord>& records);
void write_expected_tags(std::ostream& out, const std::vector<ExpectedTags>& expected);
void write_captions(std::ostream& out, const std::vector<ClipCaption>& captions);
void write_masks(std::ostream& out, const std::vector<MaskArtifact>& masks);
void write_vbm_report(std::ostream& out, const VbmReport& report);
void write_vbm_csv(std::ostream& out, const VbmReport& report);

// Writes to `path` through a temporary; throws Io on failure.
void write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

}  // namespace lidarcap
