// lidarcap: caption, mask, eval, synth, audit-templates.
// Exit codes: 0 ok, 1 data error, 2 usage or config error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lidarcap/caption_templater.hpp"
#include "lidarcap/config.hpp"
#include "lidarcap/error.hpp"
#include "lidarcap/io.hpp"
#include "lidarcap/pipeline.hpp"
#include "lidarcap/retrieval_eval.hpp"
#include "lidarcap/scenario_synth.hpp"

namespace fs = std::filesystem;
using namespace lidarcap;
using ojson = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

// Usage and config problems exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Data errors keep the file they came from.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool is_config_code(Errc c) { return c == Errc::BadConfig || c == Errc::BadParams || c == Errc::LengthExceedsPool; }

template <class F>
auto load(const std::string& path, F&& fn) {
  try {
    return fn(path);
  } catch (const Error& e) {
    std::string where = path;
    if (e.line()) where += ":" + std::to_string(*e.line());
    throw DataError(where + ": " + e.what());
  }
}

struct Common {
  std::string config_path;
  std::string out_dir;
  int workers = 0;
};

void add_common(CLI::App* sub, Common& c, bool needs_out = true) {
  sub->add_option("--config", c.config_path, "JSON config (sections host, neighbor, templates, eval, mask)");
  auto* out = sub->add_option("--out", c.out_dir, "output directory");
  if (needs_out) out->required();
  sub->add_option("--workers", c.workers, "worker threads (0 = available parallelism)")->check(CLI::NonNegativeNumber);
}

Config effective_config(const Common& c) {
  if (c.config_path.empty()) return Config{};
  try {
    return load_config(c.config_path);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError("cannot create " + dir + ": " + ec.message());
}

std::string join(const std::string& dir, const std::string& name) { return (fs::path(dir) / name).string(); }

void write_meta(const std::string& dir, const std::string& subcommand, const Config& cfg, const ojson& inputs,
                int workers) {
  ojson meta;
  meta["tool"] = "lidarcap";
  meta["version"] = kVersion;
  meta["subcommand"] = subcommand;
  meta["inputs"] = inputs;
  meta["workers"] = workers;
  meta["config"] = config_to_json(cfg);
  write_file(join(dir, "meta.json"), meta.dump(2) + "\n");
}

template <class W, class T>
std::string render(W&& writer, const T& value) {
  std::ostringstream ss;
  writer(ss, value);
  return ss.str();
}

struct RecordingInputs {
  std::string telemetry;
  std::string tracks;
  std::string calibration;
  std::string recording;
  bool strict_classes = false;
};

void add_recording_inputs(CLI::App* sub, RecordingInputs& in) {
  sub->add_option("--telemetry", in.telemetry, "ego telemetry JSON-Lines")->required();
  sub->add_option("--tracks", in.tracks, "object tracks JSON-Lines")->required();
  sub->add_option("--calibration", in.calibration, "camera calibration JSON");
  sub->add_option("--recording", in.recording, "recording name used in clip ids (default: telemetry file stem)");
  sub->add_flag("--strict-classes", in.strict_classes, "reject unknown object classes");
}

struct Loaded {
  EgoTelemetry ego;
  TrackMap tracks;
  std::optional<CameraCalibration> calib;
  std::string recording;
};

Loaded load_recording(const RecordingInputs& in, bool need_calibration, const char* why) {
  Loaded l;
  if (need_calibration && in.calibration.empty())
    throw UsageError(std::string("--calibration is required ") + why);
  l.ego = load(in.telemetry, [](const std::string& p) { return load_ego_telemetry(p); });
  l.tracks = load(in.tracks, [&](const std::string& p) { return load_tracks(p, in.strict_classes); });
  if (!in.calibration.empty()) l.calib = load(in.calibration, [](const std::string& p) { return load_calibration(p); });
  l.recording = in.recording.empty() ? fs::path(in.telemetry).stem().string() : in.recording;
  return l;
}

ojson recording_inputs_json(const RecordingInputs& in, const std::string& recording) {
  ojson j;
  j["telemetry"] = in.telemetry;
  j["tracks"] = in.tracks;
  j["calibration"] = in.calibration.empty() ? ojson(nullptr) : ojson(in.calibration);
  j["recording"] = recording;
  j["strict_classes"] = in.strict_classes;
  return j;
}

std::vector<ClipCaption> run_captions(const Loaded& l, const Config& cfg, int workers) {
  const CameraCalibration* calib = l.calib ? &*l.calib : nullptr;
  try {
    return caption_recording(l.recording, l.ego, l.tracks, calib, cfg.pipeline(), workers);
  } catch (const Error& e) {
    if (is_config_code(e.code())) throw UsageError(e.what());
    throw DataError(e.what());
  }
}

int cmd_caption(const Common& c, const RecordingInputs& in) {
  Config cfg = effective_config(c);
  auto l = load_recording(in, cfg.neighbor.require_visibility,
                          "when neighbor.require_visibility is enabled (set it to false in --config to skip)");
  auto captions = run_captions(l, cfg, c.workers);

  ensure_dir(c.out_dir);
  write_file(join(c.out_dir, "captions.jsonl"), render(write_captions, captions));
  write_meta(c.out_dir, "caption", cfg, recording_inputs_json(in, l.recording), c.workers);

  std::size_t neighbors = 0;
  std::map<std::size_t, std::size_t> by_length;
  for (const auto& clip : captions) {
    neighbors += clip.objects.size();
    for (const auto& o : clip.objects) ++by_length[o.length];
  }
  std::cout << "clips: " << captions.size() << "\n";
  std::cout << "neighbors: " << neighbors << "\n";
  for (const auto& [len, count] : by_length) std::cout << "captions of length " << len << ": " << count << "\n";
  return 0;
}

std::string pgm_name(const MaskArtifact& m) {
  return m.clip_id + "_" + m.track_id + "_" + std::to_string(m.frame) + ".pgm";
}

int cmd_mask(const Common& c, const RecordingInputs& in, bool raster) {
  Config cfg = effective_config(c);
  if (raster) cfg.mask.rasterize = true;
  auto l = load_recording(in, true, "for the mask subcommand");
  auto captions = run_captions(l, cfg, c.workers);
  MaskRun run;
  try {
    run = mask_recording(captions, l.tracks, l.ego, *l.calib, cfg.mask, cfg.neighbor.pose_tolerance);
  } catch (const Error& e) {
    throw DataError(e.what());
  }
  for (auto& w : run.warnings)
    std::cerr << "warning: " << w.clip_id << " " << w.track_id << " frame " << w.frame << ": " << w.message
              << " (skipped)\n";

  ensure_dir(c.out_dir);
  write_file(join(c.out_dir, "masks.jsonl"), render(write_masks, run.masks));
  if (cfg.mask.rasterize) {
    const std::string dir = join(c.out_dir, "masks");
    ensure_dir(dir);
    for (const auto& m : run.masks)
      if (m.raster) write_pgm(join(dir, pgm_name(m)), *m.raster);
  }
  ojson inputs = recording_inputs_json(in, l.recording);
  write_meta(c.out_dir, "mask", cfg, inputs, c.workers);
  std::cout << "masks: " << run.masks.size() << "\n";
  std::cout << "skipped: " << run.warnings.size() << "\n";
  return 0;
}

int cmd_eval(const Common& c, const std::string& embeddings, std::optional<std::size_t> k,
             std::optional<double> window) {
  Config cfg = effective_config(c);
  if (k) cfg.eval.k = *k;
  if (window) cfg.eval.window_s = *window;
  try {
    cfg.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  auto index = load(embeddings, [](const std::string& p) { return load_embeddings(p); });
  auto report = vbm(index, cfg.eval.k, cfg.eval.window_s);

  ensure_dir(c.out_dir);
  write_file(join(c.out_dir, "vbm_report.json"), render(write_vbm_report, report));
  write_file(join(c.out_dir, "vbm_per_query.csv"), render(write_vbm_csv, report));
  ojson inputs;
  inputs["embeddings"] = embeddings;
  write_meta(c.out_dir, "eval", cfg, inputs, c.workers);

  std::cout << "clips: " << index.size() << "\n";
  std::cout << "B_k: " << report.B_k << "\n";
  std::cout << "C_k: " << report.C_k << "\n";
  std::cout << "vbm: " << (report.vbm ? std::to_string(*report.vbm) : std::string("undefined")) << "\n";
  if (report.any_short) std::cout << "short: true (fewer than k neighbors for some queries)\n";
  return 0;
}

struct SynthArgs {
  std::string kind = "all";
  std::uint64_t seed = 0;
  std::optional<double> host_speed;
  double duration_s = 10.0;
  int rate_hz = 10;
  double sigma_pos = 0.0;
  double sigma_yaw = 0.0;
  std::size_t embeddings = 0;
  std::size_t dim = 64;
};

int cmd_synth(const Common& c, const SynthArgs& a) {
  Config cfg = effective_config(c);
  std::vector<ScenarioKind> kinds;
  if (a.kind == "all") {
    kinds = all_scenarios();
  } else if (auto k = parse_scenario_kind(a.kind)) {
    kinds = {*k};
  } else {
    throw UsageError("unknown scenario kind " + a.kind);
  }
  ScenarioParams params{a.host_speed, a.duration_s, a.rate_hz};
  ensure_dir(c.out_dir);
  for (auto kind : kinds) {
    Scenario sc;
    try {
      sc = inject_noise(generate_scenario(kind, params, a.seed), a.sigma_pos, a.sigma_yaw, a.seed);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    const std::string dir = join(c.out_dir, sc.name);
    ensure_dir(dir);
    write_file(join(dir, "telemetry.jsonl"), render(write_ego_telemetry, sc.ego));
    write_file(join(dir, "tracks.jsonl"), render(write_tracks, sc.tracks));
    write_file(join(dir, "calibration.json"), render(write_calibration, sc.calib));
    write_file(join(dir, "expected_tags.jsonl"), render(write_expected_tags, sc.expected));
    std::cout << sc.name << ": " << sc.ego.size() << " frames, " << sc.tracks.size() << " tracks, "
              << sc.expected.size() << " captioned\n";
  }
  if (a.embeddings > 0) {
    try {
      write_file(join(c.out_dir, "embeddings_biased.jsonl"),
                 render(write_embeddings, biased_embeddings(a.embeddings, a.dim, a.seed)));
      write_file(join(c.out_dir, "embeddings_semantic.jsonl"),
                 render(write_embeddings, semantic_embeddings(a.embeddings, a.dim, a.seed)));
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    std::cout << "embeddings: 2 x " << a.embeddings << " records, dim " << a.dim << "\n";
  }
  ojson inputs;
  inputs["kind"] = a.kind;
  inputs["seed"] = a.seed;
  inputs["host_speed"] = a.host_speed ? ojson(*a.host_speed) : ojson(nullptr);
  inputs["duration_s"] = a.duration_s;
  inputs["rate_hz"] = a.rate_hz;
  inputs["sigma_pos"] = a.sigma_pos;
  inputs["sigma_yaw"] = a.sigma_yaw;
  inputs["embeddings"] = a.embeddings;
  inputs["dim"] = a.dim;
  write_meta(c.out_dir, "synth", cfg, inputs, c.workers);
  return 0;
}

int cmd_audit(const Common& c, std::optional<std::size_t> first, std::optional<std::size_t> followup,
              std::optional<std::size_t> max_n, bool host_lateral) {
  Config cfg = effective_config(c);
  if (first) cfg.templates.first_pool = first;
  if (followup) cfg.templates.followup_pool = followup;
  if (max_n) cfg.templates.max_length = *max_n;
  if (host_lateral) cfg.templates.include_host_lateral = true;
  if (cfg.templates.max_length == 0) throw UsageError("--max-n must be >= 1");

  auto pool = TemplatePool::enumerate(cfg.templates.include_host_lateral);
  const std::size_t A = cfg.templates.first_pool.value_or(pool.first_size());
  const std::size_t B = cfg.templates.followup_pool.value_or(pool.followup_size());
  std::cout << "enumerated first sentences |A|: " << pool.first_size() << "\n";
  std::cout << "enumerated follow-ups |B|: " << pool.followup_size() << "\n";
  if (cfg.templates.first_pool || cfg.templates.followup_pool)
    std::cout << "using A = " << A << ", B = " << B << "\n";

  ojson table = ojson::array();
  for (std::size_t n = 1; n <= cfg.templates.max_length; ++n) {
    BigCount count;
    try {
      count = caption_space_size(A, B, n);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    std::cout << "n=" << n << ": " << count.str() << "\n";
    ojson row;
    row["n"] = n;
    row["count"] = count.str();
    table.push_back(std::move(row));
  }
  if (!c.out_dir.empty()) {
    ensure_dir(c.out_dir);
    ojson j;
    j["enumerated_first"] = pool.first_size();
    j["enumerated_followup"] = pool.followup_size();
    j["A"] = A;
    j["B"] = B;
    j["caption_space"] = std::move(table);
    write_file(join(c.out_dir, "templates_audit.json"), j.dump(2) + "\n");
    write_meta(c.out_dir, "audit-templates", cfg, ojson::object(), c.workers);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rule-based scene captions from LiDAR object tracks"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Common common;
  RecordingInputs rec;

  auto* caption = app.add_subcommand("caption", "segment clips, select neighbors, tag and caption");
  add_common(caption, common);
  add_recording_inputs(caption, rec);

  bool raster = false;
  auto* mask = app.add_subcommand("mask", "convex-hull masks for captioned neighbors");
  add_common(mask, common);
  add_recording_inputs(mask, rec);
  mask->add_flag("--raster", raster, "also write PGM rasters");

  std::string embeddings;
  std::optional<std::size_t> k;
  std::optional<double> window;
  auto* eval = app.add_subcommand("eval", "visual bias measure over an embedding index");
  add_common(eval, common);
  eval->add_option("--embeddings", embeddings, "embeddings JSON-Lines")->required();
  eval->add_option("--k", k, "neighbors per query");
  eval->add_option("--window-s", window, "half-width of the time exclusion window, seconds");

  SynthArgs sa;
  auto* synth = app.add_subcommand("synth", "write synthetic scenarios with expected tags");
  add_common(synth, common);
  synth->add_option("--kind", sa.kind, "scenario kind or 'all'");
  synth->add_option("--seed", sa.seed, "random seed");
  synth->add_option("--host-speed", sa.host_speed, "host speed, m/s");
  synth->add_option("--duration-s", sa.duration_s, "scenario duration, s");
  synth->add_option("--rate-hz", sa.rate_hz, "sample rate, Hz");
  synth->add_option("--sigma-pos", sa.sigma_pos, "center noise, m");
  synth->add_option("--sigma-yaw", sa.sigma_yaw, "yaw noise, rad");
  synth->add_option("--embeddings", sa.embeddings, "also write biased and semantic embedding sets of this size");
  synth->add_option("--dim", sa.dim, "embedding dimension");

  std::optional<std::size_t> first_pool, followup_pool, max_n;
  bool host_lateral = false;
  auto* audit = app.add_subcommand("audit-templates", "template pool sizes and caption-space counts");
  add_common(audit, common, false);
  audit->add_option("--first-pool", first_pool, "override |A|");
  audit->add_option("--followup-pool", followup_pool, "override |B|");
  audit->add_option("--max-n", max_n, "largest caption length to count");
  audit->add_flag("--include-host-lateral", host_lateral, "include host-lateral templates in the pools");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*caption) return cmd_caption(common, rec);
    if (*mask) return cmd_mask(common, rec, raster);
    if (*eval) return cmd_eval(common, embeddings, k, window);
    if (*synth) return cmd_synth(common, sa);
    if (*audit) return cmd_audit(common, first_pool, followup_pool, max_n, host_lateral);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_config_code(e.code()) ? 2 : 1;
  }
  return 2;
}
