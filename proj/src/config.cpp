#include "lidarcap/config.hpp"

#include <fstream>
#include <set>

#include "lidarcap/error.hpp"

namespace lidarcap {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

// Reads typed fields from one JSON object and rejects keys nobody asked for.
class Section {
 public:
  Section(const json& j, std::string name) : j_(j), name_(std::move(name)) {
    if (!j_.is_object()) throw Error(Errc::BadConfig, name_ + " must be an object");
  }

  void number(const char* key, double& out) {
    if (auto* v = take(key)) {
      if (!v->is_number()) fail(key, "a number");
      out = v->get<double>();
    }
  }

  void count(const char* key, std::size_t& out) {
    if (auto* v = take(key)) {
      if (!v->is_number_integer() || v->get<long long>() < 0) fail(key, "a non-negative integer");
      out = v->get<std::size_t>();
    }
  }

  void optional_count(const char* key, std::optional<std::size_t>& out) {
    if (auto* v = take(key)) {
      if (v->is_null()) {
        out.reset();
        return;
      }
      if (!v->is_number_integer() || v->get<long long>() < 0) fail(key, "null or a non-negative integer");
      out = v->get<std::size_t>();
    }
  }

  void flag(const char* key, bool& out) {
    if (auto* v = take(key)) {
      if (!v->is_boolean()) fail(key, "a boolean");
      out = v->get<bool>();
    }
  }

  const json* sub(const char* key) { return take(key); }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key())) throw Error(Errc::BadConfig, "unknown config key " + name_ + "." + it.key());
  }

  const std::string& name() const { return name_; }

 private:
  const json* take(const char* key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  [[noreturn]] void fail(const char* key, const char* what) const {
    throw Error(Errc::BadConfig, name_ + "." + key + " must be " + what);
  }

  const json& j_;
  std::string name_;
  std::set<std::string> seen_;
};

void read_thresholds(Section& parent, const char* key, ClassThresholds& th) {
  const json* v = parent.sub(key);
  if (!v) return;
  Section s(*v, parent.name() + "." + key);
  s.number("T_x", th.T_x);
  s.number("T_y", th.T_y);
  s.number("T_s", th.T_s);
  s.number("T_m", th.T_m);
  s.finish();
}

ojson thresholds_json(const ClassThresholds& th) {
  ojson j;
  j["T_x"] = th.T_x;
  j["T_y"] = th.T_y;
  j["T_s"] = th.T_s;
  j["T_m"] = th.T_m;
  return j;
}

}  // namespace

void Config::validate() const {
  host.validate();
  neighbor.validate();
  if (eval.k == 0) throw Error(Errc::BadConfig, "eval.k must be >= 1");
  if (!(eval.window_s >= 0.0)) throw Error(Errc::BadConfig, "eval.window_s must be >= 0");
  if (templates.max_length == 0) throw Error(Errc::BadConfig, "templates.max_length must be >= 1");
}

Config config_from_json(const json& j) {
  Config cfg;
  Section root(j, "config");
  if (const json* v = root.sub("host")) {
    Section s(*v, "host");
    s.number("T_v", cfg.host.T_v);
    s.number("T_a", cfg.host.T_a);
    s.number("T_w", cfg.host.T_w);
    s.count("min_segment_frames", cfg.host.min_segment_frames);
    s.count("max_segment_frames", cfg.host.max_segment_frames);
    s.count("smoothing_window", cfg.host.smoothing_window);
    s.finish();
  }
  if (const json* v = root.sub("neighbor")) {
    Section s(*v, "neighbor");
    read_thresholds(s, "pedestrian", cfg.neighbor.pedestrian);
    read_thresholds(s, "car", cfg.neighbor.car);
    read_thresholds(s, "truck", cfg.neighbor.truck);
    read_thresholds(s, "bike", cfg.neighbor.bike);
    s.number("T_h", cfg.neighbor.T_h);
    s.number("oncoming_lower", cfg.neighbor.oncoming_lower);
    s.number("oncoming_upper", cfg.neighbor.oncoming_upper);
    s.number("lateral_lower", cfg.neighbor.lateral_lower);
    s.number("lateral_upper", cfg.neighbor.lateral_upper);
    s.count("min_presence_frames", cfg.neighbor.min_presence_frames);
    s.count("min_dwell_frames", cfg.neighbor.min_dwell_frames);
    s.flag("emit_host_lateral", cfg.neighbor.emit_host_lateral);
    s.flag("require_visibility", cfg.neighbor.require_visibility);
    s.number("pose_tolerance_s", cfg.neighbor.pose_tolerance);
    s.finish();
  }
  if (const json* v = root.sub("templates")) {
    Section s(*v, "templates");
    s.flag("include_host_lateral", cfg.templates.include_host_lateral);
    s.optional_count("first_pool", cfg.templates.first_pool);
    s.optional_count("followup_pool", cfg.templates.followup_pool);
    s.count("max_length", cfg.templates.max_length);
    s.finish();
  }
  if (const json* v = root.sub("eval")) {
    Section s(*v, "eval");
    s.count("k", cfg.eval.k);
    s.number("window_s", cfg.eval.window_s);
    s.finish();
  }
  if (const json* v = root.sub("mask")) {
    Section s(*v, "mask");
    s.flag("fallback_to_box_corners", cfg.mask.fallback_to_box_corners);
    s.flag("rasterize", cfg.mask.rasterize);
    s.finish();
  }
  root.finish();
  cfg.validate();
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::BadConfig, "cannot open config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(Errc::BadConfig, "config " + path + ": " + e.what());
  }
  return config_from_json(j);
}

ojson config_to_json(const Config& cfg) {
  ojson j;
  auto& h = j["host"];
  h["T_v"] = cfg.host.T_v;
  h["T_a"] = cfg.host.T_a;
  h["T_w"] = cfg.host.T_w;
  h["min_segment_frames"] = cfg.host.min_segment_frames;
  h["max_segment_frames"] = cfg.host.max_segment_frames;
  h["smoothing_window"] = cfg.host.smoothing_window;

  auto& n = j["neighbor"];
  n["pedestrian"] = thresholds_json(cfg.neighbor.pedestrian);
  n["car"] = thresholds_json(cfg.neighbor.car);
  n["truck"] = thresholds_json(cfg.neighbor.truck);
  n["bike"] = thresholds_json(cfg.neighbor.bike);
  n["T_h"] = cfg.neighbor.T_h;
  n["oncoming_lower"] = cfg.neighbor.oncoming_lower;
  n["oncoming_upper"] = cfg.neighbor.oncoming_upper;
  n["lateral_lower"] = cfg.neighbor.lateral_lower;
  n["lateral_upper"] = cfg.neighbor.lateral_upper;
  n["min_presence_frames"] = cfg.neighbor.min_presence_frames;
  n["min_dwell_frames"] = cfg.neighbor.min_dwell_frames;
  n["emit_host_lateral"] = cfg.neighbor.emit_host_lateral;
  n["require_visibility"] = cfg.neighbor.require_visibility;
  n["pose_tolerance_s"] = cfg.neighbor.pose_tolerance;

  auto& t = j["templates"];
  t["include_host_lateral"] = cfg.templates.include_host_lateral;
  t["first_pool"] = cfg.templates.first_pool ? ojson(*cfg.templates.first_pool) : ojson(nullptr);
  t["followup_pool"] = cfg.templates.followup_pool ? ojson(*cfg.templates.followup_pool) : ojson(nullptr);
  t["max_length"] = cfg.templates.max_length;

  auto& e = j["eval"];
  e["k"] = cfg.eval.k;
  e["window_s"] = cfg.eval.window_s;

  auto& m = j["mask"];
  m["fallback_to_box_corners"] = cfg.mask.fallback_to_box_corners;
  m["rasterize"] = cfg.mask.rasterize;
  return j;
}

}  // namespace lidarcap
