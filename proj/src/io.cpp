#include "lidarcap/io.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "lidarcap/error.hpp"

namespace lidarcap {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open " + path);
  return in;
}

void for_each_record(std::istream& in, const std::function<void(const json&, std::size_t)>& fn) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); })) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(Errc::ParseError, e.what(), lineno);
    } catch (const json::out_of_range&) {
      // numeric literal beyond double range, e.g. 1e999
      throw Error(Errc::NonFiniteValue, "number out of range", lineno);
    }
    if (!rec.is_object()) throw Error(Errc::ParseError, "record is not a JSON object", lineno);
    fn(rec, lineno);
  }
}

const json& require(const json& rec, const char* key, std::size_t line) {
  auto it = rec.find(key);
  if (it == rec.end()) throw Error(Errc::MissingKey, std::string("missing key \"") + key + "\"", line);
  return *it;
}

double as_number(const json& v, const std::string& key, std::size_t line) {
  // null is how non-finite doubles serialize
  if (v.is_null()) throw Error(Errc::NonFiniteValue, "\"" + key + "\" is not finite", line);
  if (!v.is_number()) throw Error(Errc::BadValue, "\"" + key + "\" must be a number", line);
  double x = v.get<double>();
  if (!std::isfinite(x)) throw Error(Errc::NonFiniteValue, "\"" + key + "\" is not finite", line);
  return x;
}

double number(const json& rec, const char* key, std::size_t line) { return as_number(require(rec, key, line), key, line); }

std::string string_field(const json& rec, const char* key, std::size_t line) {
  const auto& v = require(rec, key, line);
  if (!v.is_string()) throw Error(Errc::BadValue, std::string("\"") + key + "\" must be a string", line);
  return v.get<std::string>();
}

std::vector<double> number_array(const json& v, const std::string& key, std::size_t line) {
  if (!v.is_array()) throw Error(Errc::BadValue, "\"" + key + "\" must be an array", line);
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(as_number(x, key, line));
  return out;
}

Vec3 vec3(const json& v, const std::string& key, std::size_t line) {
  auto a = number_array(v, key, line);
  if (a.size() != 3) throw Error(Errc::BadValue, "\"" + key + "\" must have 3 entries", line);
  return {a[0], a[1], a[2]};
}

ojson to_json(Vec3 v) { return ojson::array({v.x, v.y, v.z}); }

void write_line(std::ostream& out, const ojson& j) { out << j.dump() << '\n'; }

}  // namespace

EgoTelemetry read_ego_telemetry(std::istream& in) {
  std::vector<EgoSample> samples;
  for_each_record(in, [&](const json& rec, std::size_t line) {
    EgoSample s;
    s.t = number(rec, "t", line);
    s.v = number(rec, "v", line);
    s.yaw_rate = number(rec, "yaw_rate", line);
    s.pose.x = number(rec, "x", line);
    s.pose.y = number(rec, "y", line);
    s.pose.heading = number(rec, "heading", line);
    if (s.v < 0.0) throw Error(Errc::BadValue, "host speed must be non-negative", line);
    if (!samples.empty() && !(s.t > samples.back().t))
      throw Error(Errc::NonMonotoneTime, "telemetry time must strictly increase", line);
    samples.push_back(s);
  });
  return EgoTelemetry(std::move(samples));
}

EgoTelemetry load_ego_telemetry(const std::string& path) {
  auto in = open_input(path);
  return read_ego_telemetry(in);
}

TrackMap read_tracks(std::istream& in, bool strict_classes) {
  struct Row {
    TrackSample sample;
    std::size_t line;
  };
  std::map<std::string, std::vector<Row>> groups;
  for_each_record(in, [&](const json& rec, std::size_t line) {
    TrackSample s;
    s.track_id = string_field(rec, "track_id", line);
    s.t = number(rec, "t", line);
    auto cls_text = string_field(rec, "class", line);
    bool known = true;
    s.cls = parse_object_class(cls_text, &known);
    if (!known && strict_classes) throw Error(Errc::BadClass, "unknown class \"" + cls_text + "\"", line);
    s.center = vec3(require(rec, "center", line), "center", line);
    s.size = vec3(require(rec, "size", line), "size", line);
    if (!(s.size.x > 0.0 && s.size.y > 0.0 && s.size.z > 0.0))
      throw Error(Errc::BadValue, "box size must be positive", line);
    s.yaw = wrap_two_pi(number(rec, "yaw", line));
    if (auto it = rec.find("points"); it != rec.end() && !it->is_null()) {
      if (!it->is_array()) throw Error(Errc::BadValue, "\"points\" must be an array", line);
      s.points.reserve(it->size());
      for (const auto& p : *it) s.points.push_back(vec3(p, "points", line));
    }
    groups[s.track_id].push_back({std::move(s), line});
  });

  TrackMap tracks;
  for (auto& [id, rows] : groups) {
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.sample.t < b.sample.t; });
    std::map<ObjectClass, std::size_t> votes;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i > 0 && rows[i].sample.t == rows[i - 1].sample.t) {
        std::size_t later = std::max(rows[i].line, rows[i - 1].line);
        throw Error(Errc::NonMonotoneTime, "duplicate timestamp in track " + id, later);
      }
      ++votes[rows[i].sample.cls];
    }
    // std::map iterates classes in enum order, so ties resolve to the lowest.
    ObjectClass majority = votes.begin()->first;
    std::size_t best = 0;
    for (const auto& [cls, count] : votes) {
      if (count > best) {
        best = count;
        majority = cls;
      }
    }
    ObjectTrack track;
    track.id = id;
    track.cls = majority;
    track.samples.reserve(rows.size());
    for (auto& r : rows) {
      r.sample.cls = majority;
      track.samples.push_back(std::move(r.sample));
    }
    tracks.emplace(id, std::move(track));
  }
  return tracks;
}

TrackMap load_tracks(const std::string& path, bool strict_classes) {
  auto in = open_input(path);
  return read_tracks(in, strict_classes);
}

CameraCalibration read_calibration(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(Errc::ParseError, e.what());
  }
  if (!j.is_object()) throw Error(Errc::ParseError, "calibration must be a JSON object");
  // A single object has no meaningful line; report line 1.
  constexpr std::size_t line = 1;
  CameraCalibration c;
  const auto& R = require(j, "R", line);
  if (!R.is_array() || R.size() != 3) throw Error(Errc::NonOrthonormalRotation, "R must be 3x3", line);
  for (std::size_t r = 0; r < 3; ++r) {
    auto row = number_array(R[r], "R", line);
    if (row.size() != 3) throw Error(Errc::NonOrthonormalRotation, "R must be 3x3", line);
    for (std::size_t k = 0; k < 3; ++k) c.R[r][k] = row[k];
  }
  c.t = vec3(require(j, "t", line), "t", line);
  c.fx = number(j, "fx", line);
  c.fy = number(j, "fy", line);
  c.cx = number(j, "cx", line);
  c.cy = number(j, "cy", line);
  auto dist = number_array(require(j, "dist", line), "dist", line);
  if (dist.size() != 4) throw Error(Errc::BadValue, "dist must be [k1, k2, p1, p2]", line);
  std::copy(dist.begin(), dist.end(), c.dist.begin());
  const auto& w = require(j, "width", line);
  const auto& h = require(j, "height", line);
  if (!w.is_number_integer() || !h.is_number_integer())
    throw Error(Errc::BadIntrinsics, "width and height must be integers", line);
  c.width = w.get<int>();
  c.height = h.get<int>();
  c.validate();
  return c;
}

CameraCalibration load_calibration(const std::string& path) {
  auto in = open_input(path);
  return read_calibration(in);
}

EmbeddingIndex read_embeddings(std::istream& in) {
  std::vector<EmbeddingRecord> records;
  std::set<std::string> seen;
  std::size_t dim = 0;
  for_each_record(in, [&](const json& rec, std::size_t line) {
    EmbeddingRecord r;
    r.clip_id = string_field(rec, "clip_id", line);
    r.t_record = number(rec, "t_record", line);
    r.vec = number_array(require(rec, "vec", line), "vec", line);
    r.caption = string_field(rec, "caption", line);
    if (r.vec.empty()) throw Error(Errc::BadValue, "\"vec\" is empty", line);
    if (records.empty()) dim = r.vec.size();
    if (r.vec.size() != dim)
      throw Error(Errc::DimensionMismatch,
                  "expected dimension " + std::to_string(dim) + ", got " + std::to_string(r.vec.size()), line);
    if (std::all_of(r.vec.begin(), r.vec.end(), [](double x) { return x == 0.0; }))
      throw Error(Errc::ZeroVector, "embedding of " + r.clip_id + " is the zero vector", line);
    if (!seen.insert(r.clip_id).second) throw Error(Errc::DuplicateClipId, "duplicate clip_id \"" + r.clip_id + "\"", line);
    records.push_back(std::move(r));
  });
  if (records.empty()) throw Error(Errc::BadValue, "embedding file has no records");
  return EmbeddingIndex(std::move(records));
}

EmbeddingIndex load_embeddings(const std::string& path) {
  auto in = open_input(path);
  return read_embeddings(in);
}

std::vector<ExpectedTags> read_expected_tags(std::istream& in) {
  std::vector<ExpectedTags> out;
  for_each_record(in, [&](const json& rec, std::size_t line) {
    ExpectedTags e;
    e.track_id = string_field(rec, "track_id", line);
    const auto& u = require(rec, "unified", line);
    if (!u.is_array()) throw Error(Errc::BadValue, "\"unified\" must be an array", line);
    for (const auto& tag : u) {
      auto parsed = tag.is_string() ? parse_concatenated_tag(tag.get<std::string>()) : std::nullopt;
      if (!parsed) throw Error(Errc::BadValue, "bad concatenated tag " + tag.dump(), line);
      e.unified.push_back(*parsed);
    }
    out.push_back(std::move(e));
  });
  return out;
}

void write_ego_telemetry(std::ostream& out, const EgoTelemetry& ego) {
  for (const auto& s : ego.samples()) {
    ojson j;
    j["t"] = s.t;
    j["v"] = s.v;
    j["yaw_rate"] = s.yaw_rate;
    j["x"] = s.pose.x;
    j["y"] = s.pose.y;
    j["heading"] = s.pose.heading;
    write_line(out, j);
  }
}

void write_tracks(std::ostream& out, const TrackMap& tracks) {
  for (const auto& [id, track] : tracks) {
    for (const auto& s : track.samples) {
      ojson j;
      j["track_id"] = id;
      j["t"] = s.t;
      j["class"] = std::string(to_string(s.cls));
      j["center"] = to_json(s.center);
      j["size"] = to_json(s.size);
      j["yaw"] = s.yaw;
      if (!s.points.empty()) {
        ojson pts = ojson::array();
        for (const auto& p : s.points) pts.push_back(to_json(p));
        j["points"] = std::move(pts);
      }
      write_line(out, j);
    }
  }
}

void write_calibration(std::ostream& out, const CameraCalibration& c) {
  ojson j;
  ojson R = ojson::array();
  for (const auto& row : c.R) R.push_back(ojson::array({row[0], row[1], row[2]}));
  j["R"] = std::move(R);
  j["t"] = to_json(c.t);
  j["fx"] = c.fx;
  j["fy"] = c.fy;
  j["cx"] = c.cx;
  j["cy"] = c.cy;
  j["dist"] = ojson::array({c.dist[0], c.dist[1], c.dist[2], c.dist[3]});
  j["width"] = c.width;
  j["height"] = c.height;
  out << j.dump(2) << '\n';
}

void write_embeddings(std::ostream& out, const std::vector<EmbeddingRecord>& records) {
  for (const auto& r : records) {
    ojson j;
    j["clip_id"] = r.clip_id;
    j["t_record"] = r.t_record;
    j["vec"] = r.vec;
    j["caption"] = r.caption;
    write_line(out, j);
  }
}

void write_expected_tags(std::ostream& out, const std::vector<ExpectedTags>& expected) {
  for (const auto& e : expected) {
    ojson j;
    j["track_id"] = e.track_id;
    ojson u = ojson::array();
    for (const auto& t : e.unified) u.push_back(to_string(t));
    j["unified"] = std::move(u);
    write_line(out, j);
  }
}

void write_captions(std::ostream& out, const std::vector<ClipCaption>& captions) {
  for (const auto& c : captions) {
    ojson j;
    j["clip_id"] = c.clip_id;
    j["frame_start"] = c.segment.frame_start;
    j["frame_end"] = c.segment.frame_end;
    j["host_caption"] = c.host_caption;
    ojson objects = ojson::array();
    for (const auto& o : c.objects) {
      ojson oj;
      oj["track_id"] = o.track_id;
      oj["caption"] = o.caption;
      ojson tags = ojson::array();
      for (const auto& t : o.unified) tags.push_back(to_string(t));
      oj["unified_tags"] = std::move(tags);
      oj["length"] = o.length;
      objects.push_back(std::move(oj));
    }
    j["objects"] = std::move(objects);
    write_line(out, j);
  }
}

void write_masks(std::ostream& out, const std::vector<MaskArtifact>& masks) {
  for (const auto& m : masks) {
    ojson j;
    j["clip_id"] = m.clip_id;
    j["track_id"] = m.track_id;
    j["frame"] = m.frame;
    ojson poly = ojson::array();
    for (const auto& v : m.polygon.vertices) poly.push_back(ojson::array({v.x, v.y}));
    j["polygon"] = std::move(poly);
    write_line(out, j);
  }
}

void write_vbm_report(std::ostream& out, const VbmReport& r) {
  ojson j;
  j["k"] = r.k;
  j["window"] = r.window;
  j["B_k"] = r.B_k;
  j["C_k"] = r.C_k;
  j["vbm"] = r.vbm ? ojson(*r.vbm) : ojson(nullptr);
  j["short"] = r.any_short;
  ojson rows = ojson::array();
  for (const auto& q : r.per_query) {
    ojson row;
    row["clip_id"] = q.clip_id;
    row["b"] = q.b;
    row["c"] = q.c;
    row["short_unconstrained"] = q.short_unconstrained;
    row["short_constrained"] = q.short_constrained;
    rows.push_back(std::move(row));
  }
  j["per_query"] = std::move(rows);
  out << j.dump(2) << '\n';
}

void write_vbm_csv(std::ostream& out, const VbmReport& r) {
  out << "clip_id,b,c,short_unconstrained,short_constrained\n";
  for (const auto& q : r.per_query) {
    // ojson gives the same shortest round-trip digits as the JSON report
    out << q.clip_id << ',' << ojson(q.b).dump() << ',' << ojson(q.c).dump() << ','
        << (q.short_unconstrained ? "true" : "false") << ',' << (q.short_constrained ? "true" : "false") << '\n';
  }
}

void write_file(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::Io, "cannot write " + tmp.string());
    out << contents;
    if (!out) throw Error(Errc::Io, "write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw Error(Errc::Io, "cannot move " + tmp.string() + " to " + path + ": " + ec.message());
}

std::string read_file(const std::string& path) {
  auto in = open_input(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace lidarcap
