#include "lidarcap/scenario_synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "lidarcap/caption_templater.hpp"
#include "lidarcap/error.hpp"
#include "lidarcap/kinematics.hpp"

namespace lidarcap {

std::string_view to_string(ScenarioKind kind) noexcept {
  switch (kind) {
    case ScenarioKind::OvertakeLeft: return "overtake_left";
    case ScenarioKind::CutInRight: return "cut_in_right";
    case ScenarioKind::OncomingPass: return "oncoming_pass";
    case ScenarioKind::PedestrianCross: return "pedestrian_cross";
    case ScenarioKind::LeadFollow: return "lead_follow";
    case ScenarioKind::ParkedRow: return "parked_row";
  }
  return "overtake_left";
}

std::optional<ScenarioKind> parse_scenario_kind(std::string_view text) noexcept {
  for (auto k : all_scenarios())
    if (to_string(k) == text) return k;
  return std::nullopt;
}

std::vector<ScenarioKind> all_scenarios() {
  return {ScenarioKind::OvertakeLeft,    ScenarioKind::CutInRight, ScenarioKind::OncomingPass,
          ScenarioKind::PedestrianCross, ScenarioKind::LeadFollow, ScenarioKind::ParkedRow};
}

namespace {

constexpr Vec3 kCarSize{4.5, 1.9, 1.6};
constexpr Vec3 kPedestrianSize{0.6, 0.6, 1.75};
constexpr int kPointsInBox = 60;
constexpr int kPointsOutside = 10;

// World-frame state of one object at one instant.
struct WorldState {
  double x, y, heading;
};

class Builder {
 public:
  Builder(const ScenarioParams& p, double host_speed, std::uint64_t seed) : rng_(seed) {
    const auto n = static_cast<std::size_t>(std::llround(p.duration_s * p.rate_hz));
    std::vector<EgoSample> samples(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double t = static_cast<double>(i) / p.rate_hz;
      samples[i] = {t, host_speed, 0.0, {host_speed * t, 0.0, 0.0}};
    }
    ego_ = EgoTelemetry(std::move(samples));
  }

  const EgoTelemetry& ego() const { return ego_; }

  template <class F>
  void add(const std::string& id, ObjectClass cls, Vec3 size, F&& world_at) {
    ObjectTrack track{id, cls, {}};
    for (const auto& e : ego_.samples()) {
      WorldState w = world_at(e.t);
      Vec2 h = world_to_host(e.pose, {w.x, w.y});
      TrackSample s;
      s.track_id = id;
      s.t = e.t;
      s.cls = cls;
      s.center = {h.x, h.y, size.z / 2.0};
      s.size = size;
      // host-frame yaw turns toward +y (right), i.e. clockwise in the world
      s.yaw = wrap_two_pi(-(w.heading - e.pose.heading));
      s.points = scatter_points(s);
      track.samples.push_back(std::move(s));
    }
    tracks_.emplace(id, std::move(track));
  }

  TrackMap take_tracks() { return std::move(tracks_); }

 private:
  std::vector<Vec3> scatter_points(const TrackSample& s) {
    std::uniform_real_distribution<double> u(-0.45, 0.45);
    std::uniform_real_distribution<double> lift(0.3, 1.0);
    const double c = std::cos(s.yaw), sn = std::sin(s.yaw);
    auto place = [&](double a, double b, double z) {
      return Vec3{s.center.x + a * c - b * sn, s.center.y + a * sn + b * c, z};
    };
    std::vector<Vec3> pts;
    pts.reserve(kPointsInBox + kPointsOutside);
    for (int i = 0; i < kPointsInBox; ++i) {
      double a = u(rng_) * s.size.x, b = u(rng_) * s.size.y, z = s.center.z + u(rng_) * s.size.z;
      pts.push_back(place(a, b, z));
    }
    // clutter above the box, which extraction must reject
    for (int i = 0; i < kPointsOutside; ++i) {
      double a = u(rng_) * s.size.x, b = u(rng_) * s.size.y;
      pts.push_back(place(a, b, s.center.z + s.size.z / 2.0 + lift(rng_)));
    }
    return pts;
  }

  std::mt19937_64 rng_;
  EgoTelemetry ego_;
  TrackMap tracks_;
};

void check(bool ok, const std::string& what) {
  if (!ok) throw Error(Errc::BadParams, what);
}

ConcatenatedTag tag(ObjectClass c, LaneTag l, NeighborMotion m) { return {c, l, m}; }

}  // namespace

Scenario generate_scenario(ScenarioKind kind, const ScenarioParams& p, std::uint64_t seed) {
  check(p.duration_s >= 2.0 && p.duration_s <= 30.0, "duration_s must lie in [2, 30]");
  check(p.rate_hz >= 5 && p.rate_hz <= 20, "rate_hz must lie in [5, 20]");
  // The expectations assume the whole recording is one host clip.
  check(std::lround(p.duration_s * p.rate_hz) <= 300, "duration_s * rate_hz must not exceed 300 frames");
  const double default_speed = kind == ScenarioKind::PedestrianCross ? 0.0 : 10.0;
  const double hv = p.host_speed.value_or(default_speed);
  check(hv >= 0.0 && hv <= 30.0, "host_speed must lie in [0, 30]");
  const double rate = p.rate_hz;

  Scenario sc;
  sc.kind = kind;
  sc.name = std::string(to_string(kind));
  sc.calib = front_camera(1920, 1080, kPi / 2.0);
  sc.calib.dist = {0.01, 0.0, 0.0, 0.0};

  Builder b(p, hv, seed);
  const auto Car = ObjectClass::Car;
  switch (kind) {
    case ScenarioKind::OvertakeLeft: {
      // Relative x = 5t - 15 at y = -3.5 (left): range sqrt((5t-15)^2 + 3.5^2)
      // falls until t = 3 s and rises after. t = 3 is a sample for integer rates;
      // its rate comes from the preceding pair, so it still reads as approach.
      check(hv + 5.0 <= 30.0, "overtake_left needs host_speed <= 25");
      check(p.duration_s >= 5.0, "overtake_left needs duration_s >= 5");
      b.add("car_overtake", Car, kCarSize, [hv](double t) { return WorldState{-15.0 + (hv + 5.0) * t, 3.5, 0.0}; });
      sc.expected.push_back(
          {"car_overtake", {tag(Car, LaneTag::Left, NeighborMotion::Approach), tag(Car, LaneTag::Left, NeighborMotion::Away)}});
      break;
    }
    case ScenarioKind::CutInRight: {
      // Relative x = 30 + 2t; y drops 3.5 -> 0 at 0.7 m/s over t in [1, 6], so
      // y = T_h at t = 17/7 s. Range rate (2x - 0.7y)/range > 1.9 m/s throughout.
      check(hv + 2.0 <= 30.0, "cut_in_right needs host_speed <= 28");
      check(p.duration_s >= 3.0, "cut_in_right needs duration_s >= 3");
      b.add("car_cutin", Car, kCarSize, [hv](double t) {
        double y = 3.5, vy = 0.0;
        if (t >= 6.0) {
          y = 0.0;
        } else if (t >= 1.0) {
          y = 3.5 - 0.7 * (t - 1.0);
          vy = 0.7;
        }
        return WorldState{hv * t + 30.0 + 2.0 * t, -y, std::atan2(vy, hv + 2.0)};
      });
      sc.expected.push_back(
          {"car_cutin", {tag(Car, LaneTag::Right, NeighborMotion::Away), tag(Car, LaneTag::Host, NeighborMotion::Away)}});
      break;
    }
    case ScenarioKind::OncomingPass: {
      // Heading pi relative to the host: oncoming for every sample, which only pairs with approach.
      b.add("car_oncoming", Car, kCarSize, [](double t) { return WorldState{35.0 - 10.0 * t, 3.5, kPi}; });
      sc.expected.push_back({"car_oncoming", {tag(Car, LaneTag::Oncoming, NeighborMotion::Approach)}});
      break;
    }
    case ScenarioKind::PedestrianCross: {
      // Host waits; pedestrian at x = 12 walks right-to-left at 1.25 m/s (yaw 3pi/2,
      // lateral). y = 1.25 (t_c - t) with t_c a quarter frame past a sample:
      // |y| shrinks before t_c and, over the straddling pair, grows (0.75 vs 0.25 frame).
      check(hv == 0.0, "pedestrian_cross models a stopped host; host_speed must be 0");
      const double t_c = (std::floor(4.8 * rate) + 0.25) / rate;
      check(p.duration_s >= 6.0, "pedestrian_cross needs duration_s >= 6");
      const auto Ped = ObjectClass::Pedestrian;
      b.add("ped_cross", Ped, kPedestrianSize,
            [t_c](double t) { return WorldState{12.0, -1.25 * (t_c - t), kPi / 2.0}; });
      sc.expected.push_back({"ped_cross",
                             {tag(Ped, LaneTag::RightLateral, NeighborMotion::Approach),
                              tag(Ped, LaneTag::LeftLateral, NeighborMotion::Away)}});
      break;
    }
    case ScenarioKind::LeadFollow: {
      // Relative x = 20 - 2 min(t, 4): range rate -2 up to t = 4 s (a sample), 0 after.
      check(hv >= 3.0, "lead_follow needs host_speed >= 3 so the lead keeps moving");
      check(p.duration_s >= 5.0, "lead_follow needs duration_s >= 5");
      b.add("car_lead", Car, kCarSize,
            [hv](double t) { return WorldState{hv * t + 20.0 - 2.0 * std::min(t, 4.0), 0.0, 0.0}; });
      sc.expected.push_back(
          {"car_lead", {tag(Car, LaneTag::Host, NeighborMotion::Approach), tag(Car, LaneTag::Host, NeighborMotion::Constant)}});
      break;
    }
    case ScenarioKind::ParkedRow: {
      // World-static: compensated rates are zero, so nothing is captioned.
      for (int k = 0; k < 5; ++k) {
        const double x = 10.0 + 10.0 * k;
        b.add("parked_" + std::to_string(k), Car, kCarSize, [x](double) { return WorldState{x, -4.0, 0.0}; });
      }
      break;
    }
  }
  sc.ego = b.ego();
  sc.tracks = b.take_tracks();
  return sc;
}

Scenario inject_noise(const Scenario& scenario, double sigma_pos, double sigma_yaw, std::uint64_t seed) {
  if (!(sigma_pos >= 0.0) || !(sigma_yaw >= 0.0)) throw Error(Errc::BadParams, "noise sigma must be >= 0");
  Scenario out = scenario;
  if (sigma_pos == 0.0 && sigma_yaw == 0.0) return out;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> unit(0.0, 1.0);
  for (auto& [id, track] : out.tracks) {
    for (auto& s : track.samples) {
      if (sigma_pos > 0.0) {
        s.center.x += sigma_pos * unit(rng);
        s.center.y += sigma_pos * unit(rng);
        s.center.z += sigma_pos * unit(rng);
      }
      if (sigma_yaw > 0.0) s.yaw = wrap_two_pi(s.yaw + sigma_yaw * unit(rng));
    }
  }
  return out;
}

namespace {

std::vector<double> random_unit(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> v(dim);
  double sq = 0.0;
  for (auto& x : v) {
    x = g(rng);
    sq += x * x;
  }
  for (auto& x : v) x /= std::sqrt(sq);
  return v;
}

std::vector<double> jitter(std::mt19937_64& rng, const std::vector<double>& base, double sigma) {
  std::normal_distribution<double> g(0.0, sigma);
  auto v = base;
  for (auto& x : v) x += g(rng);
  return v;
}

std::string clip_name(const char* prefix, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s_%05zu", prefix, i);
  return buf;
}

void check_embedding_params(std::size_t n, std::size_t dim) {
  if (n < 2) throw Error(Errc::BadParams, "need at least two clips");
  if (dim == 0) throw Error(Errc::BadParams, "dimension must be >= 1");
}

constexpr double kJitter = 0.02;

}  // namespace

std::vector<EmbeddingRecord> biased_embeddings(std::size_t n, std::size_t dim, std::uint64_t seed) {
  check_embedding_params(n, dim);
  constexpr std::size_t kScene = 10;
  const auto pool = TemplatePool::enumerate().first_sentences;
  std::mt19937_64 rng(seed);
  std::vector<EmbeddingRecord> out;
  out.reserve(n);
  std::vector<double> base;
  std::string caption;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t scene = i / kScene;
    if (i % kScene == 0) {
      base = random_unit(rng, dim);
      caption = pool[rng() % pool.size()];
    }
    // scenes an hour apart, clips within a scene 30 s apart
    const double t = 3600.0 * static_cast<double>(scene) + 30.0 * static_cast<double>(i % kScene);
    out.push_back({clip_name("biased", i), t, jitter(rng, base, kJitter), caption});
  }
  return out;
}

std::vector<EmbeddingRecord> semantic_embeddings(std::size_t n, std::size_t dim, std::uint64_t seed) {
  check_embedding_params(n, dim);
  constexpr std::size_t kCaptions = 20;
  auto pool = TemplatePool::enumerate().first_sentences;
  std::mt19937_64 rng(seed);
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(std::min(pool.size(), kCaptions));
  std::vector<std::vector<double>> bases;
  for (std::size_t c = 0; c < pool.size(); ++c) bases.push_back(random_unit(rng, dim));
  std::uniform_real_distribution<double> when(0.0, 600.0 * static_cast<double>(n));
  std::vector<EmbeddingRecord> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t c = rng() % pool.size();
    out.push_back({clip_name("semantic", i), when(rng), jitter(rng, bases[c], kJitter), pool[c]});
  }
  return out;
}

}  // namespace lidarcap
