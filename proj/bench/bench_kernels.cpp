// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include <cmath>

#include "lidarcap/mask_geometry.hpp"
#include "lidarcap/pipeline.hpp"
#include "lidarcap/retrieval_eval.hpp"
#include "lidarcap/scenario_synth.hpp"

using namespace lidarcap;

namespace {

const EmbeddingIndex& bench_index() {
  static const EmbeddingIndex idx(biased_embeddings(500, 64, 1));
  return idx;
}

Polygon bench_polygon() {
  std::vector<Vec2> pts;
  for (int i = 0; i < 64; ++i) {
    double a = kTwoPi * i / 64;
    pts.push_back({960 + 700 * std::cos(a), 540 + 450 * std::sin(a)});
  }
  return convex_hull(pts);
}

struct Recording {
  EgoTelemetry ego;
  TrackMap tracks;
  CameraCalibration calib;
};

// Six scenarios back to back, so the recording holds several clips.
const Recording& bench_recording() {
  static const Recording rec = [] {
    Recording r;
    std::vector<EgoSample> ego;
    double t0 = 0.0;
    for (auto kind : all_scenarios()) {
      auto sc = generate_scenario(kind);
      for (auto e : sc.ego.samples()) {
        e.t += t0;
        ego.push_back(e);
      }
      for (auto [id, tr] : sc.tracks) {
        for (auto& s : tr.samples) s.t += t0;
        tr.id = sc.name + "/" + id;
        r.tracks[tr.id] = tr;
      }
      r.calib = sc.calib;
      t0 += 100.0;
    }
    r.ego = EgoTelemetry(ego);
    return r;
  }();
  return rec;
}

void BM_vbm_serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(reference::vbm_serial(bench_index(), 5, 300));
}
void BM_vbm_parallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(vbm(bench_index(), 5, 300));
}

void BM_raster_serial(benchmark::State& st) {
  auto poly = bench_polygon();
  for (auto _ : st) benchmark::DoNotOptimize(reference::rasterize_serial(poly, 1920, 1080));
}
void BM_raster_parallel(benchmark::State& st) {
  auto poly = bench_polygon();
  for (auto _ : st) benchmark::DoNotOptimize(rasterize(poly, 1920, 1080));
}

void BM_caption_serial(benchmark::State& st) {
  const auto& r = bench_recording();
  for (auto _ : st)
    benchmark::DoNotOptimize(reference::caption_recording_serial("bench", r.ego, r.tracks, &r.calib, {}));
}
void BM_caption_parallel(benchmark::State& st) {
  const auto& r = bench_recording();
  for (auto _ : st) benchmark::DoNotOptimize(caption_recording("bench", r.ego, r.tracks, &r.calib, {}));
}

}  // namespace

BENCHMARK(BM_vbm_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_vbm_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_raster_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_raster_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_caption_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_caption_parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
