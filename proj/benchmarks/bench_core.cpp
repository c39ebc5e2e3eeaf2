// Copyright 2026 The Shadowcast Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <random>

#include "scenes.hpp"
#include "shadowcast/contour.hpp"
#include "shadowcast/fractal.hpp"
#include "shadowcast/morphology.hpp"
#include "shadowcast/optimizer.hpp"
#include "shadowcast/render.hpp"

namespace sc = shadowcast;
namespace t = shadowcast::testing;

namespace {

const sc::SceneParams kScene = sc::SceneParams::tied(0.6, 35 * sc::kDegree, 0.4);

void BM_RasterizeSoft(benchmark::State& state) {
  const sc::RasterSpec spec(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)), sc::Window{});
  const auto tris = sc::project_shadow(sc::normalize_mesh(t::table_mesh()), kScene);
  for (auto _ : state) benchmark::DoNotOptimize(sc::rasterize_soft(tris, spec, sc::kDefaultSigma));
}
BENCHMARK(BM_RasterizeSoft)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_Objective(benchmark::State& state) {
  const sc::Mesh mesh = sc::normalize_mesh(t::elongated_box());
  sc::ObjectiveSettings settings;
  for (auto _ : state) benchmark::DoNotOptimize(sc::objective(mesh, kScene, settings));
}
BENCHMARK(BM_Objective)->Unit(benchmark::kMillisecond);

void BM_DistanceTransform(benchmark::State& state) {
  const sc::RasterSpec spec(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)), sc::Window{});
  std::mt19937_64 rng(1);
  const sc::BinaryRaster seeds = t::random_blobs(spec, rng, 6);
  for (auto _ : state) benchmark::DoNotOptimize(sc::squared_distance_transform(seeds));
}
BENCHMARK(BM_DistanceTransform)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);

void BM_ExtractContours(benchmark::State& state) {
  const sc::RasterSpec spec;
  const sc::BinaryRaster shadow = sc::shadow_raster_hard(sc::normalize_mesh(t::table_mesh()), kScene, spec);
  for (auto _ : state) benchmark::DoNotOptimize(sc::extract_contours(shadow));
}
BENCHMARK(BM_ExtractContours)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
