#include <benchmark/benchmark.h>

#include <algorithm>

#include "locuslab/core_ifs.hpp"
#include "locuslab/raster.hpp"
#include "locuslab/render.hpp"
#include "locuslab/screen.hpp"
#include "locuslab/traps.hpp"

using namespace locuslab;

namespace {

// Near the hyperbola, where searches are deepest.
void BM_MembershipDeep(benchmark::State& state) {
  const Params p(0.72, 0.68);
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(membership(p, depth));
}
BENCHMARK(BM_MembershipDeep)->Arg(16)->Arg(25)->Arg(40);

void BM_MembershipNoDedup(benchmark::State& state) {
  const Params p(0.72, 0.68);
  for (auto _ : state) benchmark::DoNotOptimize(membership(p, 25, 0.0));
}
BENCHMARK(BM_MembershipNoDedup);

void BM_RenderTile(benchmark::State& state) {
  RenderJob job;
  job.resolution = 32;
  job.tile = 32;
  job.max_depth = 25;
  job.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(render(job, Palette::kBinary));
  state.SetItemsProcessed(state.iterations() * 32 * 32);
}
BENCHMARK(BM_RenderTile)->Unit(benchmark::kMillisecond);

void BM_PaintAttractor(benchmark::State& state) {
  const Params p(-0.64, 0.77);
  const auto ext = attractor_half_extent(p);
  const double h = 2 * std::max(ext.x, ext.y) / static_cast<double>(state.range(0));
  const auto grid = RasterGrid::covering({-ext.x, -ext.y}, {ext.x, ext.y}, h, 2);
  for (auto _ : state) benchmark::DoNotOptimize(paint_attractor(p, grid));
}
BENCHMARK(BM_PaintAttractor)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_CylinderGap(benchmark::State& state) {
  const Params p(-0.64, 0.77);
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cylinder_gap(p, depth));
}
BENCHMARK(BM_CylinderGap)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);

void BM_ScreenDegree(benchmark::State& state) {
  ScreenOptions opt;
  opt.threads = 1;
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_candidates(m, Tail::kAllPlus, opt));
}
BENCHMARK(BM_ScreenDegree)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
