#include <benchmark/benchmark.h>

#include <cmath>

#include "horoaf/flow.hpp"
#include "horoaf/functionals.hpp"
#include "horoaf/hyperbolic.hpp"
#include "horoaf/search.hpp"
#include "horoaf/sphere_grid.hpp"
#include "horoaf/surface.hpp"

using namespace horoaf;

static void BM_BuildGrid(benchmark::State& state) {
  const int n = int(state.range(0));
  const int res = int(state.range(1));
  for (auto _ : state) {
    SphereGrid grid = build_grid(n, res);
    benchmark::DoNotOptimize(grid.weights.data());
  }
}
BENCHMARK(BM_BuildGrid)->Args({3, 64})->Args({3, 192})->Args({4, 32});

static void BM_EvalSupportBody(benchmark::State& state) {
  const SphereGrid grid = build_grid(3, int(state.range(0)));
  const SurfaceSpec spec = SurfaceSpec{default_smoothed_simplex(3)};
  for (auto _ : state) {
    EuclideanFrameSet frames = evaluate(spec, grid);
    benchmark::DoNotOptimize(frames.area_element.data());
  }
  state.SetItemsProcessed(state.iterations() * grid.size());
}
BENCHMARK(BM_EvalSupportBody)->Arg(64)->Arg(96);

static void BM_EvalRadialGraph(benchmark::State& state) {
  const SphereGrid grid = build_grid(3, int(state.range(0)));
  const SurfaceSpec spec =
      HarmonicPerturbedSphere{0.3, {HarmonicTerm{2, Vec{0, 0, 1, 0}, 0.1}}};
  for (auto _ : state) {
    EuclideanFrameSet frames = evaluate(spec, grid);
    benchmark::DoNotOptimize(frames.area_element.data());
  }
  state.SetItemsProcessed(state.iterations() * grid.size());
}
BENCHMARK(BM_EvalRadialGraph)->Arg(64)->Arg(96);

static void BM_LiftAndSummarize(benchmark::State& state) {
  const SphereGrid grid = build_grid(int(state.range(0)), int(state.range(1)));
  const SurfaceSpec spec = GeodesicSphere{1.0};
  const EuclideanFrameSet frames = evaluate(spec, grid);
  for (auto _ : state) {
    const HyperbolicFrameSet lifted = lift_frame(frames);
    const FunctionalSummary summary = summarize(frames, lifted);
    benchmark::DoNotOptimize(summary.P);
  }
  state.SetItemsProcessed(state.iterations() * grid.size());
}
BENCHMARK(BM_LiftAndSummarize)->Args({3, 64})->Args({3, 192})->Args({4, 32});

static void BM_FlowTrace(benchmark::State& state) {
  const SphereGrid grid = build_grid(3, 48);
  const SurfaceSpec spec = SurfaceSpec{default_smoothed_simplex(3)};
  std::vector<double> times;
  for (double t = 0.0; t <= 4.0 + 1e-12; t += 0.1) times.push_back(t);
  for (auto _ : state) {
    const FlowTrace trace = trace_flow(spec, grid, times);
    benchmark::DoNotOptimize(trace.samples.back().P);
  }
}
BENCHMARK(BM_FlowTrace);

static void BM_EuclideanQ(benchmark::State& state) {
  const SphereGrid grid = build_grid(3, 96);
  const EuclideanFrameSet frames = evaluate(SurfaceSpec{default_smoothed_simplex(3)}, grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(euclidean_Q(frames));
  }
  state.SetItemsProcessed(state.iterations() * grid.size());
}
BENCHMARK(BM_EuclideanQ);

BENCHMARK_MAIN();
