#include <benchmark/benchmark.h>

#include <cmath>

#include "oufpt/airy.hpp"
#include "oufpt/boundary.hpp"
#include "oufpt/images.hpp"
#include "oufpt/mc.hpp"
#include "oufpt/quadrature.hpp"
#include "oufpt/special.hpp"
#include "oufpt/transforms.hpp"

namespace {

using namespace oufpt;

void BM_McPaths(benchmark::State& state) {
  MCConfig cfg;
  cfg.n_paths = static_cast<std::size_t>(state.range(0));
  cfg.dt = 1e-3;
  cfg.horizon = 1.0;
  cfg.threads = 1;
  const Boundary f = Boundary::constant(1.0);
  for (auto _ : state) {
    const DensityGrid g = fpt_sample(OUParams{0.5, 7}, f, cfg);
    benchmark::DoNotOptimize(g.survival_at_horizon);
  }
  state.SetItemsProcessed(state.iterations() * cfg.n_paths *
                          static_cast<std::int64_t>(cfg.horizon / cfg.dt));
}
BENCHMARK(BM_McPaths)->Arg(2000)->Arg(20000);

void BM_STransformEval(benchmark::State& state) {
  const Boundary f = Boundary::affine(1.0, 0.5);
  const Boundary sf = s_transform(f, {2.0, 1.0, 0.5});
  double t = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sf(t));
    t = t < 2.0 ? t + 1e-3 : 0.1;
  }
}
BENCHMARK(BM_STransformEval);

void BM_SigmaRouteEval(benchmark::State& state) {
  const Boundary f = Boundary::affine(1.0, 1.0);
  const Boundary route = s_transform_via_sigma(f, {2.0, 1.0, 0.5});
  const double hi = 0.8 * std::min(route.domain_end(), 1.0);
  double t = 0.05;
  for (auto _ : state) {
    benchmark::DoNotOptimize(route(t));
    t = t < hi ? t + 1e-3 : 0.05;
  }
}
BENCHMARK(BM_SigmaRouteEval);

void BM_Quadrature(benchmark::State& state) {
  for (auto _ : state) {
    const auto r = integrate([](double z) { return std::exp(-z * z); }, 0.0, 8.0);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_Quadrature);

void BM_Airy(benchmark::State& state) {
  double x = -40.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(airy(x).ai);
    x = x < 9.0 ? x + 0.37 : -40.0;
  }
}
BENCHMARK(BM_Airy);

void BM_ParabolaDensity(benchmark::State& state) {
  const auto p = AirySeriesParams::make(1.0, 1.0, 50);
  double t = 0.8;
  for (auto _ : state) {
    benchmark::DoNotOptimize(parabola_bm_density(p, t).value);
    t = t < 3.0 ? t + 0.01 : 0.8;
  }
}
BENCHMARK(BM_ParabolaDensity);

void BM_ImagesBoundarySolve(benchmark::State& state) {
  ImageMeasure m;
  m.atoms.push_back({2.0, 1.0});
  m.a = std::exp(1.0);
  const Boundary f = boundary_from_measure(m, 0.5);
  double t = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(f(t));
    t = t < 2.0 ? t + 0.013 : 0.1;
  }
}
BENCHMARK(BM_ImagesBoundarySolve);

}  // namespace

BENCHMARK_MAIN();
