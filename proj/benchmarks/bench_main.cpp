#include <benchmark/benchmark.h>

#include <cmath>

#include "qwave/band_matrix.hpp"
#include "qwave/orlicz.hpp"
#include "qwave/potential.hpp"
#include "qwave/solver.hpp"

namespace {

void BM_BandLDLT(benchmark::State& state) {
  const double S = 8.0;
  const auto nx = static_cast<std::size_t>(state.range(0));
  const qwave::Grid2D grid{S, 1.0, nx, 16};
  const qwave::SymBandMatrix op = qwave::assemble_straight(qwave::Potential{}, 1.0, grid);
  for (auto _ : state) {
    qwave::BandLDLT f(op, 2.0);
    benchmark::DoNotOptimize(f.negative_count());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BandLDLT)->RangeMultiplier(2)->Range(64, 512)->Complexity(benchmark::oN);

void BM_SolveStraight(benchmark::State& state) {
  const qwave::Potential v = qwave::potential_library("gaussian", {{"A", 1.0}, {"sigma", 0.5}}, 1.0).scaled(
      static_cast<double>(state.range(0)));
  const qwave::Grid2D grid = qwave::Grid2D::with_spacing(8.0, 1.0, 1.0 / 16.0);
  for (auto _ : state) {
    const qwave::SpectralResult r = qwave::solve_straight(v, 1.0, grid);
    benchmark::DoNotOptimize(r.count);
  }
}
BENCHMARK(BM_SolveStraight)->Arg(1)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_AvgOrliczNorm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto f = qwave::SampledFunction1D::sample([](double x) { return std::exp(-x * x) / (0.1 + std::abs(x)); },
                                                  -4.0, 4.0, n);
  for (auto _ : state) benchmark::DoNotOptimize(qwave::avg_orlicz_norm(f));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AvgOrliczNorm)->RangeMultiplier(4)->Range(64, 4096)->Complexity(benchmark::oN);

}  // namespace
BENCHMARK_MAIN();
