#include <benchmark/benchmark.h>

#include <cmath>

#include "rellich/dtn.hpp"
#include "rellich/inequalities.hpp"

using namespace rellich;

namespace {

SampledField smooth_field(int m) {
  return SampledField::sample(PeriodicGrid::line(m), [](double x) { return std::exp(std::cos(x)) * std::sin(3 * x); });
}

void BM_hilbert(benchmark::State& state) {
  const auto f = smooth_field(int(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hilbert(f));
}
BENCHMARK(BM_hilbert)->RangeMultiplier(4)->Range(256, 16384);

void BM_eval_trig(benchmark::State& state) {
  const auto f = smooth_field(int(state.range(0)));
  std::vector<double> pts(f.size());
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = 0.37 + 6.1 * double(i) / pts.size();
  for (auto _ : state) benchmark::DoNotOptimize(eval_trig(f, pts));
}
BENCHMARK(BM_eval_trig)->RangeMultiplier(2)->Range(128, 1024);

void BM_theodorsen(benchmark::State& state) {
  const auto s = build_surface(PeriodicGrid::line(int(state.range(0))), {{{1, 0}, 0.3, 0.0}, {{3, 0}, 0.0, 0.1}});
  for (auto _ : state) benchmark::DoNotOptimize(theodorsen_solve(s));
}
BENCHMARK(BM_theodorsen)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_dtn_conformal(benchmark::State& state) {
  const int m = int(state.range(0));
  const auto s = build_surface(PeriodicGrid::line(m), {{{1, 0}, 0.3, 0.0}, {{3, 0}, 0.0, 0.1}});
  const DtnEngine engine(s, {});
  const auto zeta = smooth_field(m);
  for (auto _ : state) benchmark::DoNotOptimize(engine(zeta));
}
BENCHMARK(BM_dtn_conformal)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_dtn_elliptic_1d(benchmark::State& state) {
  const int m = int(state.range(0));
  const auto s = build_surface(PeriodicGrid::line(m), {{{1, 0}, 0.3, 0.0}});
  EllipticConfig cfg;
  cfg.ny = m;
  const auto zeta = smooth_field(m);
  for (auto _ : state) benchmark::DoNotOptimize(dtn_elliptic(s, zeta, cfg));
}
BENCHMARK(BM_dtn_elliptic_1d)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_dtn_elliptic_2d(benchmark::State& state) {
  const int m = int(state.range(0));
  const auto g = PeriodicGrid::plane(m, m);
  const auto s = build_surface(g, {{{1, 0}, 0.2, 0.0}, {{0, 1}, 0.0, 0.1}});
  EllipticConfig cfg;
  cfg.ny = m;
  const auto zeta = synthesize(g, {{{1, 1}, 1.0, 0.0}});
  for (auto _ : state) benchmark::DoNotOptimize(dtn_elliptic(s, zeta, cfg));
}
BENCHMARK(BM_dtn_elliptic_2d)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_l1_demo(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(l1_failure_demo({8, 16, 32, 64}, 1024));
}
BENCHMARK(BM_l1_demo);

}  // namespace
BENCHMARK_MAIN();
