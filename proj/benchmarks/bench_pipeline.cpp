#include <benchmark/benchmark.h>

#include <bandfit/bandfit.hpp>

using namespace bandfit;

namespace {

const Window kWindow(-10.0, 0.0);

FitConfig figure_config(int n) {
  FitConfig cfg;
  cfg.omega = 4.0;
  cfg.n = n;
  return cfg;
}

void BM_GramQuadrature(benchmark::State& state) {
  const BasisSpec spec(4.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_gram(spec, kWindow, 1e-8));
}
BENCHMARK(BM_GramQuadrature)->Arg(5)->Arg(10)->Arg(30)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_GramClosedForm(benchmark::State& state) {
  const BasisSpec spec(4.0, static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(build_gram(spec, kWindow, 1e-8, GramBackend::closed_form));
}
BENCHMARK(BM_GramClosedForm)->Arg(5)->Arg(30)->Arg(50)->Unit(benchmark::kMicrosecond);

void BM_LoadVector(benchmark::State& state) {
  const BasisSpec spec(4.0, static_cast<int>(state.range(0)));
  const Signal x = corpus_signal(1);
  for (auto _ : state) benchmark::DoNotOptimize(load_vector(x, spec, kWindow, 1e-8));
}
BENCHMARK(BM_LoadVector)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_Solve(benchmark::State& state) {
  const GramSystem g =
      assemble_system(corpus_signal(1), BasisSpec(4.0, static_cast<int>(state.range(0))), kWindow);
  for (auto _ : state) benchmark::DoNotOptimize(solve_regularized(g, 1e-3));
}
BENCHMARK(BM_Solve)->Arg(30)->Arg(50)->Unit(benchmark::kMicrosecond);

void BM_FitN30(benchmark::State& state) {
  const Signal x = corpus_signal(1);
  const FitConfig cfg = figure_config(30);
  for (auto _ : state) benchmark::DoNotOptimize(fit(x, kWindow, cfg));
}
BENCHMARK(BM_FitN30)->Unit(benchmark::kMillisecond);

void BM_CurveSample(benchmark::State& state) {
  const Approximant a = fit(corpus_signal(1), kWindow, figure_config(30));
  for (auto _ : state) benchmark::DoNotOptimize(a.sample(-10.0, 0.0, 1000));
}
BENCHMARK(BM_CurveSample)->Unit(benchmark::kMicrosecond);

void BM_StreamStep(benchmark::State& state) {
  StreamConfig cfg = StreamConfig::with_defaults(5.0, figure_config(static_cast<int>(state.range(0))));
  cfg.stride = 1e-9;  // refit on every sample
  cfg.interpolation = Interpolation::piecewise_constant_left;
  const Signal x = synth(SynthKind::jump_walk, 7, JumpWalkParams{SampleGrid{-20.0, 1000.0, 0.01}});
  StreamFilter filter(cfg);
  std::size_t i = 0;
  for (; x.times()[i] < -15.0; ++i) filter.push(x.times()[i], x.values()[i]);
  for (auto _ : state) {
    if (i == x.size()) state.SkipWithError("signal exhausted");
    benchmark::DoNotOptimize(filter.push(x.times()[i], x.values()[i]));
    ++i;
  }
}
BENCHMARK(BM_StreamStep)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
