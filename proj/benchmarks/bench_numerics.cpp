#include <benchmark/benchmark.h>

#include <cmath>

#include "asygeo/capacity.hpp"
#include "asygeo/examples.hpp"
#include "asygeo/quadrature.hpp"
#include "asygeo/spectrum.hpp"

using namespace asygeo;

namespace {

const WarpedManifold kHyp = make_model(ManifoldKind::kHyperbolic, 2);

void BM_IntegrateOscillatory(benchmark::State& state) {
  const LogIntegrand f = [](double t) { return -t * (4.0 + std::sin(std::log(t))); };
  for (auto _ : state) benchmark::DoNotOptimize(integrate(f, 0.0, INFINITY, {}, TailBound{0.0, 3.0}).log());
}
BENCHMARK(BM_IntegrateOscillatory);

void BM_LogCapBall(benchmark::State& state) {
  const double p = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(log_cap_ball(kHyp, 1.0, p).log_cap);
}
BENCHMARK(BM_LogCapBall)->Arg(10)->Arg(1000)->Arg(10000);

void BM_MazyaMp(benchmark::State& state) {
  const double p = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mazya_mp(kHyp, p).log_mp);
}
BENCHMARK(BM_MazyaMp)->Arg(5)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_BallEigenvalue(benchmark::State& state) {
  SolverConfig cfg;
  cfg.nodes = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lambda_1p_ball(kHyp, 5.0, 3.0, cfg).log_lambda);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BallEigenvalue)->RangeMultiplier(2)->Range(100, 800)->Unit(benchmark::kMillisecond)->Complexity();

void BM_Example32BoundChain(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(example32_bound_chain().gap);
}
BENCHMARK(BM_Example32BoundChain)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
