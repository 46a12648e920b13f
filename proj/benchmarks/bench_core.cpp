#include <benchmark/benchmark.h>

#include "lbreg/lbreg.hpp"

using namespace lbreg;

namespace {

Dataset dataset(std::size_t n) {
  ExperimentConfig cfg;
  cfg.rows = cfg.cols = n;
  return make_dataset(cfg);
}

void BM_DctForward(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const DctPlan plan(n, n);
  const Grid x = dataset(n).truth;
  for (auto _ : state) benchmark::DoNotOptimize(plan.forward(x));
}

void BM_DctInverse(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const DctPlan plan(n, n);
  const Grid c = plan.forward(dataset(n).truth);
  for (auto _ : state) benchmark::DoNotOptimize(plan.inverse(c));
}

void BM_SobolevSolve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const NeumannLaplacian lap(n, n);
  const Grid p = dataset(n).truth;
  for (auto _ : state) benchmark::DoNotOptimize(solve_identity_plus_alpha_laplacian(lap, 1000.0, p));
}

template <PotentialKind Kind>
void BM_Step(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  ExperimentConfig cfg;
  cfg.rows = cfg.cols = n;
  cfg.potential = Kind;
  const Dataset d = make_dataset(cfg);
  const PhaseUnwrapObjective obj(d.data);
  const auto J = make_potential(cfg);
  const Grid u(n, n);
  const Grid p = J->canonical_subgradient(u);
  for (auto _ : state) benchmark::DoNotOptimize(bregman_step(obj, *J, u, p, cfg.tau));
}

}  // namespace

BENCHMARK(BM_DctForward)->Arg(32)->Arg(64)->Arg(128);
BENCHMARK(BM_DctInverse)->Arg(64);
BENCHMARK(BM_SobolevSolve)->Arg(64)->Arg(128);
BENCHMARK(BM_Step<PotentialKind::gd>)->Arg(64);
BENCHMARK(BM_Step<PotentialKind::sobolev>)->Arg(64);
BENCHMARK(BM_Step<PotentialKind::dct_l1>)->Arg(64);

BENCHMARK_MAIN();
