#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>
#include <random>

#include "nlsg/corpus.hpp"
#include "nlsg/function_space.hpp"
#include "nlsg/minimize.hpp"
#include "nlsg/rearrange.hpp"

using namespace nlsg;

namespace {

std::shared_ptr<const Discretization> mesh(double h) {
  return std::make_shared<const Discretization>(
      std::make_shared<const TruncatedGraph>(corpus::bridge({1.0, 1.5, 2.0}), 40.0), h);
}

GraphFunction bump(const std::shared_ptr<const Discretization>& d) {
  GraphFunction u(d);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (std::size_t k = 0; k < d->num_dofs(); ++k)
    if (!d->is_dirichlet(k)) u[k] = U(rng);
  return rescale_mass(u, 1.0);
}

/// A few flow steps from noise: few level crossings per height, like a ground state.
GraphFunction smooth(const std::shared_ptr<const Discretization>& d, double h) {
  SolverConfig cfg;
  cfg.truncation_length = 40.0;
  cfg.h_target = h;
  cfg.max_iterations = 30;
  return normalized_gradient_flow(bump(d), 4.0, 1.0, cfg).u;
}

double spacing(const benchmark::State& s) { return 1.0 / static_cast<double>(s.range(0)); }

}  // namespace

static void BM_Discretize(benchmark::State& state) {
  auto tg = std::make_shared<const TruncatedGraph>(corpus::bridge({1.0, 1.5, 2.0}), 40.0);
  for (auto _ : state) benchmark::DoNotOptimize(Discretization(tg, spacing(state)));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Discretize)->RangeMultiplier(4)->Range(16, 256)->Complexity();

static void BM_EnergyGradient(benchmark::State& state) {
  const auto u = bump(mesh(spacing(state)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(energy(u, 4.0));
    benchmark::DoNotOptimize(energy_gradient(u, 4.0));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EnergyGradient)->RangeMultiplier(4)->Range(16, 256)->Complexity();

static void BM_FlowIterations(benchmark::State& state) {
  const auto u0 = bump(mesh(spacing(state)));
  SolverConfig cfg;
  cfg.truncation_length = 40.0;
  cfg.h_target = spacing(state);
  cfg.max_iterations = 50;
  for (auto _ : state) benchmark::DoNotOptimize(normalized_gradient_flow(u0, 4.0, 1.0, cfg));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FlowIterations)->RangeMultiplier(4)->Range(16, 256)->Complexity()->Unit(benchmark::kMillisecond);

static void BM_MonotoneRearrangement(benchmark::State& state) {
  const auto u = smooth(mesh(spacing(state)), spacing(state));
  for (auto _ : state) benchmark::DoNotOptimize(monotone_rearrangement(u));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MonotoneRearrangement)->RangeMultiplier(4)->Range(16, 256)->Complexity();

// worst case: every cell is active at almost every level
static void BM_MonotoneRearrangementNoise(benchmark::State& state) {
  const auto u = bump(mesh(spacing(state)));
  for (auto _ : state) benchmark::DoNotOptimize(monotone_rearrangement(u));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MonotoneRearrangementNoise)->RangeMultiplier(4)->Range(4, 64)->Complexity()->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
