#include <numeric>
#include <random>

#include <benchmark/benchmark.h>

#include "gapent/bench.h"
#include "gapent/instance.h"
#include "gapent/primitives.h"
#include "gapent/solvers.h"

namespace {

std::vector<double> random_means(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> m(n);
  for (auto& x : m) x = u(rng);
  m[0] = 1.0;
  return m;
}

void BM_Profile(benchmark::State& state) {
  const auto inst =
      gapent::Instance::from_means(random_means(static_cast<std::size_t>(state.range(0)), 1));
  for (auto _ : state) benchmark::DoNotOptimize(gapent::profile(inst));
}
BENCHMARK(BM_Profile)->RangeMultiplier(4)->Range(4, 4096);

void BM_FracTest(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  gapent::GaussianOracle oracle(random_means(n, 2), 3);
  gapent::ArmSet arms(n);
  std::iota(arms.begin(), arms.end(), gapent::ArmId{0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(gapent::frac_test(oracle, arms, 0.4, 0.6, 0.3, 0.5, 0.01));
  }
}
BENCHMARK(BM_FracTest)->Arg(2)->Arg(16)->Arg(128);

void BM_MedElim(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  gapent::GaussianOracle oracle(random_means(n, 4), 5);
  gapent::ArmSet arms(n);
  std::iota(arms.begin(), arms.end(), gapent::ArmId{0});
  for (auto _ : state) benchmark::DoNotOptimize(gapent::med_elim(oracle, arms, 0.125, 0.01));
}
BENCHMARK(BM_MedElim)->Arg(2)->Arg(16)->Arg(128);

void BM_RunOnce(benchmark::State& state) {
  const auto algo = static_cast<gapent::Algorithm>(state.range(0));
  const auto inst = gapent::Instance::from_means(
      std::vector<double>{1.0, 0.875, 0.75, 0.5, 0.5, 0.25});
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gapent::run_once(algo, inst, 0.01, seed++));
  }
  state.SetLabel(std::string(gapent::algorithm_name(algo)));
}
BENCHMARK(BM_RunOnce)->DenseRange(0, 3);

}  // namespace

BENCHMARK_MAIN();
