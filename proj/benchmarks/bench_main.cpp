#include <benchmark/benchmark.h>

#include <random>

#include "pseudoreal/builtins.hpp"
#include "pseudoreal/linalg.hpp"
#include "pseudoreal/metrics.hpp"
#include "pseudoreal/schrodinger.hpp"

using namespace pseudoreal;

namespace {

ComplexMatrix random_matrix(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  ComplexMatrix m(n);
  for (auto& z : m.entries()) z = {dist(rng), dist(rng)};
  return m;
}

void BM_Eigendecompose(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ComplexMatrix h = random_matrix(n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(eigendecompose(h));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Eigendecompose)->RangeMultiplier(2)->Range(8, 256)->Complexity(benchmark::oNCubed);

void BM_Inverse(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ComplexMatrix m = random_matrix(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(inverse(m));
}
BENCHMARK(BM_Inverse)->RangeMultiplier(4)->Range(8, 512);

void BM_SimilarityResidual(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ComplexMatrix s = random_matrix(n, 3);
  const ComplexMatrix h = random_matrix(n, 4);
  const ComplexMatrix target = conjugate(h);
  for (auto _ : state) benchmark::DoNotOptimize(similarity_residual(s, h, target));
}
BENCHMARK(BM_SimilarityResidual)->RangeMultiplier(4)->Range(8, 512);

void BM_BuildHamiltonian(benchmark::State& state) {
  GridSpec grid{-6.0, 6.0, static_cast<std::size_t>(state.range(0)), 1.0};
  PotentialSpec pot{potential::GaugedOscillator{1.0, 0.25}, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(build_hamiltonian(pot, grid));
}
BENCHMARK(BM_BuildHamiltonian)->RangeMultiplier(4)->Range(64, 4096);

void BM_ClassifyH8(benchmark::State& state) {
  const ComplexMatrix h = builtins::h8(1.0, 1.0, 2.0, 1.0);
  const std::vector<NamedMetric> candidates{{"sigma_x", builtins::sigma_x()}};
  for (auto _ : state) benchmark::DoNotOptimize(classify(h, candidates));
}
BENCHMARK(BM_ClassifyH8);

}  // namespace

BENCHMARK_MAIN();
