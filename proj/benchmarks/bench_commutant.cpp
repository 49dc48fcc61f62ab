#include <benchmark/benchmark.h>

#include "ncprism/matkernel.hpp"
#include "ncprism/random.hpp"

using namespace ncprism;

static void BM_CommutantRandomPair(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  RandomSource rng(1);
  const std::vector<ComplexMatrix> mats{rng.unitary(n), rng.symmetry(n)};
  for (auto _ : state) benchmark::DoNotOptimize(commutant_dimension(mats));
}
BENCHMARK(BM_CommutantRandomPair)->Arg(2)->Arg(4)->Arg(8)->Arg(12)->Arg(16);

static void BM_OpNorm(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  RandomSource rng(2);
  const ComplexMatrix a = rng.gaussian(n, n);
  for (auto _ : state) benchmark::DoNotOptimize(op_norm(a));
}
BENCHMARK(BM_OpNorm)->Arg(4)->Arg(16)->Arg(64);
