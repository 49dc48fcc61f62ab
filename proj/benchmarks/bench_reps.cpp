#include <benchmark/benchmark.h>

#include "ncprism/reps.hpp"

using namespace ncprism;

static void BM_SteinbergPair(benchmark::State& state) {
  const auto q = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(steinberg_pair(q));
}
BENCHMARK(BM_SteinbergPair)->Arg(5)->Arg(7)->Arg(8)->Arg(11)->Arg(13);

static void BM_AssembleDimension(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_dimension(n));
}
BENCHMARK(BM_AssembleDimension)->Arg(4)->Arg(6)->Arg(10)->Arg(12);
