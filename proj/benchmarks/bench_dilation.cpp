#include <benchmark/benchmark.h>

#include "ncprism/dilation.hpp"
#include "ncprism/random.hpp"

using namespace ncprism;

static void BM_HalmosSymmetry(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  RandomSource rng(3);
  const ComplexMatrix b = rng.hermitian_with_norm(n, 0.9);
  for (auto _ : state) benchmark::DoNotOptimize(halmos_symmetry(b));
}
BENCHMARK(BM_HalmosSymmetry)->Arg(2)->Arg(8)->Arg(32);

static void BM_TriangleNaimark(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  RandomSource rng(4);
  const ComplexMatrix a = rng.polygon_compression(3, 3 * n, n);
  for (auto _ : state) benchmark::DoNotOptimize(naimark_normal(triangle_povm(a)));
}
BENCHMARK(BM_TriangleNaimark)->Arg(1)->Arg(2)->Arg(4)->Arg(8);

static void BM_JointPrismDilation(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  RandomSource rng(5);
  const ComplexMatrix a = rng.polygon_point(3, n, 0.8);
  const ComplexMatrix b = rng.hermitian_with_norm(n, 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(joint_prism_dilation(a, b, 3));
}
BENCHMARK(BM_JointPrismDilation)->Arg(1)->Arg(2)->Arg(4);
