#include <benchmark/benchmark.h>

#include "ncprism/ossys.hpp"

using namespace ncprism;

namespace {

PrismElement element(double c, double g) {
  PrismElement e = PrismElement::unit(3, 1);
  e.c[1] = e.c[2] = ComplexMatrix::Constant(1, 1, c);
  e.g = ComplexMatrix::Constant(1, 1, g);
  return e;
}

}  // namespace

static void BM_MatrixPositivityCertified(benchmark::State& state) {
  const PrismElement e = element(0.2, 0.1);
  PositivityOptions options;
  options.samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(matrix_positivity_prism(e, options));
}
BENCHMARK(BM_MatrixPositivityCertified)->Arg(4)->Arg(16);

static void BM_MatrixPositivityRefuted(benchmark::State& state) {
  const PrismElement e = element(-0.6, 0.5);
  PositivityOptions options;
  options.samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(matrix_positivity_prism(e, options));
}
BENCHMARK(BM_MatrixPositivityRefuted)->Arg(4)->Arg(16);

static void BM_ScalarPositivity(benchmark::State& state) {
  const PrismElement e = element(0.2, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(scalar_positivity_prism(e));
}
BENCHMARK(BM_ScalarPositivity);
