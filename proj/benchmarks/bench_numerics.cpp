#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>
#include <vector>

#include "rlk/bound.hpp"
#include "rlk/double_double.hpp"
#include "rlk/randmat.hpp"

namespace {

void
BM_DoubleDoubleMultiplyAdd(benchmark::State& state) {
  rlk::DoubleDouble acc{0.0};
  const rlk::DoubleDouble x{1.0000001};
  for (auto _ : state) {
    acc = acc * x + x;
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_DoubleDoubleMultiplyAdd);

void
BM_DoubleDoubleDivideSqrt(benchmark::State& state) {
  rlk::DoubleDouble v{2.0};
  for (auto _ : state) {
    v = sqrt(v / rlk::DoubleDouble{1.5}) + rlk::DoubleDouble{1.0};
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_DoubleDoubleDivideSqrt);

void
BM_LawsonMinmax(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<rlk::cdouble> nodes;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n - 1);
    nodes.push_back(std::polar(1.0 + 9.0 * t, 2.0 * M_PI * t));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(rlk::lawson_minmax(nodes, rlk::cdouble{0.0}, 9));
  }
}
BENCHMARK(BM_LawsonMinmax)->Arg(20)->Arg(50)->Unit(benchmark::kMillisecond);

void
BM_CondiagProbability(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(rlk::estimate_condiag_probability(3, rlk::GinibreKind::complex, 1000, 7));
  }
}
BENCHMARK(BM_CondiagProbability)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
