#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>

#include "rlk/coneig.hpp"
#include "rlk/linalg.hpp"
#include "rlk/random.hpp"
#include "rlk/solver.hpp"

namespace {

using rlk::CMatrix;
using rlk::CVector;
using rlk::cdouble;

CMatrix<double>
ginibre(std::size_t n, rlk::Rng& rng) {
  CMatrix<double> A(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      A(i, j) = rng.complex_normal() / std::sqrt(static_cast<double>(n));
    }
  }
  return A;
}

CVector<double>
ones(std::size_t n) {
  return CVector<double>(n, cdouble{1.0});
}

void
BM_Rgmres(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  rlk::Rng rng(1);
  const auto M = ginibre(n, rng);
  const auto b = ones(n);
  rlk::SolveOptions<double> opts;
  opts.maxit = std::min<std::size_t>(n, 60);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rlk::rgmres(cdouble{2.0}, M, b, opts));
  }
}
BENCHMARK(BM_Rgmres)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void
BM_Csym(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  rlk::Rng rng(2);
  auto M = ginibre(n, rng);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      M(i, j) = M(j, i) = 0.5 * (M(i, j) + M(j, i));
    }
  }
  const auto b = ones(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rlk::csym(M, b));
  }
}
BENCHMARK(BM_Csym)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void
BM_CsymDoubleDouble(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  CMatrix<rlk::DoubleDouble> D(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n - 1);
    D(i, i) = rlk::DDComplex{std::polar(1.0 + 9.0 * t, t)};
  }
  const CVector<rlk::DoubleDouble> b(n, rlk::DDComplex{1.0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(rlk::csym(D, b));
  }
}
BENCHMARK(BM_CsymDoubleDouble)->Arg(100)->Unit(benchmark::kMillisecond);

void
BM_ConSchur(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  rlk::Rng rng(3);
  auto M = ginibre(n, rng);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      M(i, j) = M(j, i) = 0.5 * (M(i, j) + M(j, i));
    }
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(rlk::con_schur(M));
  }
}
BENCHMARK(BM_ConSchur)->Arg(20)->Arg(50)->Unit(benchmark::kMillisecond);

} // namespace
