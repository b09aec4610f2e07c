#include "rlk/randmat.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include "rlk/coneig.hpp"

namespace rlk {

std::string_view
to_string(GinibreKind kind) noexcept {
  return kind == GinibreKind::complex ? "complex" : "real";
}

GinibreKind
parse_ginibre_kind(std::string_view text) {
  if (text == "complex") {
    return GinibreKind::complex;
  }
  if (text == "real") {
    return GinibreKind::real;
  }
  throw InvalidArgument("unknown Ginibre kind '" + std::string(text) + "' (expected complex or real)");
}

CMatrix<double>
sample_ginibre(std::size_t n, GinibreKind kind, Rng& rng) {
  if (n == 0) {
    throw InvalidArgument("sample_ginibre: n must be positive");
  }
  CMatrix<double> G(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      G(i, j) = kind == GinibreKind::complex ? rng.complex_normal() : cdouble{rng.normal()};
    }
  }
  return G;
}

double
expected_condiag_probability(std::size_t n, GinibreKind kind) {
  const double pairs = static_cast<double>(n) * static_cast<double>(n - (n > 0 ? 1 : 0));
  return std::exp2(-(kind == GinibreKind::complex ? pairs / 2.0 : pairs / 4.0));
}

McEstimate
estimate_condiag_probability(std::size_t n, GinibreKind kind, std::size_t samples, std::uint64_t seed,
                             unsigned threads) {
  if (samples == 0) {
    throw InvalidArgument("estimate_condiag_probability: samples must be positive");
  }
  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, samples));

  auto count = [&](std::size_t begin, std::size_t end) {
    std::size_t hits = 0;
    for (std::size_t i = begin; i < end; ++i) {
      auto rng = Rng::stream(seed, i);
      hits += is_condiagonalizable(sample_ginibre(n, kind, rng)) ? 1 : 0;
    }
    return hits;
  };

  std::size_t hits = 0;
  if (threads == 1) {
    hits = count(0, samples);
  } else {
    std::vector<std::size_t> partial(threads, 0);
    std::vector<std::jthread> pool;
    const std::size_t chunk = (samples + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = std::min(samples, t * chunk);
      const std::size_t end = std::min(samples, begin + chunk);
      pool.emplace_back([&, t, begin, end] { partial[t] = count(begin, end); });
    }
    pool.clear();
    for (auto h : partial) {
      hits += h;
    }
  }

  McEstimate est;
  est.n = n;
  est.kind = kind;
  est.samples = samples;
  est.hits = hits;
  est.p_hat = static_cast<double>(hits) / static_cast<double>(samples);
  est.stderr_ = std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(samples));
  est.expected = expected_condiag_probability(n, kind);
  return est;
}

} // namespace rlk
