#pragma once

//
// Ginibre sampling and Monte Carlo estimates of the probability that a
// random matrix is condiagonalizable.
//

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "rlk/dense.hpp"
#include "rlk/random.hpp"

namespace rlk {

enum class GinibreKind { complex, real };

std::string_view
to_string(GinibreKind kind) noexcept;

/// Throws InvalidArgument for anything but "complex" or "real".
GinibreKind
parse_ginibre_kind(std::string_view text);

/// Complex kind: g1 + i g2 per entry; real kind: one standard normal.
CMatrix<double>
sample_ginibre(std::size_t n, GinibreKind kind, Rng& rng);

struct McEstimate {
  std::size_t n{0};
  GinibreKind kind{GinibreKind::complex};
  std::size_t samples{0};
  std::size_t hits{0};
  double p_hat{0.0};
  double stderr_{0.0}; ///< sqrt(p_hat (1 - p_hat) / samples)
  double expected{1.0};
};

/// 2^{-n(n-1)/2} (complex) or 2^{-n(n-1)/4} (real).
double
expected_condiag_probability(std::size_t n, GinibreKind kind);

/// Trial i draws from Rng::stream(seed, i), so the estimate does not
/// depend on how trials are scheduled. `threads` = 0 uses the hardware
/// concurrency.
McEstimate
estimate_condiag_probability(std::size_t n, GinibreKind kind, std::size_t samples, std::uint64_t seed,
                             unsigned threads = 1);

} // namespace rlk
