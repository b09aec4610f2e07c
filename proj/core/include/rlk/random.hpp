#pragma once

//
// Reproducible random streams. std::normal_distribution is
// implementation-defined, so normals are drawn with the polar method on
// top of mt19937_64 to keep streams identical across standard libraries.
//

#include <cstdint>
#include <optional>
#include <random>

#include "rlk/dense.hpp"

namespace rlk {

std::uint64_t
splitmix64(std::uint64_t x) noexcept;

class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_{seed} {}

  /// Independent stream for (seed, index), e.g. one per Monte Carlo trial.
  static Rng
  stream(std::uint64_t seed, std::uint64_t index) {
    return Rng{splitmix64(seed ^ splitmix64(index + 0x9e3779b97f4a7c15ULL))};
  }

  std::uint64_t
  next() {
    return engine_();
  }

  /// Uniform in [0, 1) with 53 random bits.
  double
  uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double
  normal();

  cdouble
  complex_normal() {
    const double re = normal();
    return {re, normal()};
  }

private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

/// Haar-distributed unitary matrix (QR of a complex Ginibre matrix with
/// the phases of diag(R) divided out).
CMatrix<double>
random_unitary(std::size_t n, Rng& rng);

} // namespace rlk
