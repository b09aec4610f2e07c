#include "rlk/random.hpp"

#include <cmath>

#include "rlk/linalg.hpp"

namespace rlk {

std::uint64_t
splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double
Rng::normal() {
  if (spare_) {
    const double v = *spare_;
    spare_.reset();
    return v;
  }
  double u;
  double v;
  double s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  return u * f;
}

CMatrix<double>
random_unitary(std::size_t n, Rng& rng) {
  CMatrix<double> G(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      G(i, j) = rng.complex_normal();
    }
  }
  auto qr = qr_householder(G, true);
  for (std::size_t j = 0; j < n; ++j) {
    const cdouble r = qr.R(j, j);
    const cdouble phase = std::abs(r) > 0.0 ? r / std::abs(r) : cdouble{1.0};
    for (std::size_t i = 0; i < n; ++i) {
      qr.Q(i, j) *= phase;
    }
  }
  return qr.Q;
}

} // namespace rlk
