#pragma once

//
// Double-double extended precision: a real number stored as the
// unevaluated sum hi + lo of two doubles with |lo| <= ulp(hi)/2.
// Roughly 32 significant decimal digits.
//

#include <cmath>
#include <compare>
#include <iosfwd>
#include <string>

namespace rlk {

namespace eft {

  /// Error-free sum: s + e == a + b exactly.
  struct Pair {
    double hi;
    double lo;
  };

  constexpr Pair
  two_sum(double a, double b) noexcept {
    double s = a + b;
    double bb = s - a;
    double e = (a - (s - bb)) + (b - bb);
    return {s, e};
  }

  /// Requires |a| >= |b| (or a == 0).
  constexpr Pair
  quick_two_sum(double a, double b) noexcept {
    double s = a + b;
    double e = b - (s - a);
    return {s, e};
  }

  /// Error-free product: p + e == a * b exactly (barring overflow).
  inline Pair
  two_prod(double a, double b) noexcept {
    double p = a * b;
    double e = std::fma(a, b, -p);
    return {p, e};
  }

} // namespace eft

class DoubleDouble {
public:
  constexpr DoubleDouble() noexcept = default;
  constexpr DoubleDouble(double x) noexcept : hi_{x} {} // NOLINT(google-explicit-constructor)
  constexpr DoubleDouble(int x) noexcept : hi_{static_cast<double>(x)} {} // NOLINT

  /// Builds hi + lo, renormalizing the pair.
  static DoubleDouble
  from_sum(double a, double b) noexcept {
    auto [s, e] = eft::two_sum(a, b);
    return raw(s, e);
  }

  constexpr double
  hi() const noexcept {
    return hi_;
  }
  constexpr double
  lo() const noexcept {
    return lo_;
  }

  /// Nearest double; drops the low word.
  explicit constexpr operator double() const noexcept { return hi_; }

  constexpr DoubleDouble
  operator-() const noexcept {
    return raw(-hi_, -lo_);
  }

  friend DoubleDouble
  operator+(const DoubleDouble& a, const DoubleDouble& b) noexcept {
    auto [s1, s2] = eft::two_sum(a.hi_, b.hi_);
    auto [t1, t2] = eft::two_sum(a.lo_, b.lo_);
    s2 += t1;
    auto [u1, u2] = eft::quick_two_sum(s1, s2);
    u2 += t2;
    auto [v1, v2] = eft::quick_two_sum(u1, u2);
    return raw(v1, v2);
  }

  friend DoubleDouble
  operator-(const DoubleDouble& a, const DoubleDouble& b) noexcept {
    return a + (-b);
  }

  friend DoubleDouble
  operator*(const DoubleDouble& a, const DoubleDouble& b) noexcept {
    auto [p1, p2] = eft::two_prod(a.hi_, b.hi_);
    p2 += a.hi_ * b.lo_ + a.lo_ * b.hi_;
    auto [s, e] = eft::quick_two_sum(p1, p2);
    return raw(s, e);
  }

  // One Newton correction from the double quotient.
  friend DoubleDouble
  operator/(const DoubleDouble& a, const DoubleDouble& b) noexcept {
    double q0 = a.hi_ / b.hi_;
    DoubleDouble r = a - b * DoubleDouble{q0};
    double q1 = r.hi_ / b.hi_;
    auto [s, e] = eft::quick_two_sum(q0, q1);
    return raw(s, e);
  }

  DoubleDouble&
  operator+=(const DoubleDouble& o) noexcept {
    return *this = *this + o;
  }
  DoubleDouble&
  operator-=(const DoubleDouble& o) noexcept {
    return *this = *this - o;
  }
  DoubleDouble&
  operator*=(const DoubleDouble& o) noexcept {
    return *this = *this * o;
  }
  DoubleDouble&
  operator/=(const DoubleDouble& o) noexcept {
    return *this = *this / o;
  }

  friend constexpr bool
  operator==(const DoubleDouble& a, const DoubleDouble& b) noexcept {
    return a.hi_ == b.hi_ && a.lo_ == b.lo_;
  }

  friend constexpr std::partial_ordering
  operator<=>(const DoubleDouble& a, const DoubleDouble& b) noexcept {
    if (auto c = a.hi_ <=> b.hi_; c != 0) {
      return c;
    }
    return a.lo_ <=> b.lo_;
  }

private:
  static constexpr DoubleDouble
  raw(double hi, double lo) noexcept {
    DoubleDouble x;
    x.hi_ = hi;
    x.lo_ = lo;
    return x;
  }

  double hi_{0.0};
  double lo_{0.0};
};

using dd_real = DoubleDouble;

inline DoubleDouble
abs(const DoubleDouble& x) noexcept {
  return x.hi() < 0.0 || (x.hi() == 0.0 && x.lo() < 0.0) ? -x : x;
}

inline DoubleDouble
sqrt(const DoubleDouble& a) noexcept {
  if (a.hi() <= 0.0) {
    return DoubleDouble{std::sqrt(a.hi())};
  }
  double x0 = std::sqrt(a.hi());
  auto [p, e] = eft::two_prod(x0, x0);
  DoubleDouble residual = a - DoubleDouble::from_sum(p, e);
  return DoubleDouble{x0} + DoubleDouble{residual.hi() / (2.0 * x0)};
}

inline bool
isfinite(const DoubleDouble& x) noexcept {
  return std::isfinite(x.hi()) && std::isfinite(x.lo());
}

inline double
to_double(const DoubleDouble& x) noexcept {
  return x.hi();
}

namespace dd_constants {
  inline const DoubleDouble pi = DoubleDouble::from_sum(3.141592653589793116e+00, 1.224646799147353207e-16);
  inline const DoubleDouble two_pi = DoubleDouble::from_sum(6.283185307179586232e+00, 2.449293598294706414e-16);
  inline const DoubleDouble half_pi = DoubleDouble::from_sum(1.570796326794896558e+00, 6.123233995736766036e-17);
} // namespace dd_constants

/// Nearest integer, as a double (exact for the magnitudes used here).
inline DoubleDouble
nint(const DoubleDouble& x) noexcept {
  double h = std::nearbyint(x.hi());
  if (h == x.hi()) {
    return DoubleDouble::from_sum(h, std::nearbyint(x.lo()));
  }
  if (std::abs(h - x.hi()) == 0.5 && x.lo() != 0.0) {
    h = x.lo() > 0.0 ? std::ceil(x.hi()) : std::floor(x.hi());
  }
  return DoubleDouble{h};
}

/// sin and cos of x. Argument reduced modulo pi/2, then Taylor series
/// on |t| <= pi/4.
void
sincos(const DoubleDouble& x, DoubleDouble& s, DoubleDouble& c) noexcept;

std::string
to_string(const DoubleDouble& x, int digits = 32);

std::ostream&
operator<<(std::ostream& os, const DoubleDouble& x);

} // namespace rlk
