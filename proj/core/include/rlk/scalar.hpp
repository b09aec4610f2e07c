#pragma once

//
// Precision family used throughout the library. Every numerical
// template is parameterized by a real type R (double or DoubleDouble);
// Complex<R> is std::complex<double> for R = double and DDComplex for
// R = DoubleDouble.
//

#include <cmath>
#include <complex>
#include <string_view>
#include <type_traits>

#include "rlk/double_double.hpp"

namespace rlk {

// Overload sets in rlk cover both precisions, so generic code can call
// sqrt/abs/isfinite unqualified.
using std::abs;
using std::isfinite;
using std::sqrt;

inline double
to_double(double x) noexcept {
  return x;
}

/// Complex number over DoubleDouble. Mirrors the std::complex surface
/// used by the generic code.
class DDComplex {
public:
  using value_type = DoubleDouble;

  constexpr DDComplex() noexcept = default;
  constexpr DDComplex(DoubleDouble re, DoubleDouble im = DoubleDouble{}) noexcept // NOLINT
      : re_{re}
      , im_{im} {}
  constexpr DDComplex(double re, double im = 0.0) noexcept // NOLINT
      : re_{re}
      , im_{im} {}
  explicit DDComplex(const std::complex<double>& z) noexcept : re_{z.real()}, im_{z.imag()} {}

  constexpr DoubleDouble
  real() const noexcept {
    return re_;
  }
  constexpr DoubleDouble
  imag() const noexcept {
    return im_;
  }

  explicit operator std::complex<double>() const noexcept { return {re_.hi(), im_.hi()}; }

  DDComplex
  operator-() const noexcept {
    return {-re_, -im_};
  }

  friend DDComplex
  operator+(const DDComplex& a, const DDComplex& b) noexcept {
    return {a.re_ + b.re_, a.im_ + b.im_};
  }
  friend DDComplex
  operator-(const DDComplex& a, const DDComplex& b) noexcept {
    return {a.re_ - b.re_, a.im_ - b.im_};
  }
  friend DDComplex
  operator*(const DDComplex& a, const DDComplex& b) noexcept {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend DDComplex
  operator/(const DDComplex& a, const DDComplex& b) noexcept {
    // Scaled to keep the denominator near one.
    DoubleDouble s = abs(b.re_) > abs(b.im_) ? abs(b.re_) : abs(b.im_);
    DDComplex bs{b.re_ / s, b.im_ / s};
    DoubleDouble den = bs.re_ * bs.re_ + bs.im_ * bs.im_;
    DDComplex num = a * DDComplex{bs.re_, -bs.im_};
    return {num.re_ / den / s, num.im_ / den / s};
  }

  friend DDComplex
  operator+(const DDComplex& a, const DoubleDouble& b) noexcept {
    return {a.re_ + b, a.im_};
  }
  friend DDComplex
  operator+(const DoubleDouble& a, const DDComplex& b) noexcept {
    return {a + b.re_, b.im_};
  }
  friend DDComplex
  operator-(const DDComplex& a, const DoubleDouble& b) noexcept {
    return {a.re_ - b, a.im_};
  }
  friend DDComplex
  operator-(const DoubleDouble& a, const DDComplex& b) noexcept {
    return {a - b.re_, -b.im_};
  }
  friend DDComplex
  operator*(const DDComplex& a, const DoubleDouble& b) noexcept {
    return {a.re_ * b, a.im_ * b};
  }
  friend DDComplex
  operator*(const DoubleDouble& a, const DDComplex& b) noexcept {
    return {a * b.re_, a * b.im_};
  }
  friend DDComplex
  operator/(const DDComplex& a, const DoubleDouble& b) noexcept {
    return {a.re_ / b, a.im_ / b};
  }

  DDComplex&
  operator+=(const DDComplex& o) noexcept {
    return *this = *this + o;
  }
  DDComplex&
  operator-=(const DDComplex& o) noexcept {
    return *this = *this - o;
  }
  DDComplex&
  operator*=(const DDComplex& o) noexcept {
    return *this = *this * o;
  }
  DDComplex&
  operator/=(const DDComplex& o) noexcept {
    return *this = *this / o;
  }
  DDComplex&
  operator*=(const DoubleDouble& o) noexcept {
    return *this = *this * o;
  }
  DDComplex&
  operator/=(const DoubleDouble& o) noexcept {
    return *this = *this / o;
  }

  friend bool
  operator==(const DDComplex& a, const DDComplex& b) noexcept {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

private:
  DoubleDouble re_{};
  DoubleDouble im_{};
};

inline DoubleDouble
real(const DDComplex& z) noexcept {
  return z.real();
}
inline DoubleDouble
imag(const DDComplex& z) noexcept {
  return z.imag();
}
inline DDComplex
conj(const DDComplex& z) noexcept {
  return {z.real(), -z.imag()};
}
inline DoubleDouble
norm(const DDComplex& z) noexcept {
  return z.real() * z.real() + z.imag() * z.imag();
}
inline DoubleDouble
abs(const DDComplex& z) noexcept {
  DoubleDouble a = abs(z.real());
  DoubleDouble b = abs(z.imag());
  DoubleDouble s = a > b ? a : b;
  if (s.hi() == 0.0) {
    return DoubleDouble{};
  }
  a /= s;
  b /= s;
  return s * sqrt(a * a + b * b);
}

template <class R>
struct ComplexOf {
  using type = std::complex<R>;
};

template <>
struct ComplexOf<DoubleDouble> {
  using type = DDComplex;
};

template <class R>
using Complex = typename ComplexOf<R>::type;

using cdouble = std::complex<double>;

/// Per-precision constants.
template <class R>
struct RealTraits;

template <>
struct RealTraits<double> {
  static constexpr double
  epsilon() noexcept {
    return 0x1p-52;
  }
  static constexpr std::string_view name{"double"};
};

template <>
struct RealTraits<DoubleDouble> {
  static constexpr double
  epsilon() noexcept {
    return 0x1p-104;
  }
  static constexpr std::string_view name{"dd"};
};

template <class R>
constexpr double
epsilon() noexcept {
  return RealTraits<R>::epsilon();
}

template <class R>
inline Complex<R>
to_complex(const std::complex<double>& z) {
  if constexpr (std::is_same_v<R, double>) {
    return z;
  } else {
    return DDComplex{z};
  }
}

inline std::complex<double>
to_cdouble(const std::complex<double>& z) noexcept {
  return z;
}

inline std::complex<double>
to_cdouble(const DDComplex& z) noexcept {
  return static_cast<std::complex<double>>(z);
}

/// e^{i theta} in the working precision.
template <class R>
inline Complex<R>
unit_phase(const R& theta) {
  if constexpr (std::is_same_v<R, double>) {
    return {std::cos(theta), std::sin(theta)};
  } else {
    DoubleDouble s, c;
    sincos(theta, s, c);
    return {c, s};
  }
}

template <class R>
inline R
pi() {
  if constexpr (std::is_same_v<R, double>) {
    return 3.14159265358979323846;
  } else {
    return dd_constants::pi;
  }
}

} // namespace rlk
