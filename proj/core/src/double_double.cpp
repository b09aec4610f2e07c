#include "rlk/double_double.hpp"

#include <cstdio>
#include <ostream>

namespace rlk {

namespace {

  // Series on |t| <= pi/4; terms shrink below 1e-34 after ~15 steps.
  void
  sincos_reduced(const DoubleDouble& t, DoubleDouble& s, DoubleDouble& c) noexcept {
    const DoubleDouble t2 = t * t;
    const double cutoff = 1e-34;

    DoubleDouble term = t;
    DoubleDouble sum = t;
    for (int k = 1; k < 40; ++k) {
      term = -term * t2 / DoubleDouble{double((2 * k) * (2 * k + 1))};
      sum += term;
      if (std::abs(term.hi()) < cutoff) {
        break;
      }
    }
    s = sum;

    term = DoubleDouble{1.0};
    sum = DoubleDouble{1.0};
    for (int k = 1; k < 40; ++k) {
      term = -term * t2 / DoubleDouble{double((2 * k - 1) * (2 * k))};
      sum += term;
      if (std::abs(term.hi()) < cutoff) {
        break;
      }
    }
    c = sum;
  }

} // namespace

void
sincos(const DoubleDouble& x, DoubleDouble& s, DoubleDouble& c) noexcept {
  using dd_constants::half_pi;
  using dd_constants::two_pi;

  DoubleDouble t = x - two_pi * nint(x / two_pi);
  DoubleDouble q = nint(t / half_pi);
  t = t - half_pi * q;
  int quadrant = static_cast<int>(q.hi());
  quadrant = ((quadrant % 4) + 4) % 4;

  DoubleDouble st, ct;
  sincos_reduced(t, st, ct);
  switch (quadrant) {
  case 0:
    s = st;
    c = ct;
    break;
  case 1:
    s = ct;
    c = -st;
    break;
  case 2:
    s = -st;
    c = -ct;
    break;
  default:
    s = -ct;
    c = st;
    break;
  }
}

std::string
to_string(const DoubleDouble& x, int digits) {
  if (!isfinite(x)) {
    return std::to_string(x.hi());
  }
  if (x.hi() == 0.0) {
    return "0";
  }
  // Decimal digit extraction; adequate for diagnostics and CSV output.
  DoubleDouble v = abs(x);
  int exponent = static_cast<int>(std::floor(std::log10(v.hi())));
  DoubleDouble scale{1.0};
  DoubleDouble ten{10.0};
  for (int i = 0; i < std::abs(exponent); ++i) {
    scale *= ten;
  }
  v = exponent >= 0 ? v / scale : v * scale;
  if (v.hi() >= 10.0) {
    v /= ten;
    ++exponent;
  } else if (v.hi() < 1.0) {
    v *= ten;
    --exponent;
  }

  std::string mantissa;
  for (int i = 0; i < digits; ++i) {
    int d = static_cast<int>(std::floor(v.hi()));
    if (d < 0) {
      d = 0;
    } else if (d > 9) {
      d = 9;
    }
    mantissa.push_back(static_cast<char>('0' + d));
    v = (v - DoubleDouble{double(d)}) * ten;
  }

  std::string out = x.hi() < 0.0 ? "-" : "";
  out += mantissa.substr(0, 1);
  out += '.';
  out += mantissa.substr(1);
  char buf[16];
  std::snprintf(buf, sizeof buf, "e%+03d", exponent);
  out += buf;
  return out;
}

std::ostream&
operator<<(std::ostream& os, const DoubleDouble& x) {
  return os << to_string(x);
}

} // namespace rlk
