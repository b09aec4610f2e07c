#include "rlk/polyspace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "rlk/linalg.hpp"

namespace rlk {

namespace {

  using Poly = std::vector<cdouble>; // ascending coefficients in x

  cdouble
  polyval(const Poly& c, cdouble x) {
    cdouble s{};
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
      s = s * x + *it;
    }
    return s;
  }

  double
  abs_scale(const Poly& c, double ax) {
    double s = 0.0;
    double p = 1.0;
    for (const auto& a : c) {
      s += std::abs(a) * p;
      p *= std::max(1.0, ax);
    }
    return s;
  }

  Poly
  trimmed(Poly c) {
    while (!c.empty() && c.back() == cdouble{}) {
      c.pop_back();
    }
    return c;
  }

  Poly
  poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) {
      return {};
    }
    Poly c(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) {
        c[i + j] += a[i] * b[j];
      }
    }
    return c;
  }

  Poly
  poly_conj(Poly c) {
    for (auto& a : c) {
      a = std::conj(a);
    }
    return c;
  }

  /// Quotient of c by (x - x0); the remainder is dropped.
  Poly
  deflate(const Poly& c, double x0) {
    if (c.size() <= 1) {
      return {};
    }
    Poly q(c.size() - 1);
    cdouble carry{};
    for (std::size_t i = c.size(); i-- > 1;) {
      carry = c[i] + carry * x0;
      q[i - 1] = carry;
    }
    return q;
  }

  std::vector<cdouble>
  poly_roots(const Poly& c) {
    const Poly p = trimmed(c);
    if (p.size() <= 1) {
      return {};
    }
    const std::size_t d = p.size() - 1;
    CMatrix<double> C(d, d);
    for (std::size_t i = 1; i < d; ++i) {
      C(i, i - 1) = 1.0;
    }
    for (std::size_t i = 0; i < d; ++i) {
      C(i, d - 1) = -p[i] / p[d];
    }
    return eig_dense(C);
  }

  bool
  nonnegative_real_candidate(cdouble x, double imag_tol) {
    return std::abs(x.imag()) <= imag_tol * std::max(1.0, std::abs(x)) && x.real() >= -1e-10;
  }

  /// Chebyshev least squares fit in t = (2x - (lo + hi)) / (hi - lo),
  /// returned as monomial coefficients in x.
  Poly
  fit_in_x(const std::vector<double>& xs, const std::vector<cdouble>& vals, std::size_t degree) {
    const auto [mn, mx] = std::minmax_element(xs.begin(), xs.end());
    const double lo = *mn;
    const double hi = *mx;
    if (hi <= lo) {
      degree = 0;
    }
    if (xs.size() < degree + 1) {
      throw InvalidArgument("curve fit: " + std::to_string(xs.size()) + " samples cannot determine degree " +
                            std::to_string(degree));
    }
    const double c0 = hi > lo ? -(lo + hi) / (hi - lo) : 0.0;
    const double c1 = hi > lo ? 2.0 / (hi - lo) : 0.0;

    RMatrix<double> A(xs.size(), degree + 1);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double t = c0 + c1 * xs[i];
      double tkm1 = 1.0;
      double tk = t;
      A(i, 0) = 1.0;
      for (std::size_t k = 1; k <= degree; ++k) {
        A(i, k) = tk;
        const double next = 2.0 * t * tk - tkm1;
        tkm1 = tk;
        tk = next;
      }
    }
    RVector<double> re(xs.size());
    RVector<double> im(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      re[i] = vals[i].real();
      im[i] = vals[i].imag();
    }
    const auto cr = solve_real_ls<double>(A, re);
    const auto ci = solve_real_ls<double>(A, im);

    // T_k(t(x)) as monomials in x, accumulated into the result.
    Poly out(degree + 1);
    Poly tkm1{1.0};
    Poly tk{c0, c1};
    out[0] += cdouble{cr[0], ci[0]};
    for (std::size_t k = 1; k <= degree; ++k) {
      const cdouble a{cr[k], ci[k]};
      for (std::size_t i = 0; i < tk.size(); ++i) {
        out[i] += a * tk[i];
      }
      Poly next = poly_mul(Poly{2.0 * c0, 2.0 * c1}, tk);
      for (std::size_t i = 0; i < tkm1.size(); ++i) {
        next[i] -= tkm1[i];
      }
      tkm1 = std::move(tk);
      tk = std::move(next);
    }
    return out;
  }

  struct Coefficients {
    std::vector<double> x;
    std::vector<cdouble> a1;
    std::vector<cdouble> a2;
  };

  R2Polynomial
  assemble(const Poly& p1, const Poly* p2) {
    R2Polynomial p;
    const std::size_t n1 = p1.size();
    const std::size_t n2 = p2 ? p2->size() : 0;
    const std::size_t len = std::max(2 * n1 - 1, n2 == 0 ? std::size_t{0} : 2 * n2);
    p.coeffs.assign(len, cdouble{});
    for (std::size_t k = 0; k < n1; ++k) {
      p.coeffs[2 * k] = p1[k];
    }
    for (std::size_t k = 0; k < n2; ++k) {
      p.coeffs[2 * k + 1] = (*p2)[k];
    }
    return p;
  }

  void
  check_modulus(cdouble z, double r, const char* which) {
    if (std::abs(std::abs(z) - r) > 1e-12 * std::max(1.0, r)) {
      throw InvalidArgument(std::string("curve: |") + which + "(r)| differs from r at r = " + std::to_string(r));
    }
  }

} // namespace

// -- coefficients and evaluation --------------------------------------------

std::vector<cdouble>
R2Polynomial::even_part() const {
  std::vector<cdouble> u;
  for (std::size_t i = 0; i < coeffs.size(); i += 2) {
    u.push_back(coeffs[i]);
  }
  return u;
}

std::vector<cdouble>
R2Polynomial::odd_part() const {
  std::vector<cdouble> v;
  for (std::size_t i = 1; i < coeffs.size(); i += 2) {
    v.push_back(coeffs[i]);
  }
  return v;
}

R2Polynomial
conj_shift(const R2Polynomial& p) {
  R2Polynomial q;
  q.coeffs.assign(p.coeffs.size() + 1, cdouble{});
  for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
    q.coeffs[i + 1] = std::conj(p.coeffs[i]);
  }
  return q;
}

cdouble
eval_r2(const R2Polynomial& p, cdouble lambda) {
  const cdouble x{std::norm(lambda)};
  return polyval(p.even_part(), x) + lambda * polyval(p.odd_part(), x);
}

void
NodeSystem::validate() const {
  if (nodes.size() != weights.size()) {
    throw InvalidArgument("node system: " + std::to_string(nodes.size()) + " nodes but " +
                          std::to_string(weights.size()) + " weights");
  }
  if (nodes.empty()) {
    throw InvalidArgument("node system: no nodes");
  }
  double scale = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i])) {
      throw InvalidArgument("node system: weight " + std::to_string(i) + " is not positive");
    }
    scale = std::max(scale, std::abs(nodes[i]));
  }
  scale = std::max(scale, 1.0);
  std::vector<std::pair<double, std::size_t>> moduli;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(nodes[i] - nodes[j]) <= 1e-14 * scale) {
        throw InvalidArgument("node system: duplicate nodes " + std::to_string(j) + " and " + std::to_string(i));
      }
    }
    moduli.emplace_back(std::abs(nodes[i]), i);
  }
  std::sort(moduli.begin(), moduli.end());
  std::size_t run = 1;
  for (std::size_t i = 1; i < moduli.size(); ++i) {
    run = moduli[i].first - moduli[i - 1].first <= 1e-12 * scale ? run + 1 : 1;
    if (run >= 3) {
      throw InvalidArgument("node system: three or more nodes share modulus " + std::to_string(moduli[i].first));
    }
  }
}

cdouble
discrete_inner_product(const R2Polynomial& p, const R2Polynomial& q, const NodeSystem& nodes) {
  if (nodes.nodes.size() != nodes.weights.size()) {
    throw InvalidArgument("discrete_inner_product: node and weight counts differ");
  }
  cdouble s{};
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    s += eval_r2(p, nodes.nodes[k]) * std::conj(eval_r2(q, nodes.nodes[k])) * nodes.weights[k];
  }
  return s;
}

// -- orthogonal polynomials -------------------------------------------------

OrthoPolynomials
orthopoly_eval(const JacobiMatrix<double>& J, cdouble lambda, std::size_t k) {
  if (k >= J.size()) {
    throw InvalidArgument("orthopoly_eval: p_" + std::to_string(k) + " needs beta_" + std::to_string(k) +
                          " but the Jacobi matrix has order " + std::to_string(J.size()));
  }
  OrthoPolynomials out;
  out.values.push_back(1.0);
  out.polys.push_back(R2Polynomial{{1.0}});
  for (std::size_t j = 1; j <= k; ++j) {
    const cdouble alpha = J.alphas[j - 1];
    const double beta = J.betas[j - 1];
    const R2Polynomial& prev = out.polys[j - 1];

    cdouble val = lambda * std::conj(out.values[j - 1]) - alpha * out.values[j - 1];
    R2Polynomial next = conj_shift(prev);
    for (std::size_t i = 0; i < prev.coeffs.size(); ++i) {
      next.coeffs[i] -= alpha * prev.coeffs[i];
    }
    if (j >= 2) {
      const double beta_prev = J.betas[j - 2];
      val -= beta_prev * out.values[j - 2];
      const R2Polynomial& prev2 = out.polys[j - 2];
      for (std::size_t i = 0; i < prev2.coeffs.size(); ++i) {
        next.coeffs[i] -= beta_prev * prev2.coeffs[i];
      }
    }
    for (auto& c : next.coeffs) {
      c /= beta;
    }
    out.values.push_back(val / beta);
    out.polys.push_back(std::move(next));
  }
  return out;
}

template <class R>
std::vector<Complex<R>>
orthopoly_values(const JacobiMatrix<R>& J, const Complex<R>& lambda, std::size_t k) {
  if (k >= J.size()) {
    throw InvalidArgument("orthopoly_values: p_" + std::to_string(k) + " needs beta_" + std::to_string(k) +
                          " but the Jacobi matrix has order " + std::to_string(J.size()));
  }
  using C = Complex<R>;
  std::vector<C> v{C{R{1.0}}};
  for (std::size_t j = 1; j <= k; ++j) {
    C next = lambda * conj(v[j - 1]) - J.alphas[j - 1] * v[j - 1];
    if (j >= 2) {
      next -= J.betas[j - 2] * v[j - 2];
    }
    v.push_back(next / J.betas[j - 1]);
  }
  return v;
}

template <class R>
JacobiMatrix<R>
node_jacobi(const NodeSystem& nodes) {
  nodes.validate();
  const std::size_t n = nodes.size();
  double total = 0.0;
  for (double w : nodes.weights) {
    total += w;
  }
  CMatrix<R> D(n, n);
  CVector<R> r(n);
  for (std::size_t i = 0; i < n; ++i) {
    D(i, i) = to_complex<R>(nodes.nodes[i]);
    r[i] = Complex<R>{sqrt(R{nodes.weights[i]} / R{total})};
  }
  ComplexSymmetricLanczos<R> lanczos(D, r, n, true);
  while (lanczos.step()) {
  }
  if (lanczos.steps() < n) {
    throw NumericalError("node system: monomials are dependent on these nodes (Lanczos breakdown at step " +
                         std::to_string(lanczos.steps()) + " of " + std::to_string(n) + ")");
  }
  return lanczos.jacobi();
}

template std::vector<Complex<double>>
orthopoly_values<double>(const JacobiMatrix<double>&, const Complex<double>&, std::size_t);
template std::vector<Complex<DoubleDouble>>
orthopoly_values<DoubleDouble>(const JacobiMatrix<DoubleDouble>&, const Complex<DoubleDouble>&, std::size_t);
template JacobiMatrix<double>
node_jacobi<double>(const NodeSystem&);
template JacobiMatrix<DoubleDouble>
node_jacobi<DoubleDouble>(const NodeSystem&);

R2Polynomial
interpolate_r2(const NodeSystem& nodes, const std::vector<cdouble>& values) {
  if (values.size() != nodes.size()) {
    throw InvalidArgument("interpolate_r2: " + std::to_string(values.size()) + " values for " +
                          std::to_string(nodes.size()) + " nodes");
  }
  // Projection onto the orthonormal basis is exact only if the basis is
  // orthonormal at the nodes; in double the recurrence drifts too far.
  using DD = DoubleDouble;
  using DC = DDComplex;
  const std::size_t n = nodes.size();
  const auto J = node_jacobi<DD>(nodes);
  double total = 0.0;
  for (double w : nodes.weights) {
    total += w;
  }
  std::vector<DC> c(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto vals = orthopoly_values<DD>(J, to_complex<DD>(nodes.nodes[i]), n - 1);
    const DD w = DD{nodes.weights[i]} / DD{total};
    const DC f = to_complex<DD>(values[i]);
    for (std::size_t j = 0; j < n; ++j) {
      c[j] += f * conj(vals[j]) * w;
    }
  }
  // Monomial coefficients of p_0 .. p_{n-1}, accumulated into the result.
  std::vector<DC> acc(n);
  std::vector<DC> prev2;
  std::vector<DC> prev{DC{DD{1.0}}};
  acc[0] = c[0];
  for (std::size_t j = 1; j < n; ++j) {
    std::vector<DC> next(j + 1);
    for (std::size_t i = 0; i < prev.size(); ++i) {
      next[i + 1] += conj(prev[i]);
      next[i] -= J.alphas[j - 1] * prev[i];
    }
    for (std::size_t i = 0; i < prev2.size(); ++i) {
      next[i] -= J.betas[j - 2] * prev2[i];
    }
    for (auto& x : next) {
      x /= J.betas[j - 1];
    }
    for (std::size_t i = 0; i <= j; ++i) {
      acc[i] += c[j] * next[i];
    }
    prev2 = std::move(prev);
    prev = std::move(next);
  }
  R2Polynomial p;
  for (const auto& x : acc) {
    p.coeffs.push_back(to_cdouble(x));
  }
  return p;
}

// -- zero structure ---------------------------------------------------------

std::vector<ZeroModulus>
zero_moduli(const R2Polynomial& p) {
  Poly u = trimmed(p.even_part());
  Poly v = trimmed(p.odd_part());
  if (u.empty() && v.empty()) {
    throw InvalidArgument("zero_moduli: the zero polynomial vanishes everywhere");
  }
  const double pscale = abs_scale(p.coeffs, 1.0);
  std::vector<ZeroModulus> out;

  // Full circles: common nonnegative real roots of u and v.
  const Poly& seed = u.empty() ? v : u;
  std::vector<double> circles;
  for (const auto& x : poly_roots(seed)) {
    if (!nonnegative_real_candidate(x, 1e-8)) {
      continue;
    }
    const double x0 = std::max(x.real(), 0.0);
    const double tol_u = 1e-8 * abs_scale(u, x0);
    const double tol_v = 1e-8 * abs_scale(v, x0);
    if (std::abs(polyval(u, x0)) > tol_u || std::abs(polyval(v, x0)) > tol_v) {
      continue;
    }
    circles.push_back(x0);
  }
  std::sort(circles.begin(), circles.end());
  for (double x0 : circles) {
    u = trimmed(deflate(u, x0));
    v = trimmed(deflate(v, x0));
    const double m = std::sqrt(x0);
    const bool seen = std::any_of(out.begin(), out.end(), [&](const ZeroModulus& z) {
      return std::abs(z.modulus - m) <= 1e-6 * std::max(1.0, m);
    });
    if (!seen) {
      out.push_back(m == 0.0 ? ZeroModulus{0.0, ZeroKind::point, cdouble{}} : ZeroModulus{m, ZeroKind::full_circle, {}});
    }
  }

  // Isolated zeros: |u(x)|^2 - x |v(x)|^2 = 0 gives lambda = -u(x)/v(x).
  if (!v.empty()) {
    Poly q = poly_mul(u, poly_conj(u));
    Poly xv = poly_mul(Poly{0.0, 1.0}, poly_mul(v, poly_conj(v)));
    q.resize(std::max(q.size(), xv.size()));
    for (std::size_t i = 0; i < xv.size(); ++i) {
      q[i] -= xv[i];
    }
    for (auto& c : q) {
      c = c.real();
    }
    for (const auto& x : poly_roots(q)) {
      if (!nonnegative_real_candidate(x, 1e-6)) {
        continue;
      }
      const double x0 = std::max(x.real(), 0.0);
      const double m = std::sqrt(x0);
      const cdouble vx = polyval(v, x0);
      if (vx == cdouble{}) {
        continue;
      }
      const cdouble ratio = -polyval(u, x0) / vx;
      const cdouble lambda = std::abs(ratio) > 0.0 ? m * ratio / std::abs(ratio) : cdouble{m};
      if (std::abs(eval_r2(p, lambda)) > 1e-6 * std::max(pscale, abs_scale(p.coeffs, m))) {
        continue;
      }
      const bool seen = std::any_of(out.begin(), out.end(), [&](const ZeroModulus& z) {
        return z.kind == ZeroKind::point ? std::abs(z.point - lambda) <= 1e-6 * std::max(1.0, m)
                                         : std::abs(z.modulus - m) <= 1e-6 * std::max(1.0, m);
      });
      if (!seen) {
        out.push_back({m, ZeroKind::point, lambda});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const ZeroModulus& a, const ZeroModulus& b) { return a.modulus < b.modulus; });
  return out;
}

// -- exponential ------------------------------------------------------------

cdouble
exp_r2(cdouble lambda, std::size_t terms) {
  const double x = std::norm(lambda);
  double even = 1.0; // x^j / (2j)!
  double odd = 1.0;  // x^j / (2j+1)!
  cdouble sum{};
  for (std::size_t j = 0; j < terms; ++j) {
    sum += even + lambda * odd;
    const double a = static_cast<double>(2 * j + 1);
    even *= x / (a * (a + 1.0));
    odd *= x / ((a + 1.0) * (a + 2.0));
  }
  return sum;
}

// -- approximation on curves ------------------------------------------------

namespace {

  ApproxResult
  fit_coefficients(const Coefficients& data, bool single_branch, std::size_t degree) {
    ApproxResult out;
    out.single_branch = single_branch;
    const Poly p1 = fit_in_x(data.x, data.a1, degree);
    if (single_branch) {
      out.p = assemble(p1, nullptr);
    } else {
      const Poly p2 = fit_in_x(data.x, data.a2, degree);
      out.p = assemble(p1, &p2);
    }
    return out;
  }

  /// Endpoint collars where the branches merge. Inside a collar f is
  /// pulled towards its merge-point value: held constant on the inner half,
  /// blended linearly back to f across the outer half.
  struct Collars {
    bool low{false};
    bool high{false};
    double lo{0.0};
    double hi{0.0};
    double width{0.0};
    cdouble f_low{};
    cdouble f_high{};
    double div_tol{0.0};

    bool
    contains(double r) const {
      return (low && r <= lo + width) || (high && r >= hi - width);
    }

    /// (a1, a2) with g = a1 + a2 z at both branch points, g the mollified f.
    std::pair<cdouble, cdouble>
    coefficients(double r, cdouble z1, cdouble z2, cdouble f1, cdouble f2, const char* who) const {
      double s = 1.0;
      cdouble anchor{};
      if (low && r <= lo + width) {
        s = std::clamp((r - lo - 0.5 * width) / (0.5 * width), 0.0, 1.0);
        anchor = f_low;
      } else if (high && r >= hi - width) {
        s = std::clamp((hi - r - 0.5 * width) / (0.5 * width), 0.0, 1.0);
        anchor = f_high;
      }
      if (s == 0.0) {
        return {anchor, cdouble{}};
      }
      const cdouble g1 = s == 1.0 ? f1 : anchor + s * (f1 - anchor);
      const cdouble g2 = s == 1.0 ? f2 : anchor + s * (f2 - anchor);
      const cdouble d = z2 - z1;
      if (std::abs(d) <= div_tol) {
        throw InvalidArgument(std::string(who) + ": branches meet at r = " + std::to_string(r) +
                              " away from a mollified endpoint");
      }
      const cdouble a2 = (g2 - g1) / d;
      return {g1 - a2 * z1, a2};
    }
  };

} // namespace

ApproxResult
approx_on_curve(const CurveSpec& curve, const std::function<cdouble(cdouble)>& f, std::size_t degree) {
  if (!curve.z1) {
    throw InvalidArgument("approx_on_curve: the curve needs at least one branch");
  }
  if (!(curve.r2 > curve.r1) || curve.r1 < 0.0) {
    throw InvalidArgument("approx_on_curve: radial range [" + std::to_string(curve.r1) + ", " +
                          std::to_string(curve.r2) +
                          "] is empty; a curve of constant modulus meets that circle in more than two points");
  }
  const std::size_t count = 4 * (degree + 1);
  const double mid = 0.5 * (curve.r1 + curve.r2);
  const double half = 0.5 * (curve.r2 - curve.r1);
  std::vector<double> radii(count);
  for (std::size_t i = 0; i < count; ++i) {
    radii[i] = mid + half * std::cos(std::numbers::pi * (static_cast<double>(i) + 0.5) / static_cast<double>(count));
  }
  // Coinciding branches everywhere are one branch.
  const bool single = !curve.z2 || std::all_of(radii.begin(), radii.end(), [&](double r) {
                        return std::abs(curve.z2(r) - curve.z1(r)) <= 1e-10 * curve.r2;
                      });
  auto z2 = [&](double r) { return single ? curve.z1(r) : curve.z2(r); };

  Collars col;
  col.lo = curve.r1;
  col.hi = curve.r2;
  col.width = 0.02 * (curve.r2 - curve.r1);
  col.div_tol = 1e-10 * curve.r2;
  if (!single) {
    col.low = std::abs(z2(curve.r1) - curve.z1(curve.r1)) <= col.div_tol;
    col.high = std::abs(z2(curve.r2) - curve.z1(curve.r2)) <= col.div_tol;
  }
  col.f_low = f(curve.z1(curve.r1));
  col.f_high = f(curve.z1(curve.r2));

  // The branches must stay apart on the open interval, not just at the
  // fitting radii.
  const std::size_t grid = 400;
  if (!single) {
    for (std::size_t i = 1; i < grid; ++i) {
      const double r = curve.r1 + (curve.r2 - curve.r1) * static_cast<double>(i) / static_cast<double>(grid);
      if (!col.contains(r) && std::abs(z2(r) - curve.z1(r)) <= col.div_tol) {
        throw InvalidArgument("approx_on_curve: branches meet at r = " + std::to_string(r) +
                              " away from a mollified endpoint");
      }
    }
  }

  Coefficients data;
  for (const double r : radii) {
    const cdouble w1 = curve.z1(r);
    const cdouble w2 = z2(r);
    check_modulus(w1, r, "z1");
    check_modulus(w2, r, "z2");
    data.x.push_back(r * r);
    if (single) {
      data.a1.push_back(f(w1));
      continue;
    }
    const auto [a1, a2] = col.coefficients(r, w1, w2, f(w1), f(w2), "approx_on_curve");
    data.a1.push_back(a1);
    data.a2.push_back(a2);
  }
  ApproxResult out = fit_coefficients(data, single, degree);

  for (std::size_t i = 0; i <= grid; ++i) {
    const double r = curve.r1 + (curve.r2 - curve.r1) * static_cast<double>(i) / static_cast<double>(grid);
    for (const cdouble z : {curve.z1(r), z2(r)}) {
      const double e = std::abs(eval_r2(out.p, z) - f(z));
      double& slot = col.contains(r) ? out.collar_error : out.sup_error;
      slot = std::max(slot, e);
    }
  }
  return out;
}

ApproxResult
fit_r2_on_samples(const std::vector<CurveSample>& samples, std::size_t degree) {
  if (samples.empty()) {
    throw InvalidArgument("fit_r2_on_samples: no samples");
  }
  double rmin = samples.front().r;
  double rmax = samples.front().r;
  for (const auto& s : samples) {
    check_modulus(s.z1, s.r, "z1");
    check_modulus(s.z2, s.r, "z2");
    rmin = std::min(rmin, s.r);
    rmax = std::max(rmax, s.r);
  }
  Collars col;
  col.lo = rmin;
  col.hi = rmax;
  col.width = 0.02 * (rmax - rmin);
  col.div_tol = 1e-10 * rmax;
  const bool single = std::all_of(samples.begin(), samples.end(),
                                  [&](const CurveSample& s) { return std::abs(s.z2 - s.z1) <= col.div_tol; });
  for (const auto& s : samples) {
    const bool merged = std::abs(s.z2 - s.z1) <= col.div_tol;
    if (merged && s.r == rmin) {
      col.low = true;
      col.f_low = s.f1;
    }
    if (merged && s.r == rmax) {
      col.high = true;
      col.f_high = s.f1;
    }
  }

  Coefficients data;
  for (const auto& s : samples) {
    data.x.push_back(s.r * s.r);
    if (single) {
      data.a1.push_back(s.f1);
      continue;
    }
    const auto [a1, a2] = col.coefficients(s.r, s.z1, s.z2, s.f1, s.f2, "fit_r2_on_samples");
    data.a1.push_back(a1);
    data.a2.push_back(a2);
  }
  ApproxResult out = fit_coefficients(data, single, degree);
  for (const auto& s : samples) {
    const double e = std::max(std::abs(eval_r2(out.p, s.z1) - s.f1), std::abs(eval_r2(out.p, s.z2) - s.f2));
    double& slot = (!single && col.contains(s.r)) ? out.collar_error : out.sup_error;
    slot = std::max(slot, e);
  }
  return out;
}

} // namespace rlk
