#include "rlk/solver.hpp"

#include <algorithm>
#include <cmath>
#include <type_traits>

namespace rlk {

template <class R>
R
default_tolerance() {
  if constexpr (std::is_same_v<R, double>) {
    return 1e-10;
  } else {
    return R{1e-25};
  }
}

namespace {

  template <class R>
  std::size_t
  resolve_maxit(const SolveOptions<R>& options, std::size_t n, const char* who) {
    const std::size_t maxit = options.maxit.value_or(n);
    if (maxit > n) {
      throw InvalidArgument(std::string(who) + ": maxit exceeds the dimension");
    }
    return maxit;
  }

  template <class R>
  CVector<R>
  combine(const std::vector<std::span<const Complex<R>>>& basis, const std::vector<Complex<R>>& y,
          std::size_t n) {
    CVector<R> z(n);
    for (std::size_t k = 0; k < y.size(); ++k) {
      axpy<Complex<R>>(y[k], basis[k], z.span());
    }
    return z;
  }

  /// Realified projected problem at step j for H of size (j+1) x j:
  /// y = a + i c, unknowns ordered (a, c).
  template <class R>
  std::pair<std::vector<Complex<R>>, R>
  solve_projected(const Complex<R>& kappa, const RLinearArnoldi<R>& arnoldi, std::size_t j) {
    const std::size_t m = j + 1;
    RMatrix<R> A(2 * m, 2 * j);
    for (std::size_t k = 0; k < j; ++k) {
      for (std::size_t i = 0; i < m; ++i) {
        Complex<R> sum = arnoldi.h(i, k);
        Complex<R> diff = -arnoldi.h(i, k);
        if (i == k) {
          sum += kappa;
          diff += kappa;
        }
        A(i, k) = sum.real();
        A(m + i, k) = sum.imag();
        A(i, j + k) = -diff.imag();
        A(m + i, j + k) = diff.real();
      }
    }
    RVector<R> rhs(2 * m);
    rhs[0] = arnoldi.rhs_norm();
    const RVector<R> x = solve_real_ls<R>(A, rhs);

    R res2{0.0};
    for (std::size_t i = 0; i < 2 * m; ++i) {
      R s = -rhs[i];
      for (std::size_t k = 0; k < 2 * j; ++k) {
        s += A(i, k) * x[k];
      }
      res2 += s * s;
    }
    std::vector<Complex<R>> y(j);
    for (std::size_t k = 0; k < j; ++k) {
      y[k] = Complex<R>{x[k], x[j + k]};
    }
    return {std::move(y), sqrt(res2)};
  }

} // namespace

template <class R>
SolveReport<R>
rgmres(const Complex<R>& kappa, const CMatrix<R>& M, const CVector<R>& b, const std::type_identity_t<SolveOptions<R>>& options) {
  const std::size_t n = M.rows();
  const std::size_t maxit = resolve_maxit(options, n, "rgmres");
  const R tol = options.tol.value_or(default_tolerance<R>());
  RLinearArnoldi<R> arnoldi(M, b, maxit, options.reorthogonalize);

  SolveReport<R> report;
  report.trace.rhs_norm = arnoldi.rhs_norm();
  report.trace.residual_norms.push_back(arnoldi.rhs_norm());
  report.solution = CVector<R>(n);

  std::vector<Complex<R>> y;
  while (report.trace.residual_norms.back() > tol * arnoldi.rhs_norm() && arnoldi.step()) {
    const std::size_t j = arnoldi.steps();
    R res;
    std::tie(y, res) = solve_projected<R>(kappa, arnoldi, j);
    report.trace.residual_norms.push_back(res);
    report.iterations = j;
    if (arnoldi.broke_down()) {
      break;
    }
  }
  std::vector<std::span<const Complex<R>>> basis;
  for (std::size_t k = 0; k < y.size(); ++k) {
    basis.push_back(arnoldi.basis_vector(k));
  }
  report.solution = combine<R>(basis, y, n);
  report.breakdown_step = arnoldi.breakdown_step();
  report.converged = report.trace.residual_norms.back() <= tol * arnoldi.rhs_norm();
  return report;
}

template <class R>
SolveReport<R>
csym(const CMatrix<R>& M, const CVector<R>& b, const std::type_identity_t<SolveOptions<R>>& options) {
  using C = Complex<R>;
  const std::size_t n = M.rows();
  const std::size_t maxit = resolve_maxit(options, n, "csym");
  const R tol = options.tol.value_or(default_tolerance<R>());
  ComplexSymmetricLanczos<R> lanczos(M, b, maxit, options.reorthogonalize);

  SolveReport<R> report;
  report.trace.rhs_norm = lanczos.rhs_norm();
  report.trace.residual_norms.push_back(lanczos.rhs_norm());

  // Columns of the rotated triangular factor: r(j-2, j), r(j-1, j), r(j, j).
  struct Band {
    C r0, r1, r2;
  };
  std::vector<Band> band;
  std::vector<GivensRotation<R>> rots;
  std::vector<C> g{C{lanczos.rhs_norm()}};

  while (report.trace.residual_norms.back() > tol * lanczos.rhs_norm() && lanczos.step()) {
    const std::size_t j = lanczos.steps() - 1;
    C top{};
    C mid = j > 0 ? C{lanczos.betas()[j - 1]} : C{};
    C diag = lanczos.alphas()[j];
    C below{lanczos.betas()[j]};
    if (j >= 2) {
      rots[j - 2].apply(top, mid);
    }
    if (j >= 1) {
      rots[j - 1].apply(mid, diag);
    }
    const auto rot = make_givens<R>(diag, below);
    rot.apply(diag, below);
    rots.push_back(rot);
    band.push_back({top, mid, diag});

    g.push_back(C{});
    rot.apply(g[j], g[j + 1]);
    report.trace.residual_norms.push_back(abs(g[j + 1]));
    report.iterations = j + 1;
    if (lanczos.broke_down()) {
      break;
    }
  }

  const std::size_t k = band.size();
  std::vector<C> u(k);
  for (std::size_t i = k; i-- > 0;) {
    C s = g[i];
    if (i + 1 < k) {
      s -= band[i + 1].r1 * u[i + 1];
    }
    if (i + 2 < k) {
      s -= band[i + 2].r0 * u[i + 2];
    }
    if (band[i].r2 == C{}) {
      throw NumericalError("csym: projected tridiagonal system is singular");
    }
    u[i] = s / band[i].r2;
  }
  std::vector<std::span<const C>> basis;
  for (std::size_t i = 0; i < k; ++i) {
    u[i] = conj(u[i]);
    basis.push_back(lanczos.basis_vector(i));
  }
  report.solution = combine<R>(basis, u, n);
  report.breakdown_step = lanczos.breakdown_step();
  report.converged = report.trace.residual_norms.back() <= tol * lanczos.rhs_norm();
  return report;
}

ResidualTrace<double>
doubled_real_gmres(const cdouble& kappa, const CMatrix<double>& M, const CVector<double>& b,
                   std::size_t maxit) {
  if (!M.square() || M.rows() != b.size()) {
    throw DimensionError("doubled_real_gmres: dimension mismatch");
  }
  const std::size_t n = M.rows();
  const std::size_t N = 2 * n;
  maxit = std::min(maxit, N);
  // z = x + i y, real operator acting on (x, y).
  RMatrix<double> A(N, N);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const cdouble m = M(i, j);
      A(i, j) = m.real();
      A(i, n + j) = m.imag();
      A(n + i, j) = m.imag();
      A(n + i, n + j) = -m.real();
    }
    A(j, j) += kappa.real();
    A(j, n + j) -= kappa.imag();
    A(n + j, j) += kappa.imag();
    A(n + j, n + j) += kappa.real();
  }
  std::vector<double> rhs(N);
  for (std::size_t i = 0; i < n; ++i) {
    rhs[i] = b[i].real();
    rhs[n + i] = b[i].imag();
  }
  const double beta = norm2(std::span<const double>(rhs));
  if (beta == 0.0) {
    throw InvalidArgument("doubled_real_gmres: right-hand side is zero");
  }
  ResidualTrace<double> trace;
  trace.rhs_norm = beta;
  trace.residual_norms.push_back(beta);

  std::vector<std::vector<double>> V{rhs};
  for (auto& v : V[0]) {
    v /= beta;
  }
  RMatrix<double> H(maxit + 1, maxit);
  std::vector<double> g{beta};
  std::vector<double> cs;
  std::vector<double> sn;
  for (std::size_t j = 0; j < maxit; ++j) {
    std::vector<double> w(N);
    for (std::size_t k = 0; k < N; ++k) {
      axpy<double>(V[j][k], A.col(k), w);
    }
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i <= j; ++i) {
        const double h = cdot<double>(V[i], w);
        axpy<double>(-h, V[i], w);
        H(i, j) += h;
      }
    }
    const double hn = norm2(std::span<const double>(w));
    H(j + 1, j) = hn;
    for (std::size_t i = 0; i < j; ++i) {
      const double t = cs[i] * H(i, j) + sn[i] * H(i + 1, j);
      H(i + 1, j) = -sn[i] * H(i, j) + cs[i] * H(i + 1, j);
      H(i, j) = t;
    }
    const double rho = std::hypot(H(j, j), H(j + 1, j));
    const double c = rho == 0.0 ? 1.0 : H(j, j) / rho;
    const double s = rho == 0.0 ? 0.0 : H(j + 1, j) / rho;
    cs.push_back(c);
    sn.push_back(s);
    H(j, j) = rho;
    H(j + 1, j) = 0.0;
    g.push_back(-s * g[j]);
    g[j] *= c;
    trace.residual_norms.push_back(std::abs(g[j + 1]));
    if (hn <= 1e-13 * frobenius_norm(A)) {
      break;
    }
    for (auto& v : w) {
      v /= hn;
    }
    V.push_back(std::move(w));
  }
  return trace;
}

#define RLK_INSTANTIATE_SOLVER(R)                                                                 \
  template R default_tolerance<R>();                                                            \
  template SolveReport<R> rgmres<R>(const Complex<R>&, const CMatrix<R>&, const CVector<R>&,     \
                                    const std::type_identity_t<SolveOptions<R>>&);                                    \
  template SolveReport<R> csym<R>(const CMatrix<R>&, const CVector<R>&, const std::type_identity_t<SolveOptions<R>>&);

RLK_INSTANTIATE_SOLVER(double)
RLK_INSTANTIATE_SOLVER(DoubleDouble)

#undef RLK_INSTANTIATE_SOLVER

} // namespace rlk
