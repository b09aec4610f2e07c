#include "rlk/coneig.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rlk/linalg.hpp"
#include "rlk/random.hpp"

namespace rlk {

namespace {

  /// Eigenvalues of A conj(A), validated as real nonnegative and returned
  /// as clamped real parts, ascending.
  std::vector<double>
  squared_moduli(const CMatrix<double>& A, const ConTolerance& tol) {
    const auto AA = matmul(A, conjugate(A));
    const double scale = frobenius_norm(AA);
    const double slack = tol.imag * (scale > 0.0 ? scale : 1.0);
    std::vector<double> mu;
    for (const auto& z : eig_dense(AA)) {
      if (std::abs(z.imag()) > slack || z.real() < -slack) {
        throw InvalidArgument("not contriangularizable: M conj(M) has eigenvalue (" + std::to_string(z.real()) +
                              ", " + std::to_string(z.imag()) + ")");
      }
      mu.push_back(std::max(z.real(), 0.0));
    }
    std::sort(mu.begin(), mu.end());
    return mu;
  }

  CVector<double>
  conj_image(const CMatrix<double>& A, const CVector<double>& v) {
    return matvec(A, conjugate(v));
  }

  /// Unit x with A conj(x) = sigma x, from the smallest eigenvalue of A conj(A).
  CVector<double>
  smallest_coneigenvector(const CMatrix<double>& A, double sigma2) {
    const double sigma = std::sqrt(sigma2);
    const auto AA = matmul(A, conjugate(A));
    const CVector<double> v = inverse_iteration(AA, cdouble{sigma2}, 6);
    const CVector<double> w = conj_image(A, v);
    CVector<double> x(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      x[i] = w[i] + sigma * v[i];
    }
    double nx = norm2(x);
    if (nx <= 1e-8 * std::max(1.0, sigma)) {
      if (sigma == 0.0) {
        x = v;
      } else {
        for (std::size_t i = 0; i < v.size(); ++i) {
          x[i] = cdouble{0.0, 1.0} * v[i];
        }
      }
      nx = norm2(x);
    }
    for (auto& xi : x) {
      xi /= nx;
    }
    return x;
  }

  /// Unitary with first column exactly x.
  CMatrix<double>
  unitary_completion(const CVector<double>& x, Rng* rng) {
    const std::size_t m = x.size();
    CMatrix<double> X(m, 1);
    std::copy(x.begin(), x.end(), X.col(0).begin());
    auto Q = qr_householder(X, true).Q;
    const cdouble phase = cdot<cdouble>(Q.col(0), x.span());
    for (auto& q : Q.col(0)) {
      q *= phase;
    }
    if (rng != nullptr && m >= 2) {
      const auto W = random_unitary(m - 1, *rng);
      CMatrix<double> tail(m, m - 1);
      for (std::size_t j = 0; j < m - 1; ++j) {
        for (std::size_t k = 0; k < m - 1; ++k) {
          axpy<cdouble>(W(k, j), Q.col(k + 1), tail.col(j));
        }
      }
      for (std::size_t j = 0; j < m - 1; ++j) {
        std::copy(tail.col(j).begin(), tail.col(j).end(), Q.col(j + 1).begin());
      }
    }
    return Q;
  }

} // namespace

std::vector<double>
coneigenvalue_moduli(const CMatrix<double>& M, const ConTolerance& tol) {
  if (!M.square()) {
    throw DimensionError("coneigenvalue_moduli: matrix is not square");
  }
  auto mu = squared_moduli(M, tol);
  for (auto& m : mu) {
    m = std::sqrt(m);
  }
  return mu;
}

bool
is_condiagonalizable(const CMatrix<double>& M, const ConTolerance& tol) {
  if (!M.square()) {
    return false;
  }
  std::vector<double> mu;
  try {
    mu = squared_moduli(M, tol);
  } catch (const InvalidArgument&) {
    return false;
  }
  const double top = mu.empty() ? 0.0 : mu.back();
  for (std::size_t i = 1; i < mu.size(); ++i) {
    if (mu[i] - mu[i - 1] <= tol.gap * top) {
      return false;
    }
  }
  return true;
}

ConSchur
con_schur(const CMatrix<double>& M, std::optional<std::uint64_t> extension_seed, const ConTolerance& tol) {
  if (!M.square()) {
    throw DimensionError("con_schur: matrix is not square");
  }
  const std::size_t n = M.rows();
  const double mnorm = frobenius_norm(M);
  std::optional<Rng> rng;
  if (extension_seed) {
    rng.emplace(*extension_seed);
  }

  CMatrix<double> U = CMatrix<double>::identity(n);
  CMatrix<double> T = M;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const std::size_t m = n - k;
    CMatrix<double> A(m, m);
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t i = 0; i < m; ++i) {
        A(i, j) = T(k + i, k + j);
      }
    }
    const auto mu = squared_moduli(A, tol);
    const auto x = smallest_coneigenvector(A, mu.front());
    const double sigma = std::sqrt(mu.front());

    const auto ax = conj_image(A, x);
    double defect = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      defect += std::norm(ax[i] - sigma * x[i]);
    }
    if (std::sqrt(defect) > 1e-6 * std::max(mnorm, 1e-300)) {
      throw NumericalError("con_schur: deflation failed at step " + std::to_string(k) + " (coneigenvector residual " +
                           std::to_string(std::sqrt(defect)) + "); M conj(M) may be defective");
    }

    const auto Q = unitary_completion(x, rng ? &*rng : nullptr);
    const auto Qc = conjugate(Q);
    const auto Qh = adjoint(Q);
    // T <- diag(I, Q^*) T conj(diag(I, Q)); U <- U diag(I, Q)
    CMatrix<double> rows(m, n);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < m; ++i) {
        cdouble s{};
        for (std::size_t l = 0; l < m; ++l) {
          s += Qh(i, l) * T(k + l, j);
        }
        rows(i, j) = s;
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < m; ++i) {
        T(k + i, j) = rows(i, j);
      }
    }
    CMatrix<double> cols(n, m);
    CMatrix<double> ucols(n, m);
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t l = 0; l < m; ++l) {
        axpy<cdouble>(Qc(l, j), T.col(k + l), cols.col(j));
        axpy<cdouble>(Q(l, j), U.col(k + l), ucols.col(j));
      }
    }
    for (std::size_t j = 0; j < m; ++j) {
      std::copy(cols.col(j).begin(), cols.col(j).end(), T.col(k + j).begin());
      std::copy(ucols.col(j).begin(), ucols.col(j).end(), U.col(k + j).begin());
    }
  }

  // The last 1x1 block: rotate its phase to make the entry nonnegative.
  if (n > 0) {
    const cdouble t = T(n - 1, n - 1);
    if (std::abs(t) > 0.0) {
      const cdouble half = std::polar(1.0, std::arg(t) / 2.0);
      for (auto& u : U.col(n - 1)) {
        u *= half;
      }
      for (std::size_t j = 0; j < n; ++j) {
        T(n - 1, j) *= std::conj(half);
      }
      for (std::size_t i = 0; i < n; ++i) {
        T(i, n - 1) *= std::conj(half);
      }
    }
  }

  ConSchur out{std::move(U), CMatrix<double>(n, n)};
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      out.R(i, j) = T(i, j);
    }
    out.R(j, j) = cdouble{std::max(T(j, j).real(), 0.0)};
  }
  return out;
}

CMatrix<double>
con_diagonalize_triangular(const CMatrix<double>& R) {
  if (!R.square()) {
    throw DimensionError("con_diagonalize_triangular: matrix is not square");
  }
  const std::size_t n = R.rows();
  CMatrix<double> T = CMatrix<double>::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lk = R(k, k).real();
    for (std::size_t i = k; i-- > 0;) {
      const double li = R(i, i).real();
      // li conj(x) - lk x = c
      cdouble c{};
      for (std::size_t l = i + 1; l <= k; ++l) {
        c -= R(i, l) * std::conj(T(l, k));
      }
      if (li == lk) {
        throw InvalidArgument("degenerate coneigenvalues: equal moduli " + std::to_string(li));
      }
      T(i, k) = cdouble{c.real() / (li - lk), -c.imag() / (li + lk)};
    }
  }
  return T;
}

ConDiagonalization
con_diagonalize(const CMatrix<double>& M, const ConTolerance& tol) {
  const ConSchur cs = con_schur(M, std::nullopt, tol);
  const std::size_t n = M.rows();
  std::vector<double> lambda(n);
  for (std::size_t i = 0; i < n; ++i) {
    lambda[i] = cs.R(i, i).real();
  }
  const double top = n == 0 ? 0.0 : lambda.back();
  for (std::size_t i = 1; i < n; ++i) {
    if (lambda[i] - lambda[i - 1] <= tol.gap * top) {
      throw InvalidArgument("degenerate coneigenvalues: moduli " + std::to_string(lambda[i - 1]) + " and " +
                            std::to_string(lambda[i]) + " are not separated");
    }
  }
  ConDiagonalization out;
  out.X = matmul(cs.U, con_diagonalize_triangular(cs.R));
  out.lambda = std::move(lambda);
  out.cond_X = cond2(out.X);
  return out;
}

double
con_schur_residual(const CMatrix<double>& M, const ConSchur& cs) {
  const auto rec = matmul(cs.U, matmul(cs.R, transpose(cs.U)));
  return frobenius_norm(subtract(M, rec)) / frobenius_norm(M);
}

double
con_diagonalization_residual(const CMatrix<double>& M, const ConDiagonalization& cd) {
  const auto Xinv = LuFactorization<double>(cd.X).inverse();
  const auto L = diagonal_matrix<cdouble>(std::vector<cdouble>(cd.lambda.begin(), cd.lambda.end()));
  const auto rec = matmul(cd.X, matmul(L, conjugate(Xinv)));
  return frobenius_norm(subtract(M, rec)) / frobenius_norm(M);
}

std::vector<cdouble>
phase_diag(const CVector<double>& v) {
  std::vector<cdouble> d(v.size(), cdouble{1.0});
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    if (a > 0.0) {
      d[i] = v[i] / a;
    }
  }
  return d;
}

TransportedNodes
transported_nodes(const CMatrix<double>& M, const CVector<double>& b, const ConTolerance& tol) {
  if (b.size() != M.rows()) {
    throw DimensionError("transported_nodes: right-hand side length does not match matrix");
  }
  const auto cd = con_diagonalize(M, tol);
  const auto c = LuFactorization<double>(cd.X).solve(b);
  const auto d = phase_diag(c);
  TransportedNodes out;
  out.cond_X = cd.cond_X;
  for (std::size_t j = 0; j < c.size(); ++j) {
    const cdouble dc = std::conj(d[j]);
    out.nodes.push_back(cd.lambda[j] * dc * dc);
    out.r.push_back(std::abs(c[j]));
    out.weights.push_back(std::norm(c[j]));
  }
  return out;
}

RMatrix<double>
isometry_phase_factor(const CMatrix<double>& U, const CMatrix<double>& V) {
  if (U.rows() != V.rows() || U.cols() != V.cols()) {
    throw DimensionError("isometry_phase_factor: U and V differ in shape");
  }
  const auto UUt = matmul(U, transpose(U));
  const auto VVt = matmul(V, transpose(V));
  if (frobenius_norm(subtract(UUt, VVt)) > 1e-10 * std::max(1.0, frobenius_norm(UUt))) {
    throw InvalidArgument("isometry_phase_factor: U U^T differs from V V^T");
  }
  const auto Rc = matmul(adjoint(U), V);
  const std::size_t m = Rc.rows();
  RMatrix<double> R(m, m);
  double imag = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      R(i, j) = Rc(i, j).real();
      imag = std::max(imag, std::abs(Rc(i, j).imag()));
    }
  }
  CMatrix<double> Rr(m, m);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      Rr(i, j) = R(i, j);
    }
  }
  const double defect = frobenius_norm(subtract(V, matmul(U, Rr)));
  if (imag > 1e-8 || defect > 1e-8) {
    throw InvalidArgument("isometry_phase_factor: U^* V is not a real orthogonal factor (imag " +
                          std::to_string(imag) + ", defect " + std::to_string(defect) + ")");
  }
  return R;
}

} // namespace rlk
