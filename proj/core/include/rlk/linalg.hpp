#pragma once

//
// Dense linear algebra kernels shared by every module: BLAS-1/2/3 style
// helpers (header-only), plus the factorizations and the eigensolver
// (compiled, instantiated for double and DoubleDouble).
//

#include <complex>
#include <cstddef>
#include <span>
#include <type_traits>
#include <vector>

#include "rlk/dense.hpp"
#include "rlk/error.hpp"
#include "rlk/scalar.hpp"

namespace rlk {

template <class T>
struct is_complex : std::false_type {};
template <class R>
struct is_complex<std::complex<R>> : std::true_type {};
template <>
struct is_complex<DDComplex> : std::true_type {};
template <class T>
inline constexpr bool is_complex_v = is_complex<T>::value;

template <class T>
struct RealOfT {
  using type = T;
};
template <class R>
struct RealOfT<std::complex<R>> {
  using type = R;
};
template <>
struct RealOfT<DDComplex> {
  using type = DoubleDouble;
};
template <class T>
using RealOf = typename RealOfT<T>::type;

template <class T>
inline T
conj_of(const T& x) {
  if constexpr (is_complex_v<T>) {
    return conj(x);
  } else {
    return x;
  }
}

template <class T>
inline RealOf<T>
abs2(const T& x) {
  if constexpr (is_complex_v<T>) {
    return norm(x);
  } else {
    return x * x;
  }
}

template <class T>
inline RealOf<T>
norm2(std::span<const T> x) {
  RealOf<T> s{0.0};
  for (const auto& v : x) {
    s += abs2(v);
  }
  return sqrt(s);
}

template <class T>
inline RealOf<T>
norm2(const DenseVector<T>& x) {
  return norm2(x.span());
}

/// conj(x)^T y.
template <class T>
inline T
cdot(std::span<const T> x, std::span<const T> y) {
  if (x.size() != y.size()) {
    throw DimensionError("cdot: length mismatch");
  }
  T s{0.0};
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += conj_of(x[i]) * y[i];
  }
  return s;
}

template <class T>
inline T
cdot(const DenseVector<T>& x, const DenseVector<T>& y) {
  return cdot(x.span(), y.span());
}

/// y += a x.
template <class T>
inline void
axpy(const T& a, std::span<const T> x, std::span<T> y) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    y[i] += a * x[i];
  }
}

template <class T>
inline DenseVector<T>
conjugate(const DenseVector<T>& x) {
  DenseVector<T> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    y[i] = conj_of(x[i]);
  }
  return y;
}

template <class T>
inline DenseMatrix<T>
conjugate(const DenseMatrix<T>& A) {
  DenseMatrix<T> B(A.rows(), A.cols());
  for (std::size_t j = 0; j < A.cols(); ++j) {
    for (std::size_t i = 0; i < A.rows(); ++i) {
      B(i, j) = conj_of(A(i, j));
    }
  }
  return B;
}

template <class T>
inline DenseMatrix<T>
transpose(const DenseMatrix<T>& A) {
  DenseMatrix<T> B(A.cols(), A.rows());
  for (std::size_t j = 0; j < A.cols(); ++j) {
    for (std::size_t i = 0; i < A.rows(); ++i) {
      B(j, i) = A(i, j);
    }
  }
  return B;
}

template <class T>
inline DenseMatrix<T>
adjoint(const DenseMatrix<T>& A) {
  DenseMatrix<T> B(A.cols(), A.rows());
  for (std::size_t j = 0; j < A.cols(); ++j) {
    for (std::size_t i = 0; i < A.rows(); ++i) {
      B(j, i) = conj_of(A(i, j));
    }
  }
  return B;
}

template <class T>
inline DenseVector<T>
matvec(const DenseMatrix<T>& A, std::span<const T> x) {
  if (A.cols() != x.size()) {
    throw DimensionError("matvec: " + std::to_string(A.rows()) + "x" + std::to_string(A.cols()) +
                         " matrix times vector of length " + std::to_string(x.size()));
  }
  DenseVector<T> y(A.rows());
  for (std::size_t j = 0; j < A.cols(); ++j) {
    const T xj = x[j];
    auto cj = A.col(j);
    for (std::size_t i = 0; i < A.rows(); ++i) {
      y[i] += cj[i] * xj;
    }
  }
  return y;
}

template <class T>
inline DenseVector<T>
matvec(const DenseMatrix<T>& A, const DenseVector<T>& x) {
  return matvec(A, x.span());
}

template <class T>
inline DenseMatrix<T>
matmul(const DenseMatrix<T>& A, const DenseMatrix<T>& B) {
  if (A.cols() != B.rows()) {
    throw DimensionError("matmul: inner dimensions differ");
  }
  DenseMatrix<T> C(A.rows(), B.cols());
  for (std::size_t j = 0; j < B.cols(); ++j) {
    for (std::size_t k = 0; k < A.cols(); ++k) {
      const T bkj = B(k, j);
      if (bkj == T{0.0}) {
        continue;
      }
      for (std::size_t i = 0; i < A.rows(); ++i) {
        C(i, j) += A(i, k) * bkj;
      }
    }
  }
  return C;
}

template <class T>
inline DenseMatrix<T>
subtract(const DenseMatrix<T>& A, const DenseMatrix<T>& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols()) {
    throw DimensionError("subtract: shape mismatch");
  }
  DenseMatrix<T> C(A.rows(), A.cols());
  for (std::size_t j = 0; j < A.cols(); ++j) {
    for (std::size_t i = 0; i < A.rows(); ++i) {
      C(i, j) = A(i, j) - B(i, j);
    }
  }
  return C;
}

template <class T>
inline RealOf<T>
frobenius_norm(const DenseMatrix<T>& A) {
  RealOf<T> s{0.0};
  for (std::size_t j = 0; j < A.cols(); ++j) {
    for (const auto& v : A.col(j)) {
      s += abs2(v);
    }
  }
  return sqrt(s);
}

template <class T>
inline DenseMatrix<T>
diagonal_matrix(std::span<const T> d) {
  DenseMatrix<T> D(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    D(i, i) = d[i];
  }
  return D;
}

/// First `k` columns of A.
template <class T>
inline DenseMatrix<T>
leading_columns(const DenseMatrix<T>& A, std::size_t k) {
  if (k > A.cols()) {
    throw DimensionError("leading_columns: too many columns requested");
  }
  DenseMatrix<T> B(A.rows(), k);
  for (std::size_t j = 0; j < k; ++j) {
    std::copy(A.col(j).begin(), A.col(j).end(), B.col(j).begin());
  }
  return B;
}

/// Unitary rotation G = [[c, s], [-conj(s), c]] with G [a; b] = [r; 0].
template <class R>
struct GivensRotation {
  R c;
  Complex<R> s;

  /// Applies G to the pair (x, y) in place.
  void
  apply(Complex<R>& x, Complex<R>& y) const {
    const Complex<R> t = c * x + s * y;
    y = c * y - conj(s) * x;
    x = t;
  }
};

template <class R>
GivensRotation<R>
make_givens(const Complex<R>& a, const Complex<R>& b) {
  const R aa = abs(a);
  const R bb = abs(b);
  if (bb == R{0.0}) {
    return {R{1.0}, Complex<R>{}};
  }
  if (aa == R{0.0}) {
    return {R{0.0}, Complex<R>{1.0}};
  }
  const R scale = aa + bb;
  const R rho = scale * sqrt((aa / scale) * (aa / scale) + (bb / scale) * (bb / scale));
  const Complex<R> phase = a / aa;
  return {aa / rho, phase * conj(b) / rho};
}

/// kappa z + M conj(z): the R-linear operator z -> M_kappa z.
template <class R>
CVector<R>
apply_antilinear(const Complex<R>& kappa, const CMatrix<R>& M, const CVector<R>& z) {
  if (!M.square()) {
    throw DimensionError("apply_antilinear: matrix is not square");
  }
  if (M.cols() != z.size()) {
    throw DimensionError("apply_antilinear: vector length does not match matrix");
  }
  CVector<R> y = matvec(M, conjugate(z));
  for (std::size_t i = 0; i < z.size(); ++i) {
    y[i] += kappa * z[i];
  }
  return y;
}

/// min ||A x - b||_2 for a real m x n matrix with m >= n, by Householder
/// QR. Throws NumericalError when the triangular factor has a diagonal
/// entry below 10 max(m, n) eps times the largest diagonal entry.
template <class R>
RVector<R>
solve_real_ls(const RMatrix<R>& A, const RVector<R>& b);

/// Eigenvalues of a square complex matrix with multiplicity: Householder
/// reduction to Hessenberg form followed by single-shift QR with
/// Wilkinson shifts. Throws NumericalError after 30 n sweeps.
template <class R>
std::vector<Complex<R>>
eig_dense(const CMatrix<R>& A);

/// Eigenvalues of a Hermitian matrix, ascending.
template <class R>
std::vector<R>
hermitian_eigenvalues(const CMatrix<R>& A);

/// Singular values by one-sided Jacobi, descending.
template <class R>
std::vector<R>
singular_values(const CMatrix<R>& A);

/// 2-norm condition number; +inf for numerically singular A.
template <class R>
R
cond2(const CMatrix<R>& A);

/// Spectral norm.
template <class R>
R
norm_2(const CMatrix<R>& A);

/// LU with partial pivoting of a square complex matrix.
template <class R>
class LuFactorization {
public:
  explicit LuFactorization(CMatrix<R> A);

  /// Throws NumericalError when a pivot is below n * eps * max|A|.
  CVector<R>
  solve(const CVector<R>& b) const;
  CMatrix<R>
  solve(const CMatrix<R>& B) const;
  CMatrix<R>
  inverse() const;
  Complex<R>
  determinant() const;

  bool
  singular() const noexcept {
    return singular_;
  }

private:
  void
  require_regular() const;

  CMatrix<R> lu_;
  std::vector<std::size_t> perm_;
  int sign_{1};
  bool singular_{false};
};

template <class Real>
struct QrFactors {
  CMatrix<Real> Q; ///< m x m unitary (full) or m x n (thin)
  CMatrix<Real> R; ///< m x n (full) or n x n (thin), upper triangular
};

/// Householder QR of an m x n complex matrix.
template <class R>
QrFactors<R>
qr_householder(const CMatrix<R>& A, bool full);

/// Eigenvector for an eigenvalue estimate `lambda` by shifted inverse
/// iteration; returns a unit vector.
template <class R>
CVector<R>
inverse_iteration(const CMatrix<R>& A, const Complex<R>& lambda, int iterations = 4);

// Deducing overloads: Complex<R> hides R from template argument deduction,
// so calls without explicit <R> resolve through the element type here.

template <class C>
  requires is_complex_v<C>
auto
eig_dense(const DenseMatrix<C>& A) {
  return eig_dense<RealOf<C>>(A);
}

template <class C>
  requires is_complex_v<C>
auto
hermitian_eigenvalues(const DenseMatrix<C>& A) {
  return hermitian_eigenvalues<RealOf<C>>(A);
}

template <class C>
  requires is_complex_v<C>
auto
singular_values(const DenseMatrix<C>& A) {
  return singular_values<RealOf<C>>(A);
}

template <class C>
  requires is_complex_v<C>
auto
cond2(const DenseMatrix<C>& A) {
  return cond2<RealOf<C>>(A);
}

template <class C>
  requires is_complex_v<C>
auto
norm_2(const DenseMatrix<C>& A) {
  return norm_2<RealOf<C>>(A);
}

template <class C>
  requires is_complex_v<C>
auto
qr_householder(const DenseMatrix<C>& A, bool full) {
  return qr_householder<RealOf<C>>(A, full);
}

template <class C>
  requires is_complex_v<C>
auto
inverse_iteration(const DenseMatrix<C>& A, const C& lambda, int iterations = 4) {
  return inverse_iteration<RealOf<C>>(A, lambda, iterations);
}

template <class C>
  requires is_complex_v<C>
auto
apply_antilinear(const C& kappa, const DenseMatrix<C>& M, const DenseVector<C>& z) {
  return apply_antilinear<RealOf<C>>(kappa, M, z);
}

} // namespace rlk
