#pragma once

//
// Krylov subspaces of the R-linear operator z -> kappa z + M conj(z).
//
// The subspace K_j = span{b, M conj(b), M conj(M) b, ...} does not depend
// on kappa, so both processes below only ever touch M conj(.).
//

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rlk/dense.hpp"
#include "rlk/linalg.hpp"

namespace rlk {

/// Q (orthonormal columns) and H ((steps+1) x steps upper Hessenberg)
/// with M conj(Q_steps) = Q_{steps+1} H. After a breakdown Q has only
/// `steps` columns and the last row of H is zero.
template <class R>
struct KrylovFactorization {
  CMatrix<R> Q;
  CMatrix<R> H;
  std::size_t steps{0};
  std::optional<std::size_t> breakdown_step; ///< 1-based
};

/// Complex symmetric tridiagonal: complex diagonal, positive off-diagonal.
template <class R>
struct JacobiMatrix {
  std::vector<Complex<R>> alphas;
  std::vector<R> betas; ///< alphas.size() - 1 entries, all > 0

  std::size_t
  size() const noexcept {
    return alphas.size();
  }

  CMatrix<R>
  to_dense() const;
};

/// New directions with norm <= this are treated as breakdown:
/// 1e-13 ||M||_F in double, 1e-28 ||M||_F in double-double.
template <class R>
R
breakdown_tolerance(const R& matrix_norm);

/// Symmetry gate for the Lanczos recurrence: ||M^T - M||_F <= 1e-12 ||M||_F.
template <class R>
bool
is_complex_symmetric(const CMatrix<R>& M);

/// Incremental R-linear Arnoldi process. Holds a reference to M, which
/// must outlive the object.
template <class R>
class RLinearArnoldi {
public:
  using C = Complex<R>;

  /// Throws InvalidArgument for b = 0 or max_steps > n.
  RLinearArnoldi(const CMatrix<R>& M, const CVector<R>& b, std::size_t max_steps, bool reorthogonalize = true);

  /// Advances one step; false once max_steps is reached or after breakdown.
  bool
  step();

  std::size_t
  steps() const noexcept {
    return steps_;
  }
  bool
  broke_down() const noexcept {
    return breakdown_.has_value();
  }
  std::optional<std::size_t>
  breakdown_step() const noexcept {
    return breakdown_;
  }
  const R&
  rhs_norm() const noexcept {
    return beta0_;
  }
  std::size_t
  basis_size() const noexcept {
    return q_.size();
  }
  std::span<const C>
  basis_vector(std::size_t j) const {
    return q_.at(j);
  }
  /// H(i, j); zero outside the stored Hessenberg profile.
  C
  h(std::size_t i, std::size_t j) const;

  KrylovFactorization<R>
  factorization() const;

private:
  const CMatrix<R>& M_;
  std::size_t n_;
  std::size_t max_steps_;
  bool reorth_;
  R tol_;
  R beta0_;
  std::size_t steps_{0};
  std::optional<std::size_t> breakdown_;
  std::vector<std::vector<C>> q_;
  std::vector<std::vector<C>> hcols_;
};

/// Runs m steps (fewer on breakdown) of the R-linear Arnoldi process.
template <class R>
KrylovFactorization<R>
rlinear_arnoldi(const CMatrix<R>& M, const CVector<R>& b, std::size_t m, bool reorthogonalize = true);

/// Incremental complex symmetric Lanczos process: the three-term form of
/// R-linear Arnoldi for M^T = M,
///   beta_j q_{j+1} = M conj(q_j) - alpha_j q_j - beta_{j-1} q_{j-1}.
/// Optional full reorthogonalization (two modified Gram-Schmidt passes
/// against the whole basis) after the three-term update.
template <class R>
class ComplexSymmetricLanczos {
public:
  using C = Complex<R>;

  /// Throws InvalidArgument when M is not symmetric within tolerance, b = 0,
  /// or max_steps > n. b is normalized internally.
  ComplexSymmetricLanczos(const CMatrix<R>& M, const CVector<R>& b, std::size_t max_steps,
                          bool reorthogonalize = true);

  bool
  step();

  std::size_t
  steps() const noexcept {
    return alphas_.size();
  }
  bool
  broke_down() const noexcept {
    return breakdown_.has_value();
  }
  std::optional<std::size_t>
  breakdown_step() const noexcept {
    return breakdown_;
  }
  const R&
  rhs_norm() const noexcept {
    return beta0_;
  }
  const std::vector<C>&
  alphas() const noexcept {
    return alphas_;
  }
  /// beta_1 .. beta_steps; the last one is the residual coupling (zero at
  /// breakdown).
  const std::vector<R>&
  betas() const noexcept {
    return betas_;
  }
  std::size_t
  basis_size() const noexcept {
    return q_.size();
  }
  std::span<const C>
  basis_vector(std::size_t j) const {
    return q_.at(j);
  }

  JacobiMatrix<R>
  jacobi() const;
  CMatrix<R>
  basis() const;

private:
  const CMatrix<R>& M_;
  std::size_t n_;
  std::size_t max_steps_;
  bool reorth_;
  R tol_;
  R beta0_;
  std::optional<std::size_t> breakdown_;
  std::vector<std::vector<C>> q_;
  std::vector<C> alphas_;
  std::vector<R> betas_;
};

template <class R>
struct LanczosResult {
  JacobiMatrix<R> J;
  CMatrix<R> Q;
  R next_beta{0.0}; ///< coupling to the next (not returned) basis vector
  std::optional<std::size_t> breakdown_step;
};

/// m steps of the complex symmetric Lanczos process from a unit vector b.
template <class R>
LanczosResult<R>
cs_lanczos(const CMatrix<R>& M, const CVector<R>& b, std::size_t m, bool reorthogonalize = true);

template <class C>
  requires is_complex_v<C>
auto
is_complex_symmetric(const DenseMatrix<C>& M) {
  return is_complex_symmetric<RealOf<C>>(M);
}

template <class C>
  requires is_complex_v<C>
auto
rlinear_arnoldi(const DenseMatrix<C>& M, const DenseVector<C>& b, std::size_t m, bool reorthogonalize = true) {
  return rlinear_arnoldi<RealOf<C>>(M, b, m, reorthogonalize);
}

template <class C>
  requires is_complex_v<C>
auto
cs_lanczos(const DenseMatrix<C>& M, const DenseVector<C>& b, std::size_t m, bool reorthogonalize = true) {
  return cs_lanczos<RealOf<C>>(M, b, m, reorthogonalize);
}

/// Largest principal angle between X^{-1} K_j(M; b) and K_j(N; c), with
/// N = X^{-1} M conj(X) and c = X^{-1} b, for j = 1 .. max_dim (fewer when
/// the Krylov space becomes invariant).
std::vector<double>
krylov_similarity_check(const CMatrix<double>& M, const CVector<double>& b, const CMatrix<double>& X,
                        std::size_t max_dim);

} // namespace rlk
