#pragma once

//
// Minimal-residual solvers for kappa z + M conj(z) = b with zero initial
// guess: R-linear GMRES for general (kappa, M) and CSYM for kappa = 0,
// M^T = M.
//

#include <cstddef>
#include <optional>
#include <vector>
#include <type_traits>

#include "rlk/dense.hpp"
#include "rlk/krylov.hpp"

namespace rlk {

/// Absolute residual norms, one per iterate; entry 0 is ||b||.
template <class R>
struct ResidualTrace {
  std::vector<R> residual_norms;
  R rhs_norm{1.0};

  std::size_t
  size() const noexcept {
    return residual_norms.size();
  }

  std::vector<double>
  relative() const {
    std::vector<double> out;
    out.reserve(residual_norms.size());
    for (const auto& r : residual_norms) {
      out.push_back(to_double(r / rhs_norm));
    }
    return out;
  }
};

template <class R>
struct SolveReport {
  CVector<R> solution;
  ResidualTrace<R> trace;
  std::size_t iterations{0};
  bool converged{false};
  std::optional<std::size_t> breakdown_step;
};

template <class R>
struct SolveOptions {
  std::optional<R> tol;            ///< relative residual; 1e-10 (double) or 1e-25 (dd)
  std::optional<std::size_t> maxit; ///< defaults to n
  bool reorthogonalize{true};
};

template <class R>
R
default_tolerance();

/// R-linear GMRES. The projected problem min ||kappa I~ y + H conj(y) - beta e1||
/// is realified and solved by a fresh least squares at every step.
/// Throws InvalidArgument for b = 0 or maxit > n, NumericalError when the
/// projected operator is singular.
template <class R>
SolveReport<R>
rgmres(const Complex<R>& kappa, const CMatrix<R>& M, const CVector<R>& b, const std::type_identity_t<SolveOptions<R>>& options = {});

/// CSYM: the kappa = 0 solver for complex symmetric M, on the Lanczos
/// tridiagonal with incremental Givens rotations.
template <class R>
SolveReport<R>
csym(const CMatrix<R>& M, const CVector<R>& b, const std::type_identity_t<SolveOptions<R>>& options = {});

template <class C>
  requires is_complex_v<C>
auto
rgmres(const C& kappa, const DenseMatrix<C>& M, const DenseVector<C>& b,
       const SolveOptions<RealOf<C>>& options = {}) {
  return rgmres<RealOf<C>>(kappa, M, b, options);
}

template <class C>
  requires is_complex_v<C>
auto
csym(const DenseMatrix<C>& M, const DenseVector<C>& b, const SolveOptions<RealOf<C>>& options = {}) {
  return csym<RealOf<C>>(M, b, options);
}

/// Classical (complex-linear free) GMRES on the real system of doubled size
/// equivalent to kappa z + M conj(z) = b. Used for comparison runs only.
ResidualTrace<double>
doubled_real_gmres(const cdouble& kappa, const CMatrix<double>& M, const CVector<double>& b,
                   std::size_t maxit);

} // namespace rlk
