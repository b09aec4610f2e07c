#pragma once

#include <cstddef>

#include "rlk/dense.hpp"

namespace rlk {

/// min over z in K_j of ||kappa z + M conj(z) - b||, from the explicit
/// monomial basis {b, M conj(b), M conj(M) b, ...} with normalized columns
/// and a realified least squares over the full n-dimensional residual.
/// j is clamped to n. Throws NumericalError when the basis condition
/// number exceeds 1e12.
double
brute_force_minresidual(const cdouble& kappa, const CMatrix<double>& M, const CVector<double>& b, std::size_t j);

} // namespace rlk
