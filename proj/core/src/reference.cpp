#include "rlk/reference.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rlk/linalg.hpp"

namespace rlk {

double
brute_force_minresidual(const cdouble& kappa, const CMatrix<double>& M, const CVector<double>& b, std::size_t j) {
  if (!M.square() || M.rows() != b.size()) {
    throw DimensionError("brute_force_minresidual: dimension mismatch");
  }
  const std::size_t n = M.rows();
  j = std::min(j, n);
  if (j == 0) {
    return norm2(b);
  }

  // Columns V(:, k) = v_k / s_k with v_{k+1} = M conj(V(:, k)), so that
  // M conj(V(:, k)) = s_{k+1} V(:, k+1).
  CMatrix<double> V(n, j + 1);
  std::vector<double> scale(j + 1);
  CVector<double> v = b;
  for (std::size_t k = 0; k <= j; ++k) {
    const double s = norm2(v);
    for (std::size_t i = 0; i < n; ++i) {
      V(i, k) = s == 0.0 ? cdouble{} : v[i] / s;
    }
    scale[k] = s;
    CVector<double> next(n);
    for (std::size_t c = 0; c < n; ++c) {
      axpy<cdouble>(std::conj(V(c, k)), M.col(c), next.span());
    }
    v = std::move(next);
  }
  const double cond = cond2(leading_columns(V, j));
  if (!(cond <= 1e12)) {
    throw NumericalError("brute_force_minresidual: monomial basis condition number " + std::to_string(cond) +
                         " exceeds 1e12; use a smaller j");
  }

  // z = sum c_k v_k, c_k = a_k + i d_k:
  //   kappa z + M conj(z) = sum a_k (kappa v_k + s_{k+1} v_{k+1}) + d_k (i kappa v_k - i s_{k+1} v_{k+1})
  RMatrix<double> A(2 * n, 2 * j);
  for (std::size_t k = 0; k < j; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const cdouble next = scale[k + 1] * V(i, k + 1);
      const cdouble ua = kappa * V(i, k) + next;
      const cdouble ud = cdouble{0.0, 1.0} * (kappa * V(i, k) - next);
      A(i, k) = ua.real();
      A(n + i, k) = ua.imag();
      A(i, j + k) = ud.real();
      A(n + i, j + k) = ud.imag();
    }
  }
  RVector<double> rhs(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    rhs[i] = b[i].real();
    rhs[n + i] = b[i].imag();
  }
  const RVector<double> x = solve_real_ls<double>(A, rhs);
  double res2 = 0.0;
  for (std::size_t i = 0; i < 2 * n; ++i) {
    double s = -rhs[i];
    for (std::size_t k = 0; k < 2 * j; ++k) {
      s += A(i, k) * x[k];
    }
    res2 += s * s;
  }
  return std::sqrt(res2);
}

} // namespace rlk
