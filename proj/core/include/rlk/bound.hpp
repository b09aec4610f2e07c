#pragma once

//
// Discrete min-max bounds for R-linear GMRES and CSYM:
//   E_j = min over p in P_{j-1}(r2) of max over nodes |kappa p(l) + l conj(p(l)) - 1|,
//   B_j = cond_2(X) E_j ||b||.
//

#include <cstddef>
#include <functional>
#include <vector>

#include "rlk/dense.hpp"
#include "rlk/polyspace.hpp"

namespace rlk {

struct LawsonOptions {
  std::size_t max_iterations{500};
  double tol{1e-8};           ///< (max|res| - weighted rms) / max|res|
  double weight_floor{1e-300};
  /// Called with the weights used in each least-squares solve.
  std::function<void(const std::vector<double>&)> on_iteration;
};

struct LawsonResult {
  double E{0.0};
  R2Polynomial p;
  std::vector<double> weights; ///< final Lawson weights, a probability vector
  std::size_t iterations{0};
  bool converged{false};
};

/// Discrete Chebyshev problem over p in P_j(r2) by Lawson's iteratively
/// reweighted least squares. When j + 1 reaches the number of nodes the
/// problem is an interpolation and E = 0 is returned from a direct solve.
/// Throws InvalidArgument on empty or repeated nodes.
LawsonResult
lawson_minmax(const std::vector<cdouble>& nodes, cdouble kappa, std::size_t degree_index,
              const LawsonOptions& options = {});

struct BoundTrace {
  std::vector<double> bound;     ///< B_j, j = 0 .. steps (B_0 = ||b||)
  std::vector<double> minmax;    ///< E_j
  std::vector<bool> converged;
  double cond_X{1.0};
  double rhs_norm{0.0};
  std::vector<cdouble> nodes;
};

/// B_j = cond_X E_j rhs_norm for j = 0 .. steps over explicit nodes.
BoundTrace
minmax_bound_trace(const std::vector<cdouble>& nodes, cdouble kappa, std::size_t steps, double cond_X,
                   double rhs_norm);

/// B_j for j = 0 .. steps. Nodes come from a con-diagonalization of M, or
/// from the unitary con-Schur form (cond_2(X) = 1) when M is complex
/// symmetric. E_j is kept non-increasing: a minimizer for j - 1 is also
/// admissible for j.
BoundTrace
gmres_bound_trace(const CMatrix<double>& M, const CVector<double>& b, cdouble kappa, std::size_t steps);

} // namespace rlk
