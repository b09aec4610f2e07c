#pragma once

//
// The polynomial class P_j(r2):
//   p(lambda) = sum_k (a_{2k} + a_{2k+1} lambda) |lambda|^{2k},
// stored by its coefficient vector (a_0, ..., a_j).
//

#include <cstddef>
#include <functional>
#include <vector>

#include "rlk/dense.hpp"
#include "rlk/krylov.hpp"

namespace rlk {

struct R2Polynomial {
  std::vector<cdouble> coeffs;

  /// j with p in P_j(r2); coeffs.size() - 1.
  std::size_t
  degree_index() const noexcept {
    return coeffs.empty() ? 0 : coeffs.size() - 1;
  }

  /// p(lambda) = u(|lambda|^2) + lambda v(|lambda|^2): u takes the even
  /// coefficients, v the odd ones.
  std::vector<cdouble>
  even_part() const;
  std::vector<cdouble>
  odd_part() const;
};

/// lambda conj(p(lambda)) as an element of P_{j+1}(r2): b_{i+1} = conj(a_i).
R2Polynomial
conj_shift(const R2Polynomial& p);

cdouble
eval_r2(const R2Polynomial& p, cdouble lambda);

/// Nodes with positive weights; at most two nodes per modulus.
struct NodeSystem {
  std::vector<cdouble> nodes;
  std::vector<double> weights;

  std::size_t
  size() const noexcept {
    return nodes.size();
  }

  /// Throws InvalidArgument on non-positive weights, duplicate nodes,
  /// three or more nodes sharing a modulus, or a length mismatch.
  void
  validate() const;
};

/// sum_k p(l_k) conj(q(l_k)) w_k.
cdouble
discrete_inner_product(const R2Polynomial& p, const R2Polynomial& q, const NodeSystem& nodes);

struct OrthoPolynomials {
  std::vector<cdouble> values;       ///< p_0(lambda) .. p_k(lambda)
  std::vector<R2Polynomial> polys;   ///< p_i in P_i(r2)
};

/// The three-term recurrence p_0 = 1,
///   beta_j p_j = lambda conj(p_{j-1}) - alpha_j p_{j-1} - beta_{j-1} p_{j-2},
/// carried on values and on coefficient vectors. Requires k < J.size()
/// (p_k needs beta_k).
OrthoPolynomials
orthopoly_eval(const JacobiMatrix<double>& J, cdouble lambda, std::size_t k);

/// Values p_0(lambda) .. p_k(lambda) of the same recurrence in precision R.
/// Evaluating far along the recurrence amplifies rounding much like plain
/// Lanczos does, so long recurrences are best run in double-double.
template <class R>
std::vector<Complex<R>>
orthopoly_values(const JacobiMatrix<R>& J, const Complex<R>& lambda, std::size_t k);

/// Jacobi matrix of the orthonormal polynomials of a node system (weights
/// normalized to sum 1): Lanczos with full reorthogonalization on
/// diag(nodes) from the square-root weights. Throws NumericalError when the
/// node set does not support N independent polynomials.
template <class R = double>
JacobiMatrix<R>
node_jacobi(const NodeSystem& nodes);

/// The interpolant in P_{N-1}(r2), expanded in the orthonormal basis of the
/// node system. Throws NumericalError when the node set does not support
/// a basis (Lanczos breakdown).
R2Polynomial
interpolate_r2(const NodeSystem& nodes, const std::vector<cdouble>& values);

enum class ZeroKind { point, full_circle };

struct ZeroModulus {
  double modulus;
  ZeroKind kind;
  cdouble point; ///< the zero for ZeroKind::point
};

/// Moduli at which p vanishes, ascending: full circles from common
/// nonnegative real roots of u and v, isolated points from the real roots
/// of |u(x)|^2 - x |v(x)|^2 after the common factors are divided out.
/// Throws InvalidArgument for p = 0.
std::vector<ZeroModulus>
zero_moduli(const R2Polynomial& p);

/// sum_{j < terms} (1/(2j)! + lambda/(2j+1)!) |lambda|^{2j}.
cdouble
exp_r2(cdouble lambda, std::size_t terms = 25);

/// Curve meeting every circle |z| = r, r in [r1, r2], in the points z1(r)
/// and z2(r). Leave z2 empty (or equal to z1) for a single-branch curve.
struct CurveSpec {
  double r1{0.0};
  double r2{1.0};
  std::function<cdouble(double)> z1;
  std::function<cdouble(double)> z2;
};

struct CurveSample {
  double r;
  cdouble z1;
  cdouble z2;
  cdouble f1; ///< f(z1)
  cdouble f2; ///< f(z2)
};

struct ApproxResult {
  R2Polynomial p;
  double sup_error{0.0};    ///< sampled, away from mollified endpoint collars
  double collar_error{0.0}; ///< sampled inside the collars (0 if none)
  bool single_branch{false};
};

/// Fits a1(r), a2(r) with f = a1 + a2 z on both branches, each by a
/// degree-`degree` polynomial in r^2 on a Chebyshev grid of
/// 4 (degree + 1) radii; f is replaced by its merge-point value on a 2%
/// collar at endpoints where the branches meet.
ApproxResult
approx_on_curve(const CurveSpec& curve, const std::function<cdouble(cdouble)>& f, std::size_t degree);

/// The same fit on user-supplied samples (no resampling). The sup error
/// is measured on the samples.
ApproxResult
fit_r2_on_samples(const std::vector<CurveSample>& samples, std::size_t degree);

} // namespace rlk
