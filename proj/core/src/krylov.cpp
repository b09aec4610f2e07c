#include "rlk/krylov.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <type_traits>

namespace rlk {

namespace {

  template <class R>
  std::vector<Complex<R>>
  antilinear_image(const CMatrix<R>& M, std::span<const Complex<R>> q) {
    const std::size_t n = M.rows();
    std::vector<Complex<R>> w(n);
    for (std::size_t j = 0; j < n; ++j) {
      const Complex<R> cq = conj(q[j]);
      auto col = M.col(j);
      for (std::size_t i = 0; i < n; ++i) {
        w[i] += col[i] * cq;
      }
    }
    return w;
  }

  template <class R>
  R
  vector_norm(const std::vector<Complex<R>>& w) {
    return norm2(std::span<const Complex<R>>(w));
  }

  /// One modified Gram-Schmidt sweep of w against `basis`; adds the
  /// projection coefficients to `coeffs` when given.
  template <class R>
  void
  mgs_pass(const std::vector<std::vector<Complex<R>>>& basis, std::vector<Complex<R>>& w,
           std::vector<Complex<R>>* coeffs) {
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const auto& qi = basis[i];
      const Complex<R> h = cdot(std::span<const Complex<R>>(qi), std::span<const Complex<R>>(w));
      for (std::size_t k = 0; k < w.size(); ++k) {
        w[k] -= h * qi[k];
      }
      if (coeffs != nullptr) {
        (*coeffs)[i] += h;
      }
    }
  }

  template <class R>
  void
  check_start(const CMatrix<R>& M, const CVector<R>& b, std::size_t max_steps, const char* who) {
    if (!M.square()) {
      throw DimensionError(std::string(who) + ": matrix is not square");
    }
    if (b.size() != M.rows()) {
      throw DimensionError(std::string(who) + ": start vector length does not match matrix");
    }
    if (max_steps > M.rows()) {
      throw InvalidArgument(std::string(who) + ": more steps requested than the dimension");
    }
    if (norm2(b) == R{0.0}) {
      throw InvalidArgument(std::string(who) + ": start vector is zero");
    }
  }

} // namespace

template <class R>
CMatrix<R>
JacobiMatrix<R>::to_dense() const {
  const std::size_t m = alphas.size();
  CMatrix<R> J(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    J(i, i) = alphas[i];
    if (i + 1 < m) {
      J(i, i + 1) = Complex<R>{betas.at(i)};
      J(i + 1, i) = Complex<R>{betas.at(i)};
    }
  }
  return J;
}

template <class R>
R
breakdown_tolerance(const R& matrix_norm) {
  if constexpr (std::is_same_v<R, double>) {
    return 1e-13 * matrix_norm;
  } else {
    return R{1e-28} * matrix_norm;
  }
}

template <class R>
bool
is_complex_symmetric(const CMatrix<R>& M) {
  if (!M.square()) {
    return false;
  }
  R diff{0.0};
  for (std::size_t j = 0; j < M.cols(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      diff += R{2.0} * norm(M(i, j) - M(j, i));
    }
  }
  return sqrt(diff) <= R{1e-12} * frobenius_norm(M);
}

// -- R-linear Arnoldi -------------------------------------------------------

template <class R>
RLinearArnoldi<R>::RLinearArnoldi(const CMatrix<R>& M, const CVector<R>& b, std::size_t max_steps,
                                  bool reorthogonalize)
    : M_{M}
    , n_{M.rows()}
    , max_steps_{max_steps}
    , reorth_{reorthogonalize} {
  check_start<R>(M, b, max_steps, "rlinear_arnoldi");
  tol_ = breakdown_tolerance(frobenius_norm(M));
  beta0_ = norm2(b);
  std::vector<C> q0(b.begin(), b.end());
  for (auto& v : q0) {
    v /= beta0_;
  }
  q_.push_back(std::move(q0));
}

template <class R>
bool
RLinearArnoldi<R>::step() {
  if (breakdown_ || steps_ >= max_steps_) {
    return false;
  }
  const std::size_t j = steps_;
  std::vector<C> w = antilinear_image<R>(M_, q_[j]);
  std::vector<C> hcol(j + 2);
  mgs_pass<R>(q_, w, &hcol);
  if (reorth_) {
    mgs_pass<R>(q_, w, &hcol);
  }
  const R wn = vector_norm<R>(w);
  ++steps_;
  if (wn <= tol_) {
    hcol[j + 1] = C{};
    hcols_.push_back(std::move(hcol));
    breakdown_ = steps_;
    return true;
  }
  hcol[j + 1] = C{wn};
  for (auto& v : w) {
    v /= wn;
  }
  hcols_.push_back(std::move(hcol));
  q_.push_back(std::move(w));
  return true;
}

template <class R>
Complex<R>
RLinearArnoldi<R>::h(std::size_t i, std::size_t j) const {
  if (j >= hcols_.size() || i >= hcols_[j].size()) {
    return C{};
  }
  return hcols_[j][i];
}

template <class R>
KrylovFactorization<R>
RLinearArnoldi<R>::factorization() const {
  KrylovFactorization<R> f;
  f.steps = steps_;
  f.breakdown_step = breakdown_;
  f.Q = CMatrix<R>(n_, q_.size());
  for (std::size_t j = 0; j < q_.size(); ++j) {
    std::copy(q_[j].begin(), q_[j].end(), f.Q.col(j).begin());
  }
  f.H = CMatrix<R>(steps_ + 1, steps_);
  for (std::size_t j = 0; j < steps_; ++j) {
    for (std::size_t i = 0; i < hcols_[j].size(); ++i) {
      f.H(i, j) = hcols_[j][i];
    }
  }
  return f;
}

template <class R>
KrylovFactorization<R>
rlinear_arnoldi(const CMatrix<R>& M, const CVector<R>& b, std::size_t m, bool reorthogonalize) {
  RLinearArnoldi<R> process(M, b, m, reorthogonalize);
  while (process.step()) {
  }
  return process.factorization();
}

// -- complex symmetric Lanczos ---------------------------------------------

template <class R>
ComplexSymmetricLanczos<R>::ComplexSymmetricLanczos(const CMatrix<R>& M, const CVector<R>& b,
                                                    std::size_t max_steps, bool reorthogonalize)
    : M_{M}
    , n_{M.rows()}
    , max_steps_{max_steps}
    , reorth_{reorthogonalize} {
  check_start<R>(M, b, max_steps, "cs_lanczos");
  if (!is_complex_symmetric<R>(M)) {
    throw InvalidArgument("cs_lanczos: matrix is not complex symmetric within tolerance");
  }
  tol_ = breakdown_tolerance(frobenius_norm(M));
  beta0_ = norm2(b);
  std::vector<C> q0(b.begin(), b.end());
  for (auto& v : q0) {
    v /= beta0_;
  }
  q_.push_back(std::move(q0));
}

template <class R>
bool
ComplexSymmetricLanczos<R>::step() {
  if (breakdown_ || alphas_.size() >= max_steps_) {
    return false;
  }
  const std::size_t j = alphas_.size();
  std::vector<C> w = antilinear_image<R>(M_, q_[j]);
  if (j > 0) {
    const R b = betas_[j - 1];
    const auto& qp = q_[j - 1];
    for (std::size_t k = 0; k < n_; ++k) {
      w[k] -= b * qp[k];
    }
  }
  const C alpha = cdot(std::span<const C>(q_[j]), std::span<const C>(w));
  for (std::size_t k = 0; k < n_; ++k) {
    w[k] -= alpha * q_[j][k];
  }
  if (reorth_) {
    mgs_pass<R>(q_, w, nullptr);
    mgs_pass<R>(q_, w, nullptr);
  }
  alphas_.push_back(alpha);
  const R beta = vector_norm<R>(w);
  if (beta <= tol_) {
    betas_.push_back(R{0.0});
    breakdown_ = alphas_.size();
    return true;
  }
  betas_.push_back(beta);
  for (auto& v : w) {
    v /= beta;
  }
  q_.push_back(std::move(w));
  return true;
}

template <class R>
JacobiMatrix<R>
ComplexSymmetricLanczos<R>::jacobi() const {
  JacobiMatrix<R> J;
  J.alphas = alphas_;
  if (!alphas_.empty()) {
    J.betas.assign(betas_.begin(), betas_.begin() + static_cast<std::ptrdiff_t>(alphas_.size() - 1));
  }
  return J;
}

template <class R>
CMatrix<R>
ComplexSymmetricLanczos<R>::basis() const {
  CMatrix<R> Q(n_, q_.size());
  for (std::size_t j = 0; j < q_.size(); ++j) {
    std::copy(q_[j].begin(), q_[j].end(), Q.col(j).begin());
  }
  return Q;
}

template <class R>
LanczosResult<R>
cs_lanczos(const CMatrix<R>& M, const CVector<R>& b, std::size_t m, bool reorthogonalize) {
  const R nb = norm2(b);
  if (abs(nb - R{1.0}) > R{1e-10}) {
    throw InvalidArgument("cs_lanczos: start vector must have unit norm");
  }
  ComplexSymmetricLanczos<R> process(M, b, m, reorthogonalize);
  while (process.step()) {
  }
  LanczosResult<R> out;
  out.J = process.jacobi();
  out.Q = process.basis();
  out.breakdown_step = process.breakdown_step();
  out.next_beta = process.betas().empty() ? R{0.0} : process.betas().back();
  return out;
}

// -- similarity check -------------------------------------------------------

std::vector<double>
krylov_similarity_check(const CMatrix<double>& M, const CVector<double>& b, const CMatrix<double>& X,
                        std::size_t max_dim) {
  if (!X.square() || X.rows() != M.rows()) {
    throw DimensionError("krylov_similarity_check: X must be square of the matrix dimension");
  }
  LuFactorization<double> lu(X);
  if (lu.singular()) {
    throw NumericalError("krylov_similarity_check: X is singular");
  }
  const CMatrix<double> N = lu.solve(matmul(M, conjugate(X)));
  const CVector<double> c = lu.solve(b);

  const std::size_t steps = std::min(max_dim, M.rows());
  const auto f1 = rlinear_arnoldi(M, b, steps);
  const auto f2 = rlinear_arnoldi(N, c, steps);
  const std::size_t dims = std::min<std::size_t>({max_dim, f1.Q.cols(), f2.Q.cols()});

  std::vector<double> angles;
  for (std::size_t j = 1; j <= dims; ++j) {
    const auto mapped = lu.solve(leading_columns(f1.Q, j));
    const auto U1 = qr_householder(mapped, false).Q;
    const auto U2 = leading_columns(f2.Q, j);
    // (I - U2 U2^*) U1
    const auto P = subtract(U1, matmul(U2, matmul(adjoint(U2), U1)));
    const double s = std::min(1.0, norm_2(P));
    angles.push_back(std::asin(s));
  }
  return angles;
}

#define RLK_INSTANTIATE_KRYLOV(R)                                                                 \
  template struct JacobiMatrix<R>;                                                               \
  template R breakdown_tolerance<R>(const R&);                                                   \
  template bool is_complex_symmetric<R>(const CMatrix<R>&);                                      \
  template class RLinearArnoldi<R>;                                                              \
  template KrylovFactorization<R> rlinear_arnoldi<R>(const CMatrix<R>&, const CVector<R>&, std::size_t, bool); \
  template class ComplexSymmetricLanczos<R>;                                                     \
  template LanczosResult<R> cs_lanczos<R>(const CMatrix<R>&, const CVector<R>&, std::size_t, bool);

RLK_INSTANTIATE_KRYLOV(double)
RLK_INSTANTIATE_KRYLOV(DoubleDouble)

#undef RLK_INSTANTIATE_KRYLOV

} // namespace rlk
