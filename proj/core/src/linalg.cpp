#include "rlk/linalg.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

namespace rlk {

namespace {

  template <class R>
  Complex<R>
  complex_sqrt(const Complex<R>& z) {
    if constexpr (std::is_same_v<R, double>) {
      return std::sqrt(z);
    } else {
      R r = abs(z);
      if (r.hi() == 0.0) {
        return Complex<R>{};
      }
      R t = sqrt((r + abs(z.real())) * R{0.5});
      if (z.real() >= R{0.0}) {
        return {t, z.imag() / (R{2.0} * t)};
      }
      R im = z.imag() < R{0.0} ? -t : t;
      return {abs(z.imag()) / (R{2.0} * t), im};
    }
  }

  template <class R>
  void
  hessenberg_reduce(CMatrix<R>& H) {
    const std::size_t n = H.rows();
    using C = Complex<R>;
    if (n < 3) {
      return;
    }
    std::vector<C> v(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
      R xnorm{0.0};
      for (std::size_t i = k + 1; i < n; ++i) {
        xnorm += norm(H(i, k));
      }
      xnorm = sqrt(xnorm);
      R tail{0.0};
      for (std::size_t i = k + 2; i < n; ++i) {
        tail += norm(H(i, k));
      }
      if (tail == R{0.0}) {
        continue;
      }
      const C x0 = H(k + 1, k);
      const R ax0 = abs(x0);
      C alpha = ax0 == R{0.0} ? C{-xnorm} : -(x0 / ax0) * xnorm;
      for (std::size_t i = k + 1; i < n; ++i) {
        v[i] = H(i, k);
      }
      v[k + 1] -= alpha;
      R vnorm2{0.0};
      for (std::size_t i = k + 1; i < n; ++i) {
        vnorm2 += norm(v[i]);
      }
      const R two_over = R{2.0} / vnorm2;

      // Left: rows k+1.., columns k..
      for (std::size_t j = k; j < n; ++j) {
        C s{};
        for (std::size_t i = k + 1; i < n; ++i) {
          s += conj(v[i]) * H(i, j);
        }
        s *= two_over;
        for (std::size_t i = k + 1; i < n; ++i) {
          H(i, j) -= v[i] * s;
        }
      }
      // Right: all rows, columns k+1..
      for (std::size_t i = 0; i < n; ++i) {
        C s{};
        for (std::size_t j = k + 1; j < n; ++j) {
          s += H(i, j) * v[j];
        }
        s *= two_over;
        for (std::size_t j = k + 1; j < n; ++j) {
          H(i, j) -= s * conj(v[j]);
        }
      }
      H(k + 1, k) = alpha;
      for (std::size_t i = k + 2; i < n; ++i) {
        H(i, k) = C{};
      }
    }
  }

} // namespace

template <class R>
RVector<R>
solve_real_ls(const RMatrix<R>& A, const RVector<R>& b) {
  const std::size_t m = A.rows();
  const std::size_t n = A.cols();
  if (m < n) {
    throw DimensionError("solve_real_ls: fewer rows than columns");
  }
  if (b.size() != m) {
    throw DimensionError("solve_real_ls: right-hand side length does not match rows");
  }
  RMatrix<R> W = A;
  RVector<R> c = b;
  std::vector<R> v(m);

  for (std::size_t k = 0; k < n; ++k) {
    R xnorm{0.0};
    for (std::size_t i = k; i < m; ++i) {
      xnorm += W(i, k) * W(i, k);
    }
    xnorm = sqrt(xnorm);
    if (xnorm == R{0.0}) {
      continue;
    }
    const R alpha = W(k, k) > R{0.0} ? -xnorm : xnorm;
    for (std::size_t i = k; i < m; ++i) {
      v[i] = W(i, k);
    }
    v[k] -= alpha;
    R vnorm2{0.0};
    for (std::size_t i = k; i < m; ++i) {
      vnorm2 += v[i] * v[i];
    }
    const R two_over = R{2.0} / vnorm2;
    for (std::size_t j = k + 1; j < n; ++j) {
      R s{0.0};
      for (std::size_t i = k; i < m; ++i) {
        s += v[i] * W(i, j);
      }
      s *= two_over;
      for (std::size_t i = k; i < m; ++i) {
        W(i, j) -= s * v[i];
      }
    }
    R s{0.0};
    for (std::size_t i = k; i < m; ++i) {
      s += v[i] * c[i];
    }
    s *= two_over;
    for (std::size_t i = k; i < m; ++i) {
      c[i] -= s * v[i];
    }
    W(k, k) = alpha;
    for (std::size_t i = k + 1; i < m; ++i) {
      W(i, k) = R{0.0};
    }
  }

  R largest{0.0};
  for (std::size_t k = 0; k < n; ++k) {
    largest = std::max(largest, R{abs(W(k, k))});
  }
  const R threshold = R{10.0 * double(std::max(m, n)) * epsilon<R>()} * largest;
  for (std::size_t k = 0; k < n; ++k) {
    if (largest == R{0.0} || abs(W(k, k)) < threshold) {
      throw NumericalError("solve_real_ls: matrix is numerically rank deficient (column " +
                           std::to_string(k) + ")");
    }
  }

  RVector<R> x(n);
  for (std::size_t kk = n; kk-- > 0;) {
    R s = c[kk];
    for (std::size_t j = kk + 1; j < n; ++j) {
      s -= W(kk, j) * x[j];
    }
    x[kk] = s / W(kk, kk);
  }
  return x;
}

template <class R>
std::vector<Complex<R>>
eig_dense(const CMatrix<R>& A) {
  using C = Complex<R>;
  if (!A.square()) {
    throw DimensionError("eig_dense: matrix is not square");
  }
  const std::size_t n = A.rows();
  if (n == 0) {
    throw InvalidArgument("eig_dense: empty matrix");
  }
  CMatrix<R> H = A;
  hessenberg_reduce<R>(H);

  const R eps{epsilon<R>()};
  const R smlnum{std::numeric_limits<double>::min() / epsilon<R>()};
  const R hnorm = frobenius_norm(H);

  std::vector<C> eig(n);
  std::size_t hi = n - 1;
  std::size_t total = 0;
  std::size_t since_deflation = 0;
  const std::size_t cap = 30 * n;
  std::vector<GivensRotation<R>> rots(n);

  while (true) {
    if (hi == 0) {
      eig[0] = H(0, 0);
      break;
    }
    std::size_t l = hi;
    while (l > 0) {
      const R sub = abs(H(l, l - 1));
      R ref = abs(H(l - 1, l - 1)) + abs(H(l, l));
      if (ref == R{0.0}) {
        ref = hnorm;
      }
      if (sub <= smlnum || sub <= eps * ref) {
        H(l, l - 1) = C{};
        break;
      }
      --l;
    }
    if (l == hi) {
      eig[hi] = H(hi, hi);
      --hi;
      since_deflation = 0;
      continue;
    }

    if (++total > cap) {
      throw NumericalError("eig_dense: QR iteration did not converge for block [" + std::to_string(l) +
                           ", " + std::to_string(hi) + "]");
    }
    ++since_deflation;

    C mu;
    if (since_deflation % 10 == 0) {
      mu = H(hi, hi) + C{R{0.75} * abs(H(hi, hi - 1))};
    } else {
      const C a = H(hi - 1, hi - 1);
      const C b = H(hi - 1, hi);
      const C c = H(hi, hi - 1);
      const C d = H(hi, hi);
      const C p = (a - d) * R{0.5};
      const C disc = complex_sqrt<R>(p * p + b * c);
      const C mid = (a + d) * R{0.5};
      const C l1 = mid + disc;
      const C l2 = mid - disc;
      mu = abs(l1 - d) < abs(l2 - d) ? l1 : l2;
    }

    for (std::size_t k = l; k <= hi; ++k) {
      H(k, k) -= mu;
    }
    for (std::size_t k = l; k < hi; ++k) {
      const GivensRotation<R> g = make_givens<R>(H(k, k), H(k + 1, k));
      rots[k] = g;
      for (std::size_t j = k; j <= hi; ++j) {
        const C x = H(k, j);
        const C y = H(k + 1, j);
        H(k, j) = g.c * x + g.s * y;
        H(k + 1, j) = -conj(g.s) * x + g.c * y;
      }
    }
    for (std::size_t k = l; k < hi; ++k) {
      const GivensRotation<R>& g = rots[k];
      const std::size_t last = std::min(k + 2, hi);
      for (std::size_t i = l; i <= last; ++i) {
        const C x = H(i, k);
        const C y = H(i, k + 1);
        H(i, k) = g.c * x + conj(g.s) * y;
        H(i, k + 1) = -g.s * x + g.c * y;
      }
    }
    for (std::size_t k = l; k <= hi; ++k) {
      H(k, k) += mu;
    }
  }
  return eig;
}

template <class R>
std::vector<R>
hermitian_eigenvalues(const CMatrix<R>& A) {
  auto ev = eig_dense<R>(A);
  std::vector<R> out;
  out.reserve(ev.size());
  for (const auto& z : ev) {
    out.push_back(z.real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

template <class R>
std::vector<R>
singular_values(const CMatrix<R>& A) {
  using C = Complex<R>;
  // One-sided Jacobi on the columns of A (or A^* when A is wide).
  CMatrix<R> W = A.rows() >= A.cols() ? A : adjoint(A);
  const std::size_t m = W.rows();
  const std::size_t n = W.cols();
  const R eps{epsilon<R>()};

  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        auto ap = W.col(p);
        auto aq = W.col(q);
        R alpha{0.0};
        R beta{0.0};
        C gamma{};
        for (std::size_t i = 0; i < m; ++i) {
          alpha += norm(ap[i]);
          beta += norm(aq[i]);
          gamma += conj(ap[i]) * aq[i];
        }
        const R g = abs(gamma);
        if (g == R{0.0} || g <= eps * sqrt(alpha * beta)) {
          continue;
        }
        rotated = true;
        const C phase = conj(gamma) / g;
        const R zeta = (beta - alpha) / (R{2.0} * g);
        const R t = (zeta >= R{0.0} ? R{1.0} : R{-1.0}) / (abs(zeta) + sqrt(R{1.0} + zeta * zeta));
        const R c = R{1.0} / sqrt(R{1.0} + t * t);
        const R sn = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const C x = ap[i];
          const C y = phase * aq[i];
          ap[i] = c * x - sn * y;
          aq[i] = sn * x + c * y;
        }
      }
    }
    if (!rotated) {
      break;
    }
  }

  std::vector<R> s(n);
  for (std::size_t j = 0; j < n; ++j) {
    s[j] = norm2(std::span<const C>(W.col(j)));
  }
  std::sort(s.begin(), s.end(), [](const R& a, const R& b) { return a > b; });
  return s;
}

template <class R>
R
cond2(const CMatrix<R>& A) {
  auto s = singular_values<R>(A);
  if (s.empty() || s.back() == R{0.0}) {
    return R{std::numeric_limits<double>::infinity()};
  }
  return s.front() / s.back();
}

template <class R>
R
norm_2(const CMatrix<R>& A) {
  auto s = singular_values<R>(A);
  return s.empty() ? R{0.0} : s.front();
}

template <class R>
LuFactorization<R>::LuFactorization(CMatrix<R> A) : lu_(std::move(A)) {
  if (!lu_.square()) {
    throw DimensionError("LuFactorization: matrix is not square");
  }
  const std::size_t n = lu_.rows();
  perm_.resize(n);
  std::iota(perm_.begin(), perm_.end(), std::size_t{0});

  R amax{0.0};
  for (std::size_t j = 0; j < n; ++j) {
    for (const auto& v : lu_.col(j)) {
      amax = std::max(amax, R{abs(v)});
    }
  }
  const R tiny = R{double(n) * epsilon<R>()} * amax;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    R best = abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      R v = abs(lu_(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (best <= tiny) {
      singular_ = true;
      if (best == R{0.0}) {
        continue;
      }
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(lu_(k, j), lu_(p, j));
      }
      std::swap(perm_[k], perm_[p]);
      sign_ = -sign_;
    }
    const Complex<R> pivot = lu_(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      lu_(i, k) /= pivot;
    }
    for (std::size_t j = k + 1; j < n; ++j) {
      const Complex<R> ukj = lu_(k, j);
      for (std::size_t i = k + 1; i < n; ++i) {
        lu_(i, j) -= lu_(i, k) * ukj;
      }
    }
  }
}

template <class R>
void
LuFactorization<R>::require_regular() const {
  if (singular_) {
    throw NumericalError("LU: matrix is numerically singular");
  }
}

template <class R>
CVector<R>
LuFactorization<R>::solve(const CVector<R>& b) const {
  require_regular();
  const std::size_t n = lu_.rows();
  if (b.size() != n) {
    throw DimensionError("LU solve: right-hand side length mismatch");
  }
  CVector<R> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = b[perm_[i]];
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) {
      x[i] -= lu_(i, k) * x[k];
    }
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t k = i + 1; k < n; ++k) {
      x[i] -= lu_(i, k) * x[k];
    }
    x[i] /= lu_(i, i);
  }
  return x;
}

template <class R>
CMatrix<R>
LuFactorization<R>::solve(const CMatrix<R>& B) const {
  CMatrix<R> X(B.rows(), B.cols());
  for (std::size_t j = 0; j < B.cols(); ++j) {
    CVector<R> bj(std::vector<Complex<R>>(B.col(j).begin(), B.col(j).end()));
    CVector<R> xj = solve(bj);
    std::copy(xj.begin(), xj.end(), X.col(j).begin());
  }
  return X;
}

template <class R>
CMatrix<R>
LuFactorization<R>::inverse() const {
  return solve(CMatrix<R>::identity(lu_.rows()));
}

template <class R>
Complex<R>
LuFactorization<R>::determinant() const {
  Complex<R> d{R{double(sign_)}};
  for (std::size_t i = 0; i < lu_.rows(); ++i) {
    d *= lu_(i, i);
  }
  return d;
}

template <class R>
QrFactors<R>
qr_householder(const CMatrix<R>& A, bool full) {
  using C = Complex<R>;
  const std::size_t m = A.rows();
  const std::size_t n = A.cols();
  const std::size_t steps = std::min(m == 0 ? 0 : m - 1, n);
  CMatrix<R> W = A;
  std::vector<std::vector<C>> reflectors;
  reflectors.reserve(steps);

  for (std::size_t k = 0; k < std::min(m, n); ++k) {
    std::vector<C> v(m);
    R xnorm{0.0};
    for (std::size_t i = k; i < m; ++i) {
      xnorm += norm(W(i, k));
    }
    xnorm = sqrt(xnorm);
    R tail{0.0};
    for (std::size_t i = k + 1; i < m; ++i) {
      tail += norm(W(i, k));
    }
    if (xnorm == R{0.0} || tail == R{0.0}) {
      reflectors.emplace_back();
      continue;
    }
    const C x0 = W(k, k);
    const R ax0 = abs(x0);
    const C alpha = ax0 == R{0.0} ? C{-xnorm} : -(x0 / ax0) * xnorm;
    for (std::size_t i = k; i < m; ++i) {
      v[i] = W(i, k);
    }
    v[k] -= alpha;
    R vnorm2{0.0};
    for (std::size_t i = k; i < m; ++i) {
      vnorm2 += norm(v[i]);
    }
    const R scale = sqrt(R{2.0} / vnorm2);
    for (std::size_t i = k; i < m; ++i) {
      v[i] *= scale;
    }
    for (std::size_t j = k; j < n; ++j) {
      C s{};
      for (std::size_t i = k; i < m; ++i) {
        s += conj(v[i]) * W(i, j);
      }
      for (std::size_t i = k; i < m; ++i) {
        W(i, j) -= v[i] * s;
      }
    }
    for (std::size_t i = k + 1; i < m; ++i) {
      W(i, k) = C{};
    }
    reflectors.push_back(std::move(v));
  }

  const std::size_t qcols = full ? m : std::min(m, n);
  CMatrix<R> Q(m, qcols);
  for (std::size_t i = 0; i < qcols; ++i) {
    Q(i, i) = C{1.0};
  }
  for (std::size_t k = reflectors.size(); k-- > 0;) {
    const auto& v = reflectors[k];
    if (v.empty()) {
      continue;
    }
    for (std::size_t j = 0; j < qcols; ++j) {
      C s{};
      for (std::size_t i = k; i < m; ++i) {
        s += conj(v[i]) * Q(i, j);
      }
      for (std::size_t i = k; i < m; ++i) {
        Q(i, j) -= v[i] * s;
      }
    }
  }

  const std::size_t rrows = full ? m : std::min(m, n);
  CMatrix<R> Rf(rrows, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i <= std::min(j, rrows - 1) && i < rrows; ++i) {
      Rf(i, j) = W(i, j);
    }
  }
  return {std::move(Q), std::move(Rf)};
}

template <class R>
CVector<R>
inverse_iteration(const CMatrix<R>& A, const Complex<R>& lambda, int iterations) {
  using C = Complex<R>;
  const std::size_t n = A.rows();
  const R scale = std::max(R{1.0}, frobenius_norm(A));
  C shift = lambda;
  std::optional<LuFactorization<R>> lu;
  for (int attempt = 0; attempt < 8; ++attempt) {
    CMatrix<R> B = A;
    for (std::size_t i = 0; i < n; ++i) {
      B(i, i) -= shift;
    }
    lu.emplace(std::move(B));
    if (!lu->singular()) {
      break;
    }
    shift += C{R{double(n) * epsilon<R>() * 16.0 * double(1 << attempt)} * scale};
  }
  if (lu->singular()) {
    throw NumericalError("inverse_iteration: shifted matrix stays singular");
  }
  CVector<R> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Fixed, non-symmetric start vector.
    x[i] = C{R{1.0 + 0.1 * double(i % 7)}, R{0.05 * double(i % 3)}};
  }
  for (int it = 0; it < iterations; ++it) {
    x = lu->solve(x);
    const R nx = norm2(x);
    for (auto& v : x) {
      v /= nx;
    }
  }
  return x;
}

#define RLK_INSTANTIATE_LINALG(R)                                                                \
  template RVector<R> solve_real_ls<R>(const RMatrix<R>&, const RVector<R>&);                  \
  template std::vector<Complex<R>> eig_dense<R>(const CMatrix<R>&);                             \
  template std::vector<R> hermitian_eigenvalues<R>(const CMatrix<R>&);                          \
  template std::vector<R> singular_values<R>(const CMatrix<R>&);                                \
  template R cond2<R>(const CMatrix<R>&);                                                       \
  template R norm_2<R>(const CMatrix<R>&);                                                      \
  template class LuFactorization<R>;                                                            \
  template QrFactors<R> qr_householder<R>(const CMatrix<R>&, bool);                             \
  template CVector<R> inverse_iteration<R>(const CMatrix<R>&, const Complex<R>&, int);

RLK_INSTANTIATE_LINALG(double)
RLK_INSTANTIATE_LINALG(DoubleDouble)

#undef RLK_INSTANTIATE_LINALG

} // namespace rlk
