#include "rlk/bound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>
#include <utility>

#include "rlk/coneig.hpp"
#include "rlk/krylov.hpp"
#include "rlk/linalg.hpp"

namespace rlk {

namespace {

// Orthonormal basis of span{phi_0, .., phi_{m-1}} evaluated at the nodes,
// phi_{k+1}(l) = l conj(phi_k(l)), together with the coefficient vectors
// of each basis polynomial.
struct NodeBasis {
  std::vector<CVector<double>> q;
  std::vector<R2Polynomial> polys;
};

NodeBasis
node_basis(const std::vector<cdouble>& nodes, std::size_t m) {
  const std::size_t n = nodes.size();
  CMatrix<double> D(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    D(i, i) = nodes[i];
  }
  CVector<double> ones(n, cdouble{1.0});
  RLinearArnoldi<double> arnoldi(D, ones, m);
  while (arnoldi.steps() + 1 < m && arnoldi.step()) {
  }
  NodeBasis out;
  const std::size_t dim = std::min(m, arnoldi.basis_size());
  out.polys.push_back(R2Polynomial{{cdouble{1.0 / std::sqrt(static_cast<double>(n))}}});
  for (std::size_t k = 0; k < dim; ++k) {
    const auto v = arnoldi.basis_vector(k);
    out.q.emplace_back(std::vector<cdouble>(v.begin(), v.end()));
    if (k + 1 < dim) {
      auto next = conj_shift(out.polys[k]);
      for (std::size_t i = 0; i <= k; ++i) {
        const cdouble h = arnoldi.h(i, k);
        for (std::size_t c = 0; c < out.polys[i].coeffs.size(); ++c) {
          next.coeffs[c] -= h * out.polys[i].coeffs[c];
        }
      }
      const double beta = arnoldi.h(k + 1, k).real();
      for (auto& c : next.coeffs) {
        c /= beta;
      }
      out.polys.push_back(std::move(next));
    }
  }
  return out;
}

// Real columns of c -> kappa z + D conj(z) at the nodes, z = sum c_k q_k:
// column 2k for Re c_k, 2k + 1 for Im c_k.
std::vector<CVector<double>>
response_columns(const NodeBasis& basis, const std::vector<cdouble>& nodes, cdouble kappa) {
  const cdouble I{0.0, 1.0};
  std::vector<CVector<double>> cols;
  for (const auto& q : basis.q) {
    CVector<double> re(q.size());
    CVector<double> im(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
      const cdouble a = kappa * q[i];
      const cdouble b = nodes[i] * std::conj(q[i]);
      re[i] = a + b;
      im[i] = I * (a - b);
    }
    cols.push_back(std::move(re));
    cols.push_back(std::move(im));
  }
  return cols;
}

RVector<double>
weighted_solve(const std::vector<CVector<double>>& cols, const std::vector<double>& w) {
  const std::size_t n = w.size();
  RMatrix<double> A(2 * n, cols.size());
  RVector<double> rhs(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = std::sqrt(w[i]);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      A(i, k) = s * cols[k][i].real();
      A(n + i, k) = s * cols[k][i].imag();
    }
    rhs[i] = s;
  }
  return solve_real_ls(A, rhs);
}

std::vector<double>
residual_moduli(const std::vector<CVector<double>>& cols, const RVector<double>& c) {
  const std::size_t n = cols.empty() ? 0 : cols[0].size();
  std::vector<double> res(n);
  for (std::size_t i = 0; i < n; ++i) {
    cdouble r{-1.0};
    for (std::size_t k = 0; k < cols.size(); ++k) {
      r += c[k] * cols[k][i];
    }
    res[i] = std::abs(r);
  }
  return res;
}

R2Polynomial
assemble(const NodeBasis& basis, const RVector<double>& c, std::size_t degree_index) {
  R2Polynomial p{std::vector<cdouble>(degree_index + 1)};
  for (std::size_t k = 0; k < basis.polys.size(); ++k) {
    const cdouble ck{c[2 * k], c[2 * k + 1]};
    for (std::size_t i = 0; i < basis.polys[k].coeffs.size(); ++i) {
      p.coeffs[i] += ck * basis.polys[k].coeffs[i];
    }
  }
  return p;
}

void
check_nodes(const std::vector<cdouble>& nodes) {
  if (nodes.empty()) {
    throw InvalidArgument("lawson_minmax: no nodes");
  }
  std::set<std::pair<double, double>> seen;
  for (const auto& l : nodes) {
    if (!seen.emplace(l.real(), l.imag()).second) {
      throw InvalidArgument("lawson_minmax: repeated node");
    }
  }
}

} // namespace

LawsonResult
lawson_minmax(const std::vector<cdouble>& nodes, cdouble kappa, std::size_t degree_index,
              const LawsonOptions& options) {
  check_nodes(nodes);
  const std::size_t n = nodes.size();
  const auto basis = node_basis(nodes, std::min(degree_index + 1, n));
  const auto cols = response_columns(basis, nodes, kappa);

  LawsonResult out;
  std::vector<double> w(n, 1.0 / static_cast<double>(n));

  if (basis.q.size() == n) {
    // As many unknowns as nodes: the residual can be made to vanish.
    const auto c = weighted_solve(cols, w);
    out.p = assemble(basis, c, degree_index);
    out.E = 0.0;
    out.weights = w;
    out.converged = true;
    return out;
  }

  double best = std::numeric_limits<double>::infinity();
  for (std::size_t it = 0; it < options.max_iterations; ++it) {
    if (options.on_iteration) {
      options.on_iteration(w);
    }
    const auto c = weighted_solve(cols, w);
    const auto res = residual_moduli(cols, c);
    const double emax = *std::max_element(res.begin(), res.end());
    double rms2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      rms2 += w[i] * res[i] * res[i];
    }
    out.iterations = it + 1;
    if (emax < best) {
      best = emax;
      out.E = emax;
      out.p = assemble(basis, c, degree_index);
      out.weights = w;
    }
    if (emax == 0.0 || (emax - std::sqrt(rms2)) <= options.tol * emax) {
      out.converged = true;
      break;
    }
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = std::max(w[i] * res[i], options.weight_floor);
      total += w[i];
    }
    for (auto& wi : w) {
      wi /= total;
    }
  }
  return out;
}

BoundTrace
gmres_bound_trace(const CMatrix<double>& M, const CVector<double>& b, cdouble kappa, std::size_t steps) {
  if (b.size() != M.rows()) {
    throw DimensionError("gmres_bound_trace: right-hand side length does not match matrix");
  }
  BoundTrace out;
  out.rhs_norm = norm2(b);
  if (is_complex_symmetric(M)) {
    // Unitary con-Schur form; for symmetric M the triangular factor is diagonal.
    const auto cs = con_schur(M);
    const auto c = matvec(adjoint(cs.U), b);
    const auto d = phase_diag(c);
    for (std::size_t j = 0; j < c.size(); ++j) {
      const cdouble dc = std::conj(d[j]);
      out.nodes.push_back(cs.R(j, j) * dc * dc);
    }
  } else {
    const auto tn = transported_nodes(M, b);
    out.nodes = tn.nodes;
    out.cond_X = tn.cond_X;
  }
  auto trace = minmax_bound_trace(out.nodes, kappa, steps, out.cond_X, out.rhs_norm);
  return trace;
}

BoundTrace
minmax_bound_trace(const std::vector<cdouble>& nodes, cdouble kappa, std::size_t steps, double cond_X,
                   double rhs_norm) {
  BoundTrace out;
  out.nodes = nodes;
  out.cond_X = cond_X;
  out.rhs_norm = rhs_norm;
  out.minmax.push_back(1.0);
  out.bound.push_back(out.rhs_norm);
  out.converged.push_back(true);
  for (std::size_t j = 1; j <= steps; ++j) {
    const auto lr = lawson_minmax(out.nodes, kappa, j - 1);
    const double E = std::min(lr.E, out.minmax.back());
    out.minmax.push_back(E);
    out.converged.push_back(lr.converged);
    out.bound.push_back(out.cond_X * E * out.rhs_norm);
  }
  return out;
}

} // namespace rlk
