#pragma once

//
// Decompositions under consimilarity M -> X^{-1} M conj(X).
//

#include <cstdint>
#include <optional>
#include <vector>

#include "rlk/dense.hpp"

namespace rlk {

struct ConTolerance {
  double imag{1e-10}; ///< relative to ||M conj(M)||_F; also the negativity slack
  double gap{1e-8};   ///< relative separation of distinct moduli
};

/// M = U R U^T with U unitary and R upper triangular, diag(R) real,
/// nonnegative and ascending.
struct ConSchur {
  CMatrix<double> U;
  CMatrix<double> R;
};

/// M = X Lambda conj(X^{-1}) with Lambda real nonnegative diagonal.
struct ConDiagonalization {
  CMatrix<double> X;
  std::vector<double> lambda;
  double cond_X{1.0};
};

/// Square roots of the eigenvalues of M conj(M), ascending. Throws
/// InvalidArgument ("not contriangularizable") when an eigenvalue is
/// non-real or negative beyond tolerance.
std::vector<double>
coneigenvalue_moduli(const CMatrix<double>& M, const ConTolerance& tol = {});

/// Eigenvalues of M conj(M) all real, nonnegative and pairwise distinct
/// within tolerance.
bool
is_condiagonalizable(const CMatrix<double>& M, const ConTolerance& tol = {});

/// Unitary con-triangularization by deflation, smallest modulus first.
/// With `extension_seed`, the unitary completion of each coneigenvector is
/// randomized, which changes U and R only up to a +-1 diagonal.
ConSchur
con_schur(const CMatrix<double>& M, std::optional<std::uint64_t> extension_seed = std::nullopt,
          const ConTolerance& tol = {});

/// Unit upper triangular T with R conj(T) = T diag(R), i.e.
/// R = T Lambda conj(T^{-1}). R must be upper triangular with real
/// nonnegative diagonal entries that are pairwise distinct.
CMatrix<double>
con_diagonalize_triangular(const CMatrix<double>& R);

/// Throws InvalidArgument ("degenerate coneigenvalues") when two moduli
/// are closer than the relative gap tolerance.
ConDiagonalization
con_diagonalize(const CMatrix<double>& M, const ConTolerance& tol = {});

/// ||M - U R U^T||_F / ||M||_F.
double
con_schur_residual(const CMatrix<double>& M, const ConSchur& cs);

/// ||M - X Lambda conj(X^{-1})||_F / ||M||_F.
double
con_diagonalization_residual(const CMatrix<double>& M, const ConDiagonalization& cd);

/// d_j = v_j / |v_j|, or 1 where v_j = 0.
std::vector<cdouble>
phase_diag(const CVector<double>& v);

struct TransportedNodes {
  std::vector<cdouble> nodes;   ///< Lambda_j conj(d_j)^2, ascending modulus
  std::vector<double> weights;  ///< r_j^2 with r = |X^{-1} b|
  std::vector<double> r;
  double cond_X{1.0};
};

/// Nodes and weights of the diagonal system (D^{-1} Lambda conj(D), D^{-1} X^{-1} b)
/// consimilar to (M, b).
TransportedNodes
transported_nodes(const CMatrix<double>& M, const CVector<double>& b, const ConTolerance& tol = {});

/// For n x m isometries with U U^T = V V^T, the real orthogonal R = U^* V
/// with V = U R. Throws InvalidArgument when the hypothesis fails.
RMatrix<double>
isometry_phase_factor(const CMatrix<double>& U, const CMatrix<double>& V);

} // namespace rlk
