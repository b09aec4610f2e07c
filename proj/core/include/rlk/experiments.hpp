#pragma once

//
// The numerical experiment suite: diagonal test matrices
//   d_jj = R_j exp(2 pi i phi_j),  R_1 = 1, R_n = 10 (linear in between),
// right-hand side of all ones, solved by CSYM.
//

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rlk/dense.hpp"
#include "rlk/solver.hpp"

namespace rlk {

enum class Precision { double_precision, double_double };

std::string_view
to_string(Precision p) noexcept;

/// "double" or "dd"; throws InvalidArgument otherwise.
Precision
parse_precision(std::string_view text);

enum class AngleRule {
  constant,         ///< phi_j = phi
  sweep,            ///< phi_1 = 0 .. phi_n = phi
  perturbed_prefix, ///< sweep to 1, plus rho_j for j <= count
  perturbed_suffix, ///< sweep to 1, plus rho_j for j > n - count
  random,           ///< phi_j uniform in [0, 1)
  two_spiral,       ///< odd j swept to 1, even j swept to 2
};

struct ExperimentSpec {
  std::size_t n{100};
  AngleRule rule{AngleRule::constant};
  double phi{0.1};
  std::size_t count{0};
  double perturbation{1e-10}; ///< rho_j uniform in [0, perturbation]
  std::uint64_t seed{1};
};

/// phi_1 .. phi_n in precision R (indices in the formulas are 1-based).
template <class R>
std::vector<R>
experiment_angles(const ExperimentSpec& spec);

template <class R>
CVector<R>
experiment_diagonal(const ExperimentSpec& spec);

struct ExperimentTrace {
  std::string label;
  ExperimentSpec spec;
  Precision precision{Precision::double_precision};
  ResidualTrace<double> trace; ///< absolute norms; rhs_norm = sqrt(n)
  std::vector<cdouble> diagonal;
  bool converged{false};
};

struct ExampleOptions {
  std::size_t n{100};
  Precision precision{Precision::double_precision};
  std::uint64_t seed{1};
  std::optional<std::size_t> maxit;
  std::optional<double> tol;
};

struct ExampleResult {
  int example{0};
  std::vector<ExperimentTrace> traces;
};

/// Runs example 1..5. Example 1 yields the clean run and a run on the
/// diagonal rounded to double and solved again in double-double.
/// Throws InvalidArgument for an unknown example number or n < 2.
ExampleResult
run_example(int example, const ExampleOptions& options);

/// Solves D conj(z) = ones with CSYM for an explicit diagonal.
ExperimentTrace
run_diagonal(const ExperimentSpec& spec, Precision precision, const ExampleOptions& options, std::string label);

/// First index i with rel[i] <= level.
std::optional<std::size_t>
iterations_to_reach(const std::vector<double>& rel, double level);

struct ParityProgress {
  double odd_median{0.0};  ///< median of log10(r_{j-1} / r_j) over odd j
  double even_median{0.0}; ///< the same over even j >= 2
};

/// Per-step progress split by step parity, over steps j <= max_step with
/// rel[j] > floor. Step j moves from rel[j-1] to rel[j]; rel[0] is the
/// initial residual.
ParityProgress
parity_progress(const std::vector<double>& rel, double floor,
                std::size_t max_step = std::numeric_limits<std::size_t>::max());

/// Coefficient of determination of a straight-line fit of log10(rel)
/// against the iteration index, over the leading entries with rel > floor.
double
log_linear_r2(const std::vector<double>& rel, double floor);

} // namespace rlk
