// solve, csym, coneig and bound: commands that act on a problem file.

#include <algorithm>
#include <memory>

#include <fmt/format.h>

#include "commands.hpp"
#include "rlk/bound.hpp"
#include "rlk/coneig.hpp"
#include "rlk/linalg.hpp"
#include "rlk/matrix_market.hpp"
#include "rlk/solver.hpp"

namespace rlk::cli {

namespace {

struct SolveFlags {
  std::string file;
  std::optional<std::size_t> maxit;
  std::optional<double> tol;
  bool no_reorth{false};
  bool compare_real{false};
  bool with_bound{false};
  std::size_t bound_steps{20};
};

CMatrix<DoubleDouble>
widen(const CMatrix<double>& A) {
  CMatrix<DoubleDouble> out(A.rows(), A.cols());
  for (std::size_t j = 0; j < A.cols(); ++j) {
    for (std::size_t i = 0; i < A.rows(); ++i) {
      out(i, j) = DDComplex{A(i, j)};
    }
  }
  return out;
}

CVector<DoubleDouble>
widen(const CVector<double>& v) {
  CVector<DoubleDouble> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = DDComplex{v[i]};
  }
  return out;
}

template <class R>
TraceSeries
to_series(const SolveReport<R>& report, std::string label) {
  TraceSeries s;
  s.label = std::move(label);
  s.rhs_norm = to_double(report.trace.rhs_norm);
  for (const auto& r : report.trace.residual_norms) {
    s.residual.push_back(to_double(r));
  }
  return s;
}

template <class R>
void
summarize(const char* name, const SolveReport<R>& report) {
  const auto rel = report.trace.relative();
  fmt::print(stderr, "{}: {} iterations, relative residual {:.3e}, {}{}\n", name, report.iterations,
             rel.empty() ? 1.0 : rel.back(), report.converged ? "converged" : "not converged",
             report.breakdown_step ? fmt::format(" (breakdown at step {})", *report.breakdown_step) : "");
}

template <class R>
TraceSeries
solve_in(const SolveFlags& flags, bool symmetric_solver, const CMatrix<R>& M, const CVector<R>& b,
         const Complex<R>& kappa) {
  SolveOptions<R> opts;
  opts.maxit = flags.maxit;
  if (flags.tol) {
    opts.tol = R{*flags.tol};
  }
  opts.reorthogonalize = !flags.no_reorth;
  const auto report = symmetric_solver ? csym<R>(M, b, opts) : rgmres<R>(kappa, M, b, opts);
  const char* name = symmetric_solver ? "csym" : "rgmres";
  summarize(name, report);
  return to_series(report, name);
}

// Runs rgmres or csym in the requested precision and returns the trace.
TraceSeries
run_solver(const GlobalOptions& global, const SolveFlags& flags, const Problem& p, bool symmetric_solver) {
  if (global.parsed_precision() == Precision::double_double) {
    return solve_in<DoubleDouble>(flags, symmetric_solver, widen(p.M), widen(p.b), DDComplex{p.kappa});
  }
  return solve_in<double>(flags, symmetric_solver, p.M, p.b, p.kappa);
}

void
finish_solve(const GlobalOptions& global, const SolveFlags& flags, const Problem& p, TraceSeries main) {
  std::vector<TraceSeries> series;
  if (flags.with_bound) {
    const auto bt = gmres_bound_trace(p.M, p.b, p.kappa, std::min(flags.bound_steps, p.b.size()));
    main.bound = bt.bound;
    fmt::print(stderr, "bound: cond2(X) = {:.6g}, {} steps\n", bt.cond_X, bt.bound.size() - 1);
  }
  series.push_back(std::move(main));
  if (flags.compare_real) {
    const auto maxit = flags.maxit.value_or(2 * p.b.size());
    const auto real_trace = doubled_real_gmres(p.kappa, p.M, p.b, maxit);
    TraceSeries s;
    s.label = "real-gmres";
    s.residual = real_trace.residual_norms;
    s.rhs_norm = real_trace.rhs_norm;
    const auto rel = real_trace.relative();
    fmt::print(stderr, "real-gmres (doubled size): {} iterations, relative residual {:.3e}\n", rel.size() - 1,
               rel.back());
    series.push_back(std::move(s));
  }
  if (global.out.empty()) {
    emit_text(global, "", trace_csv(series.front()));
    return;
  }
  for (const auto& path : emit_outputs(series, {}, global.out, series.front().label)) {
    fmt::print(stderr, "wrote {}\n", path.string());
  }
}

void
add_solve_flags(CLI::App* cmd, SolveFlags& flags, bool allow_compare) {
  cmd->add_option("file", flags.file, "Problem file (Matrix Market M and b, optional %%kappa line)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--maxit", flags.maxit, "Iteration limit (default n)");
  cmd->add_option("--tol", flags.tol, "Relative residual tolerance (default 1e-10, dd 1e-25)");
  cmd->add_flag("--no-reorth", flags.no_reorth, "Skip reorthogonalization");
  cmd->add_flag("--with-bound", flags.with_bound, "Add the min-max bound column");
  cmd->add_option("--bound-steps", flags.bound_steps, "Number of bound steps");
  if (allow_compare) {
    cmd->add_flag("--compare-real", flags.compare_real,
                  "Also run classical GMRES on the equivalent real system of twice the size");
  }
}

} // namespace

void
register_problem_commands(CLI::App& app, const GlobalOptions& global) {
  auto solve_flags = std::make_shared<SolveFlags>();
  auto* solve = app.add_subcommand("solve", "R-linear GMRES for kappa z + M conj(z) = b");
  add_solve_flags(solve, *solve_flags, true);
  solve->callback([&global, solve_flags] {
    const auto p = read_problem(solve_flags->file);
    finish_solve(global, *solve_flags, p, run_solver(global, *solve_flags, p, false));
  });

  auto csym_flags = std::make_shared<SolveFlags>();
  auto* csym_cmd = app.add_subcommand("csym", "CSYM for M conj(z) = b with complex symmetric M");
  add_solve_flags(csym_cmd, *csym_flags, false);
  csym_cmd->callback([&global, csym_flags] {
    const auto p = read_problem(csym_flags->file);
    if (p.kappa != cdouble{}) {
      throw UsageError("csym solves M conj(z) = b; the problem file sets kappa = " +
                       fmt::format("{} {}", p.kappa.real(), p.kappa.imag()) + " (use solve)");
    }
    finish_solve(global, *csym_flags, p, run_solver(global, *csym_flags, p, true));
  });

  auto coneig_file = std::make_shared<std::string>();
  auto* coneig = app.add_subcommand("coneig", "Coneigenvalue moduli, con-Schur and con-diagonal forms");
  coneig->add_option("file", *coneig_file, "Problem file")->required()->check(CLI::ExistingFile);
  coneig->callback([&global, coneig_file] {
    const auto p = read_problem(*coneig_file);
    const auto moduli = coneigenvalue_moduli(p.M);
    std::string csv = "index,modulus\n";
    for (std::size_t i = 0; i < moduli.size(); ++i) {
      csv += fmt::format("{},{:.17g}\n", i, moduli[i]);
    }
    const auto cs = con_schur(p.M);
    fmt::print(stderr, "con-Schur residual {:.3e}\n", con_schur_residual(p.M, cs));
    std::vector<cdouble> nodes;
    if (is_condiagonalizable(p.M)) {
      const auto cd = con_diagonalize(p.M);
      fmt::print(stderr, "condiagonalizable: yes, cond2(X) = {:.6g}, residual {:.3e}\n", cd.cond_X,
                 con_diagonalization_residual(p.M, cd));
      nodes = transported_nodes(p.M, p.b).nodes;
    } else {
      fmt::print(stderr, "condiagonalizable: no\n");
    }
    emit_text(global, global.out.empty() ? "" : ".csv", csv);
    if (!global.out.empty() && !nodes.empty()) {
      write_text_file(global.out + "_spectrum.svg", spectrum_scatter_svg(nodes, "transported nodes"));
    }
  });

  struct BoundFlags {
    std::string file;
    std::optional<std::size_t> steps;
    bool with_solve{false};
  };
  auto bflags = std::make_shared<BoundFlags>();
  auto* bound = app.add_subcommand("bound", "Min-max bound B_j = cond2(X) E_j ||b||");
  bound->add_option("file", bflags->file, "Problem file")->required()->check(CLI::ExistingFile);
  bound->add_option("--steps", bflags->steps, "Number of steps (default n)");
  bound->add_flag("--with-solve", bflags->with_solve, "Add the R-linear GMRES residual column");
  bound->callback([&global, bflags] {
    const auto p = read_problem(bflags->file);
    const std::size_t steps = std::min(bflags->steps.value_or(p.b.size()), p.b.size());
    const auto bt = gmres_bound_trace(p.M, p.b, p.kappa, steps);
    std::vector<double> residual;
    if (bflags->with_solve) {
      SolveOptions<double> opts;
      opts.maxit = std::max<std::size_t>(steps, 1);
      opts.tol = 0.0;
      residual = rgmres<double>(p.kappa, p.M, p.b, opts).trace.residual_norms;
    }
    std::string csv = bflags->with_solve ? "step,E_j,B_j,residual\n" : "step,E_j,B_j\n";
    for (std::size_t j = 0; j < bt.bound.size(); ++j) {
      csv += fmt::format("{},{:.17g},{:.17g}", j, bt.minmax[j], bt.bound[j]);
      if (bflags->with_solve) {
        csv += j < residual.size() ? fmt::format(",{:.17g}", residual[j]) : ",";
      }
      csv += '\n';
    }
    const auto unconverged = std::count(bt.converged.begin(), bt.converged.end(), false);
    fmt::print(stderr, "cond2(X) = {:.6g}; Lawson iteration stopped at its cap on {} of {} steps\n", bt.cond_X,
               unconverged, steps);
    emit_text(global, global.out.empty() ? "" : ".csv", csv);
  });
}

} // namespace rlk::cli
