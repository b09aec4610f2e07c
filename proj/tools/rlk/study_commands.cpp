// randmat, approx and example.

#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <sstream>

#include <fmt/format.h>

#include "commands.hpp"
#include "rlk/bound.hpp"
#include "rlk/polyspace.hpp"
#include "rlk/randmat.hpp"

namespace rlk::cli {

namespace {

std::vector<CurveSample>
read_samples(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open " + path);
  }
  std::vector<CurveSample> samples;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') {
      continue;
    }
    std::vector<double> v;
    std::stringstream ss(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        v.push_back(std::stod(cell, &used));
        numeric = numeric && cell.find_first_not_of(" \t\r", used) == std::string::npos;
      } catch (const std::exception&) {
        numeric = false;
      }
    }
    if (!numeric) {
      if (samples.empty() && line_no == 1) {
        continue; // header
      }
      throw ParseError("non-numeric field", line_no);
    }
    CurveSample s{};
    if (v.size() == 5) {
      s = {v[0], {v[1], v[2]}, {v[1], v[2]}, {v[3], v[4]}, {v[3], v[4]}};
    } else if (v.size() == 9) {
      s = {v[0], {v[1], v[2]}, {v[3], v[4]}, {v[5], v[6]}, {v[7], v[8]}};
    } else {
      throw ParseError(fmt::format("expected 5 or 9 columns, found {}", v.size()), line_no);
    }
    samples.push_back(s);
  }
  if (samples.empty()) {
    throw ParseError("no samples", line_no);
  }
  return samples;
}

std::function<cdouble(cdouble)>
named_function(const std::string& name) {
  if (name == "exp") {
    return [](cdouble z) { return std::exp(z); };
  }
  if (name == "conj") {
    return [](cdouble z) { return std::conj(z); };
  }
  return [](cdouble z) { return cdouble{std::abs(z)}; };
}

CurveSpec
named_curve(const std::string& name, double r1, double r2) {
  CurveSpec c;
  c.r1 = r1;
  c.r2 = r2;
  const double tau = 2.0 * std::numbers::pi / (r2 - r1);
  c.z1 = [=](double r) { return std::polar(r, tau * (r - r1)); };
  if (name == "two-spiral") {
    c.z2 = [=](double r) { return std::polar(r, 2.0 * tau * (r - r1)); };
  }
  return c;
}

} // namespace

void
register_study_commands(CLI::App& app, const GlobalOptions& global) {
  struct RandFlags {
    std::size_t n{2};
    std::string kind{"complex"};
    std::size_t samples{10000};
    unsigned threads{1};
  };
  auto rflags = std::make_shared<RandFlags>();
  auto* randmat = app.add_subcommand("randmat", "Monte Carlo estimate of the condiagonalizability probability");
  randmat->add_option("--n", rflags->n, "Matrix size")->check(CLI::PositiveNumber);
  randmat->add_option("--kind", rflags->kind, "Ginibre ensemble")->check(CLI::IsMember({"complex", "real"}));
  randmat->add_option("--samples", rflags->samples, "Number of matrices")->check(CLI::PositiveNumber);
  randmat->add_option("--threads", rflags->threads, "Worker threads (0 = all cores)");
  randmat->callback([&global, rflags] {
    const auto est = estimate_condiag_probability(rflags->n, parse_ginibre_kind(rflags->kind), rflags->samples,
                                                  global.seed, rflags->threads);
    emit_text(global, "",
              fmt::format("n,kind,samples,hits,p_hat,stderr,expected\n{},{},{},{},{:.17g},{:.17g},{:.17g}\n", est.n,
                          to_string(est.kind), est.samples, est.hits, est.p_hat, est.stderr_, est.expected));
  });

  struct ApproxFlags {
    std::string samples;
    std::string function;
    std::string curve{"two-spiral"};
    double r1{1.0};
    double r2{10.0};
    std::size_t degree{8};
  };
  auto aflags = std::make_shared<ApproxFlags>();
  auto* approx = app.add_subcommand("approx", "Least-squares fit in P(r2) along a curve");
  auto* samples_opt = approx->add_option("--samples", aflags->samples,
                                         "CSV of r,z1re,z1im,f1re,f1im[,...] (5 or 9 columns)")
                          ->check(CLI::ExistingFile);
  auto* fn_opt = approx->add_option("--function", aflags->function, "Built-in function on a built-in curve")
                     ->check(CLI::IsMember({"exp", "conj", "abs"}));
  samples_opt->excludes(fn_opt);
  approx->add_option("--curve", aflags->curve, "Built-in curve for --function")
      ->check(CLI::IsMember({"spiral", "two-spiral"}));
  approx->add_option("--r1", aflags->r1, "Inner radius of the built-in curve");
  approx->add_option("--r2", aflags->r2, "Outer radius of the built-in curve");
  approx->add_option("--degree", aflags->degree, "Degree in r^2 of each coefficient function");
  approx->callback([&global, aflags] {
    ApproxResult res;
    if (!aflags->samples.empty()) {
      res = fit_r2_on_samples(read_samples(aflags->samples), aflags->degree);
    } else if (!aflags->function.empty()) {
      if (!(aflags->r2 > aflags->r1) || aflags->r1 < 0.0) {
        throw UsageError("need 0 <= r1 < r2");
      }
      res = approx_on_curve(named_curve(aflags->curve, aflags->r1, aflags->r2), named_function(aflags->function),
                            aflags->degree);
    } else {
      throw UsageError("approx needs --samples or --function");
    }
    fmt::print(stderr, "{} fit: sup error {:.3e}, collar error {:.3e}\n",
               res.single_branch ? "single-branch" : "two-branch", res.sup_error, res.collar_error);
    std::string csv = "index,re,im\n";
    for (std::size_t i = 0; i < res.p.coeffs.size(); ++i) {
      csv += fmt::format("{},{:.17g},{:.17g}\n", i, res.p.coeffs[i].real(), res.p.coeffs[i].imag());
    }
    emit_text(global, global.out.empty() ? "" : ".csv", csv);
  });

  struct ExampleFlags {
    int example{1};
    std::size_t n{100};
    std::optional<std::size_t> maxit;
    std::optional<double> tol;
    bool with_bound{false};
    std::size_t bound_steps{20};
  };
  auto eflags = std::make_shared<ExampleFlags>();
  auto* example = app.add_subcommand("example", "Diagonal test problems 1-5 solved by CSYM");
  example->add_option("k", eflags->example, "Example number")->required()->check(CLI::Range(1, 5));
  example->add_option("--n", eflags->n, "Problem size")->check(CLI::Range(2, 100000));
  example->add_option("--maxit", eflags->maxit, "Iteration limit (default n)");
  example->add_option("--tol", eflags->tol, "Relative residual tolerance");
  example->add_flag("--with-bound", eflags->with_bound, "Add the min-max bound column");
  example->add_option("--bound-steps", eflags->bound_steps, "Number of bound steps");
  example->callback([&global, eflags] {
    ExampleOptions opts;
    opts.n = eflags->n;
    opts.precision = global.parsed_precision();
    opts.seed = global.seed;
    opts.maxit = eflags->maxit;
    opts.tol = eflags->tol;
    const auto result = run_example(eflags->example, opts);

    std::vector<TraceSeries> series;
    std::string summary = "label,precision,iterations,final_relresid,converged\n";
    for (const auto& t : result.traces) {
      TraceSeries s;
      s.label = t.label;
      s.residual = t.trace.residual_norms;
      s.rhs_norm = t.trace.rhs_norm;
      if (eflags->with_bound) {
        // Real positive right-hand side: the diagonal entries are the nodes.
        const auto steps = std::min(eflags->bound_steps, t.diagonal.size());
        s.bound = minmax_bound_trace(t.diagonal, cdouble{}, steps, 1.0, t.trace.rhs_norm).bound;
      }
      const auto rel = t.trace.relative();
      summary += fmt::format("{},{},{},{:.6e},{}\n", t.label, to_string(t.precision), rel.size() - 1, rel.back(),
                             t.converged ? "yes" : "no");
      series.push_back(std::move(s));
    }
    if (global.out.empty()) {
      emit_text(global, "", summary);
      return;
    }
    const auto title = fmt::format("Example {} (n = {}, {})", eflags->example, eflags->n,
                                   to_string(opts.precision));
    for (const auto& path : emit_outputs(series, result.traces.front().diagonal, global.out, title)) {
      fmt::print(stderr, "wrote {}\n", path.string());
    }
    write_text_file(global.out + "_summary.csv", summary);
  });
}

} // namespace rlk::cli
