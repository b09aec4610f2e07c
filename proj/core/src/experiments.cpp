#include "rlk/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rlk/random.hpp"

namespace rlk {

std::string_view
to_string(Precision p) noexcept {
  return p == Precision::double_precision ? "double" : "dd";
}

Precision
parse_precision(std::string_view text) {
  if (text == "double") {
    return Precision::double_precision;
  }
  if (text == "dd") {
    return Precision::double_double;
  }
  throw InvalidArgument("unknown precision '" + std::string(text) + "' (expected double or dd)");
}

namespace {

template <class R>
R
lerp(std::size_t j, std::size_t n, const R& a, const R& b) {
  return a + (b - a) * R{static_cast<double>(j)} / R{static_cast<double>(n - 1)};
}

std::vector<double>
uniform_draws(std::uint64_t seed, std::size_t n, double scale) {
  Rng rng(seed);
  std::vector<double> out(n);
  for (auto& x : out) {
    x = scale * rng.uniform();
  }
  return out;
}

} // namespace

template <class R>
std::vector<R>
experiment_angles(const ExperimentSpec& spec) {
  const std::size_t n = spec.n;
  if (n < 2) {
    throw InvalidArgument("experiment: n must be at least 2");
  }
  std::vector<R> phi(n);
  switch (spec.rule) {
  case AngleRule::constant:
    std::fill(phi.begin(), phi.end(), R{spec.phi});
    break;
  case AngleRule::sweep:
    for (std::size_t j = 0; j < n; ++j) {
      phi[j] = lerp(j, n, R{0.0}, R{spec.phi});
    }
    break;
  case AngleRule::perturbed_prefix:
  case AngleRule::perturbed_suffix: {
    if (spec.count > n) {
      throw InvalidArgument("experiment: perturbed count exceeds n");
    }
    const auto rho = uniform_draws(spec.seed, n, spec.perturbation);
    const std::size_t first = spec.rule == AngleRule::perturbed_prefix ? 0 : n - spec.count;
    const std::size_t last = spec.rule == AngleRule::perturbed_prefix ? spec.count : n;
    for (std::size_t j = 0; j < n; ++j) {
      phi[j] = lerp(j, n, R{0.0}, R{1.0});
      if (j >= first && j < last) {
        phi[j] += R{rho[j]};
      }
    }
    break;
  }
  case AngleRule::random: {
    const auto u = uniform_draws(spec.seed, n, 1.0);
    for (std::size_t j = 0; j < n; ++j) {
      phi[j] = R{u[j]};
    }
    break;
  }
  case AngleRule::two_spiral:
    // j is 0-based here, so "odd j" in 1-based terms is even j here.
    for (std::size_t j = 0; j < n; ++j) {
      phi[j] = lerp(j, n, R{0.0}, R{j % 2 == 0 ? 1.0 : 2.0});
    }
    break;
  }
  return phi;
}

template <class R>
CVector<R>
experiment_diagonal(const ExperimentSpec& spec) {
  const auto phi = experiment_angles<R>(spec);
  const std::size_t n = spec.n;
  CVector<R> d(n);
  const R two_pi = R{2.0} * pi<R>();
  for (std::size_t j = 0; j < n; ++j) {
    const R radius = lerp(j, n, R{1.0}, R{10.0});
    d[j] = unit_phase<R>(two_pi * phi[j]) * Complex<R>{radius};
  }
  return d;
}

template std::vector<double>
experiment_angles<double>(const ExperimentSpec&);
template std::vector<DoubleDouble>
experiment_angles<DoubleDouble>(const ExperimentSpec&);
template CVector<double>
experiment_diagonal<double>(const ExperimentSpec&);
template CVector<DoubleDouble>
experiment_diagonal<DoubleDouble>(const ExperimentSpec&);

namespace {

template <class R>
ExperimentTrace
solve_diagonal(const CVector<R>& d, const ExampleOptions& options) {
  const std::size_t n = d.size();
  CMatrix<R> D(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    D(j, j) = d[j];
  }
  CVector<R> ones(n, Complex<R>{R{1.0}});
  SolveOptions<R> opts;
  if (options.tol) {
    opts.tol = R{*options.tol};
  }
  opts.maxit = std::min(n, options.maxit.value_or(n));
  const auto report = csym<R>(D, ones, opts);

  ExperimentTrace out;
  out.trace.rhs_norm = to_double(report.trace.rhs_norm);
  for (const auto& r : report.trace.residual_norms) {
    out.trace.residual_norms.push_back(to_double(r));
  }
  for (std::size_t j = 0; j < n; ++j) {
    out.diagonal.push_back(to_cdouble(d[j]));
  }
  out.converged = report.converged;
  return out;
}

std::string
spec_label(const ExperimentSpec& spec) {
  switch (spec.rule) {
  case AngleRule::constant:
    return "phi=" + std::to_string(spec.phi).substr(0, 4);
  case AngleRule::sweep:
    return "N=" + std::to_string(static_cast<int>(spec.phi));
  case AngleRule::perturbed_prefix:
    return "k=" + std::to_string(spec.count);
  case AngleRule::perturbed_suffix:
    return "K=" + std::to_string(spec.count);
  case AngleRule::random:
    return "random";
  case AngleRule::two_spiral:
    return "two-spiral";
  }
  return "?";
}

} // namespace

ExperimentTrace
run_diagonal(const ExperimentSpec& spec, Precision precision, const ExampleOptions& options, std::string label) {
  ExperimentTrace out = precision == Precision::double_double
                            ? solve_diagonal<DoubleDouble>(experiment_diagonal<DoubleDouble>(spec), options)
                            : solve_diagonal<double>(experiment_diagonal<double>(spec), options);
  out.label = label.empty() ? spec_label(spec) : std::move(label);
  out.spec = spec;
  out.precision = precision;
  return out;
}

ExampleResult
run_example(int example, const ExampleOptions& options) {
  if (options.n < 2) {
    throw InvalidArgument("example: n must be at least 2");
  }
  ExampleResult result;
  result.example = example;
  ExperimentSpec base;
  base.n = options.n;
  base.seed = options.seed;
  const std::size_t n = options.n;
  const std::vector<std::size_t> counts{std::max<std::size_t>(1, n / 8), std::max<std::size_t>(1, n / 4),
                                        std::max<std::size_t>(1, n / 2), n};

  switch (example) {
  case 1: {
    auto spec = base;
    spec.rule = AngleRule::constant;
    spec.phi = 0.1;
    result.traces.push_back(run_diagonal(spec, options.precision, options, "clean"));
    // Rounded to double, then solved again in double-double.
    const auto exact = experiment_diagonal<DoubleDouble>(spec);
    CVector<DoubleDouble> rounded(n);
    for (std::size_t j = 0; j < n; ++j) {
      rounded[j] = DDComplex{to_cdouble(exact[j])};
    }
    auto rt = solve_diagonal<DoubleDouble>(rounded, options);
    rt.label = "roundtrip";
    rt.spec = spec;
    rt.precision = Precision::double_double;
    result.traces.push_back(std::move(rt));
    break;
  }
  case 2:
    for (int N = 1; N <= 5; ++N) {
      auto spec = base;
      spec.rule = AngleRule::sweep;
      spec.phi = N;
      result.traces.push_back(run_diagonal(spec, options.precision, options, ""));
    }
    break;
  case 3:
  case 4:
    for (auto c : counts) {
      auto spec = base;
      spec.rule = example == 3 ? AngleRule::perturbed_prefix : AngleRule::perturbed_suffix;
      spec.count = c;
      result.traces.push_back(run_diagonal(spec, options.precision, options, ""));
    }
    break;
  case 5: {
    auto spec = base;
    spec.rule = AngleRule::random;
    result.traces.push_back(run_diagonal(spec, options.precision, options, ""));
    spec.rule = AngleRule::two_spiral;
    result.traces.push_back(run_diagonal(spec, options.precision, options, ""));
    break;
  }
  default:
    throw InvalidArgument("example must be 1..5, got " + std::to_string(example));
  }
  return result;
}

std::optional<std::size_t>
iterations_to_reach(const std::vector<double>& rel, double level) {
  for (std::size_t i = 0; i < rel.size(); ++i) {
    if (rel[i] <= level) {
      return i;
    }
  }
  return std::nullopt;
}

namespace {

double
median(std::vector<double> v) {
  if (v.empty()) {
    return 0.0;
  }
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (v.size() % 2 == 1) {
    return *mid;
  }
  return 0.5 * (*mid + *std::max_element(v.begin(), mid));
}

} // namespace

ParityProgress
parity_progress(const std::vector<double>& rel, double floor, std::size_t max_step) {
  std::vector<double> odd;
  std::vector<double> even;
  for (std::size_t j = 1; j < rel.size() && j <= max_step && rel[j] > floor; ++j) {
    const double drop = std::log10(rel[j - 1] / rel[j]);
    (j % 2 == 1 ? odd : even).push_back(drop);
  }
  return {median(odd), median(even)};
}

double
log_linear_r2(const std::vector<double>& rel, double floor) {
  std::vector<double> y;
  for (double r : rel) {
    if (!(r > floor)) {
      break;
    }
    y.push_back(std::log10(r));
  }
  const std::size_t m = y.size();
  if (m < 3) {
    return 1.0;
  }
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sx += static_cast<double>(i);
    sy += y[i];
  }
  const double mx = sx / static_cast<double>(m);
  const double my = sy / static_cast<double>(m);
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double dx = static_cast<double>(i) - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (syy == 0.0) {
    return 1.0;
  }
  return sxy * sxy / (sxx * syy);
}

} // namespace rlk
