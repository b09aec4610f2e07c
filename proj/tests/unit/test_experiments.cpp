#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "rlk/error.hpp"
#include "rlk/experiments.hpp"
#include "rlk/solver.hpp"

using namespace rlk;
using cd = std::complex<double>;

TEST(Angles, Rules) {
  ExperimentSpec spec;
  spec.n = 9;
  spec.rule = AngleRule::constant;
  spec.phi = 0.1;
  for (double p : experiment_angles<double>(spec)) {
    EXPECT_EQ(p, 0.1);
  }
  spec.rule = AngleRule::sweep;
  spec.phi = 3.0;
  const auto sweep = experiment_angles<double>(spec);
  EXPECT_EQ(sweep.front(), 0.0);
  EXPECT_NEAR(sweep.back(), 3.0, 1e-15);
  EXPECT_NEAR(sweep[4], 1.5, 1e-15);

  spec.rule = AngleRule::two_spiral;
  const auto two = experiment_angles<double>(spec);
  EXPECT_NEAR(two[8], 1.0, 1e-15); // 1-based index 9 is odd
  EXPECT_NEAR(two[7], 2.0 * 7.0 / 8.0, 1e-15);

  spec.rule = AngleRule::random;
  for (double p : experiment_angles<double>(spec)) {
    EXPECT_GE(p, 0.0);
    EXPECT_LT(p, 1.0);
  }
}

TEST(Angles, PerturbedPrefixAndSuffix) {
  ExperimentSpec spec;
  spec.n = 16;
  spec.count = 4;
  spec.perturbation = 1e-10;
  spec.rule = AngleRule::perturbed_prefix;
  const auto pre = experiment_angles<double>(spec);
  spec.rule = AngleRule::perturbed_suffix;
  const auto suf = experiment_angles<double>(spec);
  for (std::size_t j = 0; j < 16; ++j) {
    const double base = static_cast<double>(j) / 15.0;
    const double dp = pre[j] - base;
    const double ds = suf[j] - base;
    if (j < 4) {
      EXPECT_GE(dp, -1e-16);
      EXPECT_LE(dp, 1e-10 + 1e-16);
    } else {
      EXPECT_NEAR(dp, 0.0, 1e-16);
    }
    if (j >= 12) {
      EXPECT_GE(ds, -1e-16);
      EXPECT_LE(ds, 1e-10 + 1e-16);
    } else {
      EXPECT_NEAR(ds, 0.0, 1e-16);
    }
  }
  spec.count = 17;
  EXPECT_THROW(experiment_angles<double>(spec), InvalidArgument);
}

TEST(Diagonal, ModuliAndPhases) {
  ExperimentSpec spec;
  spec.n = 10;
  spec.rule = AngleRule::constant;
  spec.phi = 0.25;
  const auto d = experiment_diagonal<double>(spec);
  for (std::size_t j = 0; j < 10; ++j) {
    EXPECT_NEAR(std::abs(d[j]), 1.0 + static_cast<double>(j), 1e-14);
    EXPECT_NEAR(std::arg(d[j]), std::numbers::pi / 2.0, 1e-14);
  }
  const auto dd = experiment_diagonal<DoubleDouble>(spec);
  for (std::size_t j = 0; j < 10; ++j) {
    EXPECT_NEAR(std::abs(to_cdouble(dd[j]) - d[j]), 0.0, 1e-14);
  }
}

TEST(Examples, InvalidArguments) {
  ExampleOptions opts;
  EXPECT_THROW(run_example(0, opts), InvalidArgument);
  EXPECT_THROW(run_example(6, opts), InvalidArgument);
  opts.n = 1;
  EXPECT_THROW(run_example(1, opts), InvalidArgument);
  EXPECT_EQ(parse_precision("dd"), Precision::double_double);
  EXPECT_EQ(parse_precision("double"), Precision::double_precision);
  EXPECT_THROW(parse_precision("quad"), InvalidArgument);
}

TEST(Examples, ExampleTwoIsMonotoneAndOrdered) {
  ExampleOptions opts;
  const auto res = run_example(2, opts);
  ASSERT_EQ(res.traces.size(), 5u);
  std::size_t previous = 0;
  for (const auto& t : res.traces) {
    const auto rel = t.trace.relative();
    EXPECT_DOUBLE_EQ(t.trace.rhs_norm, 10.0);
    for (std::size_t j = 1; j < rel.size(); ++j) {
      EXPECT_LE(rel[j], rel[j - 1] * (1.0 + 1e-14));
    }
    const auto it = iterations_to_reach(rel, 1e-8);
    ASSERT_TRUE(it.has_value()) << t.label;
    EXPECT_GT(*it, previous) << t.label;
    previous = *it;
  }
}

TEST(Examples, CsymAgreesWithRgmresOnSpiral) {
  ExperimentSpec spec;
  spec.rule = AngleRule::sweep;
  spec.phi = 1.0;
  const auto d = experiment_diagonal<DoubleDouble>(spec);
  CMatrix<DoubleDouble> D(100, 100);
  for (std::size_t i = 0; i < 100; ++i) {
    D(i, i) = d[i];
  }
  const CVector<DoubleDouble> b(100, DDComplex{1.0});
  SolveOptions<DoubleDouble> opts;
  opts.tol = DoubleDouble{1e-14};
  const auto a = csym(D, b, opts).trace.relative();
  const auto g = rgmres(DDComplex{0.0}, D, b, opts).trace.relative();
  ASSERT_EQ(a.size(), g.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    EXPECT_NEAR(a[j], g[j], 1e-10) << "j=" << j;
  }
}

TEST(Examples, DoublePrecisionAgreesUntilPrecisionRunsOut) {
  // In double the two solvers part ways once the relative residual falls
  // below about 1e-5; the spiral Krylov spaces are that sensitive.
  ExperimentSpec spec;
  spec.rule = AngleRule::sweep;
  spec.phi = 1.0;
  const auto d = experiment_diagonal<double>(spec);
  CMatrix<double> D(100, 100);
  for (std::size_t i = 0; i < 100; ++i) {
    D(i, i) = d[i];
  }
  const CVector<double> b(100, 1.0);
  const auto a = csym(D, b).trace.relative();
  const auto g = rgmres(cd{0.0}, D, b).trace.relative();
  for (std::size_t j = 0; j < std::min(a.size(), g.size()) && a[j] > 1e-4; ++j) {
    EXPECT_NEAR(a[j], g[j], 1e-10) << "j=" << j;
  }
}

TEST(Examples, ExampleOneCleanAndRoundtrip) {
  ExampleOptions opts;
  opts.precision = Precision::double_double;
  const auto res = run_example(1, opts);
  ASSERT_EQ(res.traces.size(), 2u);
  const auto clean = res.traces[0].trace.relative();
  const auto round = res.traces[1].trace.relative();
  EXPECT_EQ(res.traces[0].label, "clean");
  EXPECT_EQ(res.traces[1].label, "roundtrip");
  const std::size_t m = std::min(clean.size(), round.size());
  for (std::size_t j = 0; j < std::min<std::size_t>(6, m); ++j) {
    EXPECT_NEAR(round[j], clean[j], 1e-12 * clean[j]) << "j=" << j;
  }
  for (std::size_t j = 6; j < m; ++j) {
    EXPECT_GE(round[j], clean[j] * (1.0 - 1e-12)) << "j=" << j;
  }
  for (std::size_t j = 1; j < clean.size(); ++j) {
    EXPECT_LT(clean[j], clean[j - 1]);
  }
}

TEST(Examples, PerturbedExamplesUseFourCounts) {
  ExampleOptions opts;
  opts.n = 40;
  const auto ex3 = run_example(3, opts);
  const auto ex4 = run_example(4, opts);
  ASSERT_EQ(ex3.traces.size(), 4u);
  ASSERT_EQ(ex4.traces.size(), 4u);
  EXPECT_EQ(ex3.traces[0].label, "k=5");
  EXPECT_EQ(ex3.traces[3].label, "k=40");
  EXPECT_EQ(ex4.traces[1].label, "K=10");
}

TEST(Examples, DeterministicForAFixedSeed) {
  ExampleOptions opts;
  opts.n = 50;
  opts.seed = 9;
  const auto a = run_example(5, opts);
  const auto b = run_example(5, opts);
  ASSERT_EQ(a.traces.size(), 2u);
  EXPECT_EQ(a.traces[0].trace.residual_norms, b.traces[0].trace.residual_norms);
  EXPECT_EQ(a.traces[1].trace.residual_norms, b.traces[1].trace.residual_norms);
  opts.seed = 10;
  const auto c = run_example(5, opts);
  EXPECT_NE(a.traces[0].trace.residual_norms, c.traces[0].trace.residual_norms);
}

TEST(Metrics, IterationsToReach) {
  const std::vector<double> rel{1.0, 0.1, 1e-3, 1e-9};
  EXPECT_EQ(iterations_to_reach(rel, 1e-8), 3u);
  EXPECT_EQ(iterations_to_reach(rel, 0.5), 1u);
  EXPECT_FALSE(iterations_to_reach(rel, 1e-12).has_value());
}

TEST(Metrics, ParityProgress) {
  // odd steps divide by 100, even steps by 2
  std::vector<double> rel{1.0};
  for (int j = 1; j <= 10; ++j) {
    rel.push_back(rel.back() / (j % 2 == 1 ? 100.0 : 2.0));
  }
  const auto pp = parity_progress(rel, 0.0);
  EXPECT_NEAR(pp.odd_median, 2.0, 1e-12);
  EXPECT_NEAR(pp.even_median, std::log10(2.0), 1e-12);
  const auto head = parity_progress(rel, 0.0, 2);
  EXPECT_NEAR(head.odd_median, 2.0, 1e-12);
  EXPECT_NEAR(head.even_median, std::log10(2.0), 1e-12);
}

TEST(Metrics, LogLinearFit) {
  std::vector<double> rel;
  for (int j = 0; j < 30; ++j) {
    rel.push_back(std::pow(10.0, -0.5 * j));
  }
  EXPECT_NEAR(log_linear_r2(rel, 1e-300), 1.0, 1e-12);
  std::vector<double> bent;
  for (int j = 0; j < 30; ++j) {
    bent.push_back(j < 15 ? std::pow(10.0, -0.5 * j) : std::pow(10.0, -7.0));
  }
  EXPECT_LT(log_linear_r2(bent, 1e-300), 0.9);
}
