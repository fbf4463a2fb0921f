#include "hartree/diagnostics.hpp"
#include "hartree/solver.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace hartree;

namespace {

// f(r) sampled about the grid center, with f(0) replaced by value0.
Field radial(const GridSpec &s, double value0, const std::function<double(double)> &fn) {
  return Field::sample(s, [&](const Point &x) {
    const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    return r == 0.0 ? value0 : fn(r);
  });
}

} // namespace

TEST(Pohozaev, SmallOnSolutionLargeOnRandomPair) {
  SolveConfig cfg(ProblemParams(1, 0.5, 2.0, 3.0), GridSpec(1, 16.0, 512));
  cfg.tol_residual = 1e-10;
  const auto [w, rep] = solve(cfg);
  ASSERT_TRUE(rep.converged);
  EXPECT_LT(pohozaev_residual(w, cfg.params), 1e-5);

  std::mt19937_64 gen(41);
  const StatePair r(test::random_bumps(cfg.spec, gen), test::random_bumps(cfg.spec, gen));
  const Functional F(cfg.params, cfg.spec);
  const double res = pohozaev_residual(F, r);
  EXPECT_GT(res, 1e-2);
  EXPECT_LE(res, 1.0);
  EXPECT_DOUBLE_EQ(pohozaev_residual(F, StatePair(-1.0 * r.u, r.v)), res);
  EXPECT_EQ(pohozaev_residual(F, StatePair(Field(cfg.spec), Field(cfg.spec))), 0.0);
}

TEST(Symmetry, RadialFieldsScoreZero) {
  for (int N = 1; N <= 3; ++N) {
    const GridSpec s(N, 5.0, 32);
    const auto f = test::centered_gaussian(s, 1.4);
    EXPECT_LE(symmetry_deviation(f), 1e-12) << N;
    // Any periodic translate is radial about its new peak.
    EXPECT_LE(symmetry_deviation(roll(f, {3, -5, 7})), 1e-12) << N;
  }
}

TEST(Symmetry, GrowsWithOddPerturbation) {
  const GridSpec s(2, 5.0, 64);
  const auto g = test::centered_gaussian(s, 1.4);
  const auto odd = Field::sample(s, [](const Point &x) {
    return x[0] * std::exp(-(x[0] * x[0] + x[1] * x[1]));
  });
  double prev = symmetry_deviation(g);
  // Small enough that the peak stays on the center node.
  for (double eps : {0.01, 0.03, 0.1}) {
    const double d = symmetry_deviation(g + eps * odd);
    EXPECT_GT(d, prev) << eps;
    prev = d;
  }
  EXPECT_THROW(symmetry_deviation(Field(s)), DiagnosticError);
}

TEST(DecayFit, Windows) {
  const GridSpec s(3, 20.0, 64);
  const auto d = default_window(s);
  EXPECT_DOUBLE_EQ(d.r_lo, 7.0);
  EXPECT_DOUBLE_EQ(d.r_hi, 14.0);
  const auto st = staggered_windows(s);
  ASSERT_EQ(st.size(), 3u);
  EXPECT_DOUBLE_EQ(st[0].r_lo, 6.0);
  EXPECT_DOUBLE_EQ(st[2].r_hi, 16.0);
}

TEST(DecayFit, SyntheticExponential) {
  // N = 3, p = q = 3: both components decay like e^{-r} / r.
  const ProblemParams pp(3, 2.0, 3.0, 3.0);
  const GridSpec s(3, 32.0, 128);
  const auto f = radial(s, 5.0, [](double r) { return std::exp(-r) / r; });
  const auto fit = fit_decay_component(StatePair(f, f), pp, default_window(s), 'u');
  EXPECT_EQ(fit.kind, DecayKind::Exponential);
  EXPECT_GE(fit.bins, kMinFitBins);
  EXPECT_NEAR(fit.fitted, -1.0, 1e-3);
  EXPECT_DOUBLE_EQ(fit.predicted, -1.0);
  EXPECT_GT(fit.r_squared, 0.999999);
  EXPECT_NEAR(fit.limit_estimate, 1.0, 2e-2);
  EXPECT_TRUE(std::isnan(fit.limit_predicted));
}

TEST(DecayFit, SyntheticAlgebraic) {
  // N = 3, a = 2, p = 3/2: u ~ r^{-(N-a)/(2-p)} = r^{-2}.
  const ProblemParams pp(3, 2.0, 1.5, 2.5);
  const GridSpec s(3, 32.0, 128);
  const auto u = radial(s, 5.0, [](double r) { return 3.0 / (r * r); });
  const auto v = radial(s, 5.0, [](double r) { return std::exp(-r); });
  const auto fit = fit_decay_component(StatePair(u, v), pp, default_window(s), 'u');
  EXPECT_EQ(fit.kind, DecayKind::Algebraic);
  EXPECT_NEAR(fit.predicted, -2.0, 1e-15);
  // Bin means of r^{-2} carry an O(h^2 / r^2) bias.
  EXPECT_NEAR(fit.fitted, -2.0, 2e-3);
  // u^{2-p} r^{N-a} = sqrt(3) r^{-1} r = sqrt(3).
  EXPECT_NEAR(fit.limit_estimate, std::sqrt(3.0), 1e-3);
  const auto dc = decay_case(pp);
  double vq = 0.0;
  for (double x : v.values())
    vq += std::pow(x, 2.5);
  EXPECT_NEAR(fit.limit_predicted, dc.u.limit_coefficient * vq * s.cell_volume(), 1e-12 * vq);
  EXPECT_TRUE(fit.theory_applicable);
}

TEST(DecayFit, FlagsOutsideExtraConditions) {
  // min{p, q} = 1.4 is below the mixed-case threshold 1.5.
  const ProblemParams pp(3, 2.0, 1.4, 2.0);
  const GridSpec s(3, 32.0, 128);
  const auto u = radial(s, 5.0, [](double r) { return std::pow(r, -1.0 / 0.6); });
  const auto fit = fit_decay_component(StatePair(u, u), pp, default_window(s), 'u');
  EXPECT_FALSE(fit.theory_applicable);
}

TEST(DecayFit, Errors) {
  const ProblemParams pp(3, 2.0, 3.0, 3.0);
  const GridSpec s(3, 8.0, 16);
  const auto f = radial(s, 5.0, [](double r) { return std::exp(-r); });
  const StatePair w(f, f);
  EXPECT_THROW(fit_decay_component(w, pp, {0.0, 4.0}, 'u'), DiagnosticError);
  EXPECT_THROW(fit_decay_component(w, pp, {4.0, 3.0}, 'u'), DiagnosticError);
  EXPECT_THROW(fit_decay_component(w, pp, {1.0, 9.0}, 'u'), DiagnosticError);
  // h = 1: [2.8, 5.6] holds fewer than ten bins.
  EXPECT_THROW(fit_decay_component(w, pp, default_window(s), 'u'), DiagnosticError);
  EXPECT_THROW(fit_decay_component(w, pp, default_window(s), 'x'), std::invalid_argument);
  const GridSpec big(3, 32.0, 128);
  const auto neg = radial(big, 5.0, [](double r) { return r > 12.0 ? -1e-3 : std::exp(-r); });
  EXPECT_THROW(fit_decay_component(StatePair(neg, neg), pp, default_window(big), 'u'),
               DiagnosticError);
}

TEST(DecayFit, CriticalIntegralClosedForm) {
  // exponent 1: sqrt(r(r-A)) - A ln(sqrt r + sqrt(r-A)) + A ln sqrt A.
  for (double A : {0.5, 1.0, 3.0})
    for (double r : {A * 1.001, A + 0.5, 2 * A, 10 * A, 40.0}) {
      const double exact = std::sqrt(r * (r - A)) -
                           A * std::log(std::sqrt(r) + std::sqrt(r - A)) +
                           A * std::log(std::sqrt(A));
      EXPECT_NEAR(critical_decay_integral(A, 1.0, r), exact, 1e-8 * (1 + exact)) << A << " " << r;
    }
  EXPECT_EQ(critical_decay_integral(2.0, 1.0, 1.0), 0.0);
  EXPECT_EQ(critical_decay_integral(0.0, 1.0, 5.0), 5.0);
}

TEST(DecayFit, SyntheticCritical) {
  // q = 2 for v: v r^{(N-1)/2} exp(int_A^r sqrt(1 - (A/s)^{N-a}) ds) is constant.
  const ProblemParams pp(1, 0.5, 2.5, 2.0);
  const GridSpec s(1, 64.0, 1024);
  const auto dc = decay_case(pp);
  ASSERT_EQ(dc.v.kind, DecayKind::Critical);
  const auto u = radial(s, 2.0, [](double r) { return std::exp(-2.0 * r); });
  double up = 0.0;
  for (double x : u.values())
    up += std::pow(x, 2.5);
  const double As = dc.v.limit_coefficient * up * s.cell_volume();
  const double A = std::pow(As, 1.0 / 0.5);
  const auto v = radial(s, 2.0, [&](double r) {
    return std::exp(-critical_decay_integral(A, 0.5, r));
  });
  const auto fit = fit_decay_component(StatePair(u, v), pp, default_window(s), 'v');
  EXPECT_EQ(fit.kind, DecayKind::Critical);
  EXPECT_NEAR(fit.fitted, 0.0, 1e-6);
  EXPECT_LT(fit.variation, 1e-6);
  EXPECT_NEAR(fit.limit_estimate, 1.0, 1e-6);
  EXPECT_NEAR(fit.limit_predicted, As, 1e-12 * As);
}

TEST(Hls, AuditIsDilationInvariant) {
  const ProblemParams pp(1, 0.5, 2.0, 2.0);
  const GridSpec s(1, 32.0, 2048);
  const Functional F(pp, s);
  const auto g = test::centered_gaussian(s, 2.0);
  const StatePair w(g, 2.0 * g);
  const auto a = hls_audit(F, w);
  const auto th = theta_interval(pp);
  EXPECT_DOUBLE_EQ(a.theta1, th.theta1);
  EXPECT_NEAR(1.0 / a.theta1 + 1.0 / a.theta2, 1.5, 1e-14);
  EXPECT_GT(a.pairing_ratio, 0.0);
  EXPECT_GT(a.potential_ratio, 0.0);
  const auto d = hls_dilation_audit(F, w);
  ASSERT_EQ(d.audits.size(), 3u);
  EXPECT_GE(d.pairing_spread, 1.0);
  EXPECT_LT(d.pairing_spread, 1.001);
  EXPECT_LT(d.potential_spread, 1.005);
  EXPECT_THROW(hls_audit(F, StatePair(g, Field(s))), DiagnosticError);
}

TEST(Hls, DilateInterpolates) {
  const GridSpec s(2, 8.0, 64);
  const auto g = test::centered_gaussian(s, 1.0);
  EXPECT_LE(test::max_abs_diff(dilate(g, 1.0), g), 1e-15);
  // Bilinear error bound h^2/8 (|f_xx| + |f_yy|) with |f''| <= 2.
  EXPECT_LE(test::max_abs_diff(dilate(g, 2.0), test::centered_gaussian(s, 2.0)),
            s.h() * s.h() / 8.0 * 4.0);
  EXPECT_THROW(dilate(g, 0.0), std::invalid_argument);
}
