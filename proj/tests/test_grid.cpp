#include "hartree/grid.hpp"
#include "hartree/params.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace hartree;
using hartree::test::max_abs_diff;

TEST(GridSpec, Validation) {
  EXPECT_THROW(GridSpec(0, 1.0, 16), std::invalid_argument);
  EXPECT_THROW(GridSpec(4, 1.0, 16), std::invalid_argument);
  EXPECT_THROW(GridSpec(1, 0.0, 16), std::invalid_argument);
  EXPECT_THROW(GridSpec(1, 1.0, 8), std::invalid_argument);
  EXPECT_THROW(GridSpec(1, 1.0, 48), std::invalid_argument);
  EXPECT_NO_THROW(GridSpec(3, 1.0, 16));
}

TEST(GridSpec, CoordinatesAndIndexing) {
  const GridSpec s(2, 8.0, 32);
  EXPECT_DOUBLE_EQ(s.h(), 0.5);
  EXPECT_DOUBLE_EQ(s.cell_volume(), 0.25);
  EXPECT_EQ(s.size(), 1024u);
  EXPECT_DOUBLE_EQ(s.coordinate(0), -8.0);
  EXPECT_DOUBLE_EQ(s.coordinate(16), 0.0);
  const auto c = s.center();
  EXPECT_EQ(c[0], 16u);
  EXPECT_EQ(c[1], 16u);
  for (std::size_t i = 0; i < s.size(); i += 37)
    EXPECT_EQ(s.ravel(s.unravel(i)), i);
  // Axis 0 is slowest.
  EXPECT_EQ(s.ravel({1, 0, 0}), 32u);
  EXPECT_EQ(s.ravel({0, 1, 0}), 1u);
}

TEST(Integrate, Constants) {
  const GridSpec s(1, 8.0, 64);
  EXPECT_DOUBLE_EQ(integrate(Field::constant(s, 1.0)), 16.0);
  EXPECT_EQ(integrate(Field(s)), 0.0);
  EXPECT_DOUBLE_EQ(integrate(Field::constant(GridSpec(3, 2.0, 16), 0.5)), 32.0);
}

TEST(Integrate, GaussianSpectralAccuracy) {
  const GridSpec s(1, 12.0, 256);
  const auto f = Field::sample(s, [](const Point &x) { return std::exp(-x[0] * x[0]); });
  // erf(12) = 1 to double precision, so the closed form is sqrt(pi).
  EXPECT_NEAR(integrate(f), std::sqrt(std::numbers::pi) * std::erf(12.0), 1e-10);
}

TEST(Norms, LpHomogeneousAndInfinity) {
  std::mt19937_64 gen(3);
  const GridSpec s(2, 6.0, 32);
  const auto f = test::random_bumps(s, gen, true);
  for (double r : {1.0, 2.0, 3.7}) {
    const double a = lp_norm(f, r);
    EXPECT_NEAR(lp_norm(-2.5 * f, r) / (2.5 * a), 1.0, 1e-13);
  }
  EXPECT_NEAR(lp_norm(f, kInfinity), test::max_abs(f), 0.0);
  EXPECT_THROW(lp_norm(f, 0.5), std::invalid_argument);
  EXPECT_NEAR(lp_norm(Field::constant(s, 2.0), 2.0), 2.0 * 12.0, 1e-12);
}

TEST(Norms, IntegrateIsLinear) {
  std::mt19937_64 gen(4);
  const GridSpec s(3, 4.0, 16);
  const auto f = test::random_bumps(s, gen, true);
  const auto g = test::random_bumps(s, gen, true);
  const double lhs = integrate(2.0 * f + (-3.0) * g);
  const double rhs = 2.0 * integrate(f) - 3.0 * integrate(g);
  EXPECT_NEAR(lhs, rhs, 1e-12 * (std::abs(rhs) + 1.0));
}

TEST(Spectral, H1OfConstant) {
  const GridSpec s(2, 3.0, 16);
  EXPECT_NEAR(h1_norm_sq(Field::constant(s, 1.5)), 1.5 * 1.5 * 36.0, 1e-12);
}

TEST(Spectral, SineGradientClosedForm) {
  const double L = 5.0;
  const GridSpec s(1, L, 64);
  const double k = std::numbers::pi / L;
  const auto f = Field::sample(s, [&](const Point &x) { return std::sin(k * x[0]); });
  EXPECT_NEAR(gradient_norm_sq(f), k * k * L, 1e-10);
}

TEST(Spectral, H1Consistency) {
  std::mt19937_64 gen(5);
  const GridSpec s(3, 5.0, 16);
  const auto f = test::random_bumps(s, gen, true);
  const double l2 = lp_norm(f, 2.0);
  EXPECT_NEAR(l2 * l2 + gradient_norm_sq(f), h1_norm_sq(f), 1e-12 * h1_norm_sq(f));
}

TEST(Spectral, TrigPolynomialDerivativesExact) {
  const double L = 3.0;
  const GridSpec s(3, L, 16);
  const double k = std::numbers::pi / L;
  const auto f = Field::sample(s, [&](const Point &x) {
    return std::sin(k * x[0]) * std::cos(2 * k * x[1]) + 0.5 * std::cos(3 * k * x[2]);
  });
  const auto expected = Field::sample(s, [&](const Point &x) {
    return -(k * k + 4 * k * k) * std::sin(k * x[0]) * std::cos(2 * k * x[1]) -
           0.5 * 9 * k * k * std::cos(3 * k * x[2]);
  });
  const auto lap = laplacian(f);
  EXPECT_LE(max_abs_diff(lap, expected), 1e-12 * test::max_abs(expected));

  const SpectralOperator op(s);
  const auto back = op.inverse_helmholtz(op.helmholtz(f));
  EXPECT_LE(max_abs_diff(back, f), 1e-13);
  // <f, -Lap f> equals the gradient norm, Nyquist included.
  EXPECT_NEAR(-inner(f, lap), op.gradient_norm_sq(f), 1e-12 * op.gradient_norm_sq(f));
}

TEST(Spectral, NyquistModeConsistency) {
  const GridSpec s(1, 1.0, 16);
  // cos(pi M x / (2L)) alternates sign node to node.
  Field f(s);
  for (std::size_t i = 0; i < s.size(); ++i)
    f[i] = (i % 2) ? -1.0 : 1.0;
  EXPECT_NEAR(-inner(f, laplacian(f)), gradient_norm_sq(f), 1e-10);
}

TEST(Spectral, RejectsForeignGrid) {
  const SpectralOperator op(GridSpec(1, 1.0, 16));
  EXPECT_THROW(op.laplacian(Field(GridSpec(1, 1.0, 32))), std::invalid_argument);
}

TEST(Resample, BandLimitedExact) {
  const double L = 4.0;
  const double k = std::numbers::pi / L;
  auto fn = [&](const Point &x) { return std::cos(k * x[0]) + std::sin(3 * k * x[1]); };
  const GridSpec coarse(2, L, 16), fine(2, L, 64);
  const auto up = fourier_resample(Field::sample(coarse, fn), fine);
  EXPECT_LE(max_abs_diff(up, Field::sample(fine, fn)), 1e-13);
  const auto down = fourier_resample(up, coarse);
  EXPECT_LE(max_abs_diff(down, Field::sample(coarse, fn)), 1e-13);
  EXPECT_THROW(fourier_resample(up, GridSpec(2, 2 * L, 16)), std::invalid_argument);
}

TEST(Roll, PeriodicShift) {
  const GridSpec s(2, 1.0, 16);
  Field f(s);
  f[s.ravel({2, 3, 0})] = 1.0;
  const auto g = roll(f, {1, -4, 0});
  EXPECT_EQ(g[s.ravel({3, 15, 0})], 1.0);
  EXPECT_EQ(integrate(g), integrate(f));
}

TEST(Translate, MatchesRollOnWholeCells) {
  const GridSpec s(2, 2.0, 16);
  const auto f = Field::sample(s, [](const Point &x) {
    return std::exp(-x[0] * x[0] - 2.0 * x[1] * x[1]) + 0.1 * x[0];
  });
  const auto g = translate(f, {3 * s.h(), -2 * s.h(), 0.0});
  const auto r = roll(f, {3, -2, 0});
  for (std::size_t i = 0; i < s.size(); ++i)
    EXPECT_NEAR(g[i], r[i], 1e-12);
}

TEST(Translate, ExactForTrigPolynomial3D) {
  const GridSpec s(3, 1.5, 16);
  const double k = M_PI / s.L();
  const Point d{0.37, -0.11, 0.52};
  auto poly = [&](const Point &x) {
    return std::cos(k * x[0]) * std::sin(2 * k * x[1]) + std::cos(3 * k * x[2] + 0.4);
  };
  const auto g = translate(Field::sample(s, poly), d);
  const auto want = Field::sample(s, [&](const Point &x) {
    return poly({x[0] - d[0], x[1] - d[1], x[2] - d[2]});
  });
  for (std::size_t i = 0; i < s.size(); ++i)
    EXPECT_NEAR(g[i], want[i], 1e-12);
}

TEST(Translate, ZeroShiftIsIdentityIncludingNyquist) {
  const GridSpec s(1, 1.0, 16);
  Field f(s);
  for (std::size_t i = 0; i < s.size(); ++i)
    f[i] = (i % 2 ? 1.0 : -1.0) + 0.25 * static_cast<double>(i);
  const auto g = translate(f, {0.0, 0.0, 0.0});
  for (std::size_t i = 0; i < s.size(); ++i)
    EXPECT_NEAR(g[i], f[i], 1e-13);
}

TEST(FieldOps, ArithmeticAndChecks) {
  const GridSpec s(1, 1.0, 16);
  Field a = Field::constant(s, 2.0);
  Field b = Field::constant(s, -3.0);
  EXPECT_EQ((a + b)[0], -1.0);
  EXPECT_EQ((a - b)[5], 5.0);
  EXPECT_EQ(abs(b)[3], 3.0);
  EXPECT_THROW(a += Field(GridSpec(1, 1.0, 32)), std::invalid_argument);
  EXPECT_THROW(Field(s, std::vector<double>(3)), std::invalid_argument);
  b[7] = -10.0;
  EXPECT_EQ(b.argmax_abs(), 7u);
  EXPECT_TRUE(b.all_finite());
  b[1] = std::nan("");
  EXPECT_FALSE(b.all_finite());
}

TEST(RadialProfile, ConstantField) {
  const GridSpec s(2, 4.0, 32);
  const auto prof = radial_profile(Field::constant(s, 1.0), s.center());
  for (double m : prof.mean)
    EXPECT_DOUBLE_EQ(m, 1.0);
  for (std::size_t j = 1; j < prof.bins(); ++j)
    EXPECT_GT(prof.radius[j], prof.radius[j - 1]);
}

TEST(RadialProfile, CountsNodesWithinL) {
  for (int N = 1; N <= 3; ++N) {
    const GridSpec s(N, 3.0, 16);
    const std::array<std::size_t, 3> c{3, 9, 14};
    std::array<std::size_t, 3> center{0, 0, 0};
    for (int d = 0; d < N; ++d)
      center[static_cast<std::size_t>(d)] = c[static_cast<std::size_t>(d)];
    const auto prof = radial_profile(Field::constant(s, 1.0), center);
    std::size_t total = 0;
    for (auto n : prof.count) {
      EXPECT_GE(n, 1u);
      total += n;
    }
    std::size_t expected = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const auto idx = s.unravel(i);
      double r2 = 0.0;
      for (int d = 0; d < N; ++d) {
        const auto a = static_cast<std::size_t>(d);
        const double o = static_cast<double>(min_image_offset(idx[a], center[a], s.M()));
        r2 += o * o * s.h() * s.h();
      }
      expected += std::sqrt(r2) <= s.L() ? 1 : 0;
    }
    EXPECT_EQ(total, expected) << N;
  }
}

TEST(RadialProfile, GaussianBinsNearlyUniform) {
  for (std::size_t M : {32u, 64u}) {
    const GridSpec s(3, 4.0, M);
    const auto prof = radial_profile(test::centered_gaussian(s, 1.5), s.center());
    double worst = 0.0;
    for (std::size_t j = 0; j < prof.bins(); ++j) {
      const double ratio = prof.max_abs[j] / prof.mean[j];
      EXPECT_GE(ratio, 1.0);
      if (prof.radius[j] < 2.0)
        worst = std::max(worst, ratio - 1.0);
    }
    EXPECT_LT(worst, M == 32 ? 0.5 : 0.25) << M;
  }
}

TEST(RadialProfile, ShiftedGaussianMonotone) {
  const GridSpec s(2, 6.0, 64);
  const auto f = Field::sample(s, [](const Point &x) {
    return std::exp(-((x[0] - 1.25) * (x[0] - 1.25) + (x[1] + 0.5) * (x[1] + 0.5)) / 4.0);
  });
  const auto prof = radial_profile(f, s.unravel(f.argmax_abs()));
  // Beyond L - |shift| the minimum image wraps around the periodic cube.
  for (std::size_t j = 1; j < prof.bins() && prof.radius[j] < 4.5; ++j)
    EXPECT_LT(prof.mean[j], prof.mean[j - 1]) << j;
}
