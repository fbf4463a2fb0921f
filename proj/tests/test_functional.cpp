#include "hartree/functional.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace hartree;
using hartree::test::max_abs;

namespace {

StatePair random_pair(const GridSpec &s, std::mt19937_64 &gen, bool signed_amplitudes = false) {
  return StatePair(test::random_bumps(s, gen, signed_amplitudes),
                   test::random_bumps(s, gen, signed_amplitudes));
}

} // namespace

TEST(Functional, RejectsMismatchedDimension) {
  EXPECT_THROW(Functional(ProblemParams(3, 2.0, 2.0, 2.0), GridSpec(2, 4.0, 16)),
               std::invalid_argument);
  EXPECT_THROW(StatePair(Field(GridSpec(1, 1.0, 16)), Field(GridSpec(1, 1.0, 32))),
               std::invalid_argument);
}

TEST(Functional, InteractionZeroAndHomogeneous) {
  std::mt19937_64 gen(21);
  const GridSpec s(3, 5.0, 32);
  const Functional F(ProblemParams(3, 2.0, 2.5, 1.8), s);
  const auto w = random_pair(s, gen);
  EXPECT_EQ(F.interaction(StatePair(Field(s), w.v)), 0.0);
  EXPECT_EQ(F.interaction(StatePair(w.u, Field(s))), 0.0);
  const double d = F.interaction(w);
  EXPECT_GT(d, 0.0);
  const double t = 1.7;
  EXPECT_NEAR(F.interaction(t * w) / d, std::pow(t, 2.5 + 1.8), 1e-12 * std::pow(t, 4.3));
  EXPECT_NEAR(F.e_norm_sq(t * w) / F.e_norm_sq(w), t * t, 1e-12);
}

TEST(Functional, InteractionMatchesDirectSum) {
  std::mt19937_64 gen(22);
  const GridSpec s(2, 4.0, 64);
  const ProblemParams pp(2, 0.8, 1.7, 2.6);
  const Functional F(pp, s);
  const auto w = random_pair(s, gen);
  Field up(s), vq(s);
  for (std::size_t i = 0; i < s.size(); ++i) {
    up[i] = std::pow(w.u[i], pp.p());
    vq[i] = std::pow(w.v[i], pp.q());
  }
  const double d = inner(riesz_direct(up, pp.alpha()), vq);
  EXPECT_NEAR(F.interaction(w), d, 1e-10 * d);
}

TEST(Functional, EnergyIdentities) {
  std::mt19937_64 gen(23);
  const GridSpec s(1, 8.0, 128);
  const ProblemParams pp(1, 0.5, 3.0, 2.2);
  const Functional F(pp, s);
  const auto w = random_pair(s, gen, true);
  const auto b = F.energy(w);
  const double e = h1_norm_sq(w.u) + h1_norm_sq(w.v);
  EXPECT_NEAR(b.e_norm_sq, e, 1e-12 * e);
  EXPECT_NEAR(b.energy_I, 0.5 * b.e_norm_sq - 2.0 * b.d_interaction / 5.2, 1e-12 * e);
  EXPECT_NEAR(b.nehari_P, b.e_norm_sq - 2.0 * b.d_interaction, 1e-12 * e);
  // The nonlocal term only sees |u| and |v|.
  const auto ba = F.energy(StatePair(abs(w.u), abs(w.v)));
  EXPECT_NEAR(ba.d_interaction, b.d_interaction, 1e-13 * b.d_interaction);
  const auto bn = F.energy(StatePair(-1.0 * w.u, w.v));
  EXPECT_EQ(bn.d_interaction, b.d_interaction);
  EXPECT_NEAR(bn.energy_I, b.energy_I, 1e-13 * std::abs(b.energy_I));
}

TEST(Nehari, ScaleProperties) {
  std::mt19937_64 gen(24);
  const GridSpec s(3, 5.0, 32);
  const ProblemParams pp(3, 2.0, 2.0, 2.0);
  const Functional F(pp, s);
  const auto w = random_pair(s, gen);
  const double t = F.nehari_scale(w);
  const auto pw = F.project(w);
  const auto b = F.energy(pw);
  EXPECT_NEAR(b.nehari_P, 0.0, 1e-12 * b.e_norm_sq);
  EXPECT_NEAR(F.nehari_scale(pw), 1.0, 1e-12);
  // Projection is invariant under scaling the input.
  EXPECT_NEAR(F.nehari_scale(3.0 * w) * 3.0, t, 1e-12 * t);
  // On the Nehari set the energy is (1/2 - 1/(p+q)) e.
  EXPECT_NEAR(b.energy_I, pp.nehari_level_factor() * b.e_norm_sq, 1e-12 * b.e_norm_sq);
  const auto raw = F.energy(w);
  EXPECT_NEAR(F.projected_energy(raw.e_norm_sq, raw.d_interaction), b.energy_I,
              1e-12 * b.energy_I);
}

TEST(Nehari, ScaleMatchesRootSolve) {
  std::mt19937_64 gen(25);
  const GridSpec s(2, 5.0, 32);
  const ProblemParams pp(2, 1.0, 1.6, 2.9);
  const Functional F(pp, s);
  const auto w = random_pair(s, gen);
  // Bisection on P(t w) using fresh energy evaluations.
  double lo = 1e-3, hi = 1e3;
  ASSERT_GT(F.energy(lo * w).nehari_P, 0.0);
  ASSERT_LT(F.energy(hi * w).nehari_P, 0.0);
  for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
    const double mid = std::sqrt(lo * hi);
    (F.energy(mid * w).nehari_P > 0.0 ? lo : hi) = mid;
  }
  EXPECT_NEAR(F.nehari_scale(w), 0.5 * (lo + hi), 1e-9 * hi);
}

TEST(Nehari, FiberMaximumAndSignPattern) {
  std::mt19937_64 gen(26);
  const GridSpec s(1, 8.0, 128);
  const Functional F(ProblemParams(1, 0.5, 2.5, 3.5), s);
  const auto w = random_pair(s, gen);
  const double tbar = F.nehari_scale(w);
  const double ibar = F.energy(tbar * w).energy_I;
  for (int k = 1; k <= 60; ++k) {
    const double t = tbar * k / 30.0;
    const auto b = F.energy(t * w);
    EXPECT_LE(b.energy_I, ibar * (1.0 + 1e-13));
    if (k < 30) {
      EXPECT_GT(b.nehari_P, 0.0) << k;
    }
    if (k > 30) {
      EXPECT_LT(b.nehari_P, 0.0) << k;
    }
  }
}

TEST(Nehari, DegeneratePairThrows) {
  const GridSpec s(1, 4.0, 16);
  const Functional F(ProblemParams(1, 0.5, 2.0, 2.0), s);
  const Field one = Field::constant(s, 1.0);
  EXPECT_THROW(F.nehari_scale(StatePair(Field(s), one)), DegeneratePair);
  EXPECT_THROW(F.projected_energy(1.0, 0.0), DegeneratePair);
}

TEST(Residual, MatchesFiniteDifference) {
  std::mt19937_64 gen(27);
  const GridSpec s(2, 5.0, 32);
  const ProblemParams pp(2, 1.2, 2.4, 1.9);
  const Functional F(pp, s);
  const auto w = random_pair(s, gen, true);
  const auto r = F.euler_residual(w);
  const auto phi = test::random_bumps(s, gen, true);
  const double eps = 1e-5;
  for (int comp = 0; comp < 2; ++comp) {
    auto plus = w, minus = w;
    (comp == 0 ? plus.u : plus.v) += eps * phi;
    (comp == 0 ? minus.u : minus.v) -= eps * phi;
    const double fd = (F.energy(plus).energy_I - F.energy(minus).energy_I) / (2 * eps);
    const double an = inner(comp == 0 ? r.fields.u : r.fields.v, phi);
    EXPECT_NEAR(fd, an, 1e-5 * (std::abs(an) + 1.0)) << comp;
  }
  const double e = F.e_norm_sq(w);
  EXPECT_NEAR(r.relative_norm,
              std::sqrt((inner(r.fields.u, r.fields.u) + inner(r.fields.v, r.fields.v)) / e),
              1e-14);
  EXPECT_EQ(F.euler_residual(StatePair(Field(s), Field(s))).relative_norm, 0.0);
}

TEST(Residual, SignedPower) {
  EXPECT_EQ(signed_power(0.0, 0.5), 0.0);
  EXPECT_DOUBLE_EQ(signed_power(-4.0, 0.5), -2.0);
  EXPECT_DOUBLE_EQ(signed_power(9.0, 0.5), 3.0);
}
