#pragma once

#include "hartree/grid.hpp"
#include "hartree/params.hpp"
#include "hartree/riesz.hpp"

#include <stdexcept>

namespace hartree {

// The unknown pair (u, v); both components share one grid.
struct StatePair {
  StatePair(Field u_, Field v_);
  Field u;
  Field v;

  const GridSpec &spec() const noexcept { return u.spec(); }
};

StatePair operator*(double s, StatePair w);

struct EnergyBreakdown {
  double e_norm_sq = 0.0;     // ||(u,v)||_E^2
  double d_interaction = 0.0; // D = int (I_a * |u|^p) |v|^q
  double energy_I = 0.0;      // e/2 - 2D/(p+q)
  double nehari_P = 0.0;      // e - 2D
};

struct Residual {
  StatePair fields;
  // ||(R_u, R_v)||_2 / ||(u, v)||_E, 0 for the zero pair.
  double relative_norm;
};

// Raised by nehari_scale when D is at the quadrature floor.
class DegeneratePair : public std::runtime_error {
public:
  DegeneratePair() : std::runtime_error("degenerate pair: interaction vanishes") {}
};

// Interaction integrals below this are treated as zero.
inline constexpr double kInteractionFloor = 1e-300;

// |x|^{p-2} x with the value 0 at x = 0.
double signed_power(double x, double p_minus_one);

//==============================================================================
// Energy functional of the system on one grid. Owns the Riesz plan and the
// spectral operator; every method is const and reentrant.
class Functional {
public:
  Functional(const ProblemParams &params, const GridSpec &spec,
             OriginRule rule = OriginRule::LatticeCorrected);

  const ProblemParams &params() const noexcept { return params_; }
  const GridSpec &spec() const noexcept { return spec_; }
  const RieszPlan &riesz() const noexcept { return riesz_; }
  const SpectralOperator &spectral() const noexcept { return spectral_; }

  // I_a * |u|^p and I_a * |v|^q.
  Field potential_u(const Field &u) const;
  Field potential_v(const Field &v) const;

  double e_norm_sq(const StatePair &w) const;
  double interaction(const StatePair &w) const;
  EnergyBreakdown energy(const StatePair &w) const;
  // Assemble the breakdown from its two ingredients.
  EnergyBreakdown breakdown(double e_norm_sq, double d_interaction) const;

  // Unique t > 0 with P(t w) = 0: t = [e / (2D)]^{1/(p+q-2)}.
  double nehari_scale(const StatePair &w) const;
  double nehari_scale(double e_norm_sq, double d_interaction) const;
  StatePair project(const StatePair &w) const;
  // Energy of the projected pair from the unprojected ingredients:
  // (1/2 - 1/(p+q)) [e / (2D)^{2/(p+q)}]^{(p+q)/(p+q-2)}.
  double projected_energy(double e_norm_sq, double d_interaction) const;

  // Strong form of the L^2 gradient of I:
  //   R_u = (-Lap + 1) u - 2p/(p+q) (I_a * |v|^q) |u|^{p-2} u
  //   R_v = (-Lap + 1) v - 2q/(p+q) (I_a * |u|^p) |v|^{q-2} v
  Residual euler_residual(const StatePair &w) const;
  // Same, reusing precomputed potentials and E-norm.
  Residual euler_residual(const StatePair &w, const Field &pot_u,
                          const Field &pot_v, double e_norm_sq) const;

private:
  ProblemParams params_;
  GridSpec spec_;
  RieszPlan riesz_;
  SpectralOperator spectral_;
};

} // namespace hartree
