#include "hartree/functional.hpp"

#include <cmath>

namespace hartree {

StatePair::StatePair(Field u_, Field v_) : u(std::move(u_)), v(std::move(v_)) {
  require_same_grid(u, v);
}

StatePair operator*(double s, StatePair w) {
  w.u *= s;
  w.v *= s;
  return w;
}

double signed_power(double x, double p_minus_one) {
  if (x == 0.0)
    return 0.0;
  const double m = std::pow(std::abs(x), p_minus_one);
  return x > 0.0 ? m : -m;
}

namespace {

Field abs_power(const Field &f, double p) {
  Field out(f.spec());
  for (std::size_t i = 0; i < f.size(); ++i)
    out[i] = std::pow(std::abs(f[i]), p);
  return out;
}

} // namespace

//==============================================================================
Functional::Functional(const ProblemParams &params, const GridSpec &spec,
                       OriginRule rule)
    : params_(params), spec_(spec), riesz_(spec, params.alpha(), rule),
      spectral_(spec) {
  if (params.N() != spec.N())
    throw std::invalid_argument("Functional: params and grid disagree on N");
}

Field Functional::potential_u(const Field &u) const {
  return riesz_.apply(abs_power(u, params_.p()));
}

Field Functional::potential_v(const Field &v) const {
  return riesz_.apply(abs_power(v, params_.q()));
}

double Functional::e_norm_sq(const StatePair &w) const {
  return spectral_.gradient_norm_sq(w.u) + inner(w.u, w.u) +
         spectral_.gradient_norm_sq(w.v) + inner(w.v, w.v);
}

double Functional::interaction(const StatePair &w) const {
  return inner(potential_u(w.u), abs_power(w.v, params_.q()));
}

EnergyBreakdown Functional::breakdown(double e, double d) const {
  const double pq = params_.p() + params_.q();
  return {e, d, 0.5 * e - 2.0 * d / pq, e - 2.0 * d};
}

EnergyBreakdown Functional::energy(const StatePair &w) const {
  return breakdown(e_norm_sq(w), interaction(w));
}

double Functional::nehari_scale(double e, double d) const {
  const double pq = params_.p() + params_.q();
  if (!(pq > 2.0))
    throw std::invalid_argument("nehari_scale: needs p + q > 2");
  if (!(d > kInteractionFloor) || !(e > 0.0))
    throw DegeneratePair();
  return std::pow(e / (2.0 * d), 1.0 / (pq - 2.0));
}

double Functional::nehari_scale(const StatePair &w) const {
  return nehari_scale(e_norm_sq(w), interaction(w));
}

StatePair Functional::project(const StatePair &w) const {
  return nehari_scale(w) * w;
}

double Functional::projected_energy(double e, double d) const {
  const double pq = params_.p() + params_.q();
  if (!(d > kInteractionFloor))
    throw DegeneratePair();
  return params_.nehari_level_factor() *
         std::pow(e / std::pow(2.0 * d, 2.0 / pq), pq / (pq - 2.0));
}

Residual Functional::euler_residual(const StatePair &w) const {
  return euler_residual(w, potential_u(w.u), potential_v(w.v), e_norm_sq(w));
}

Residual Functional::euler_residual(const StatePair &w, const Field &pot_u,
                                    const Field &pot_v, double e) const {
  const double p = params_.p();
  const double q = params_.q();
  const double cu = 2.0 * p / (p + q);
  const double cv = 2.0 * q / (p + q);

  Field ru = spectral_.helmholtz(w.u);
  Field rv = spectral_.helmholtz(w.v);
  for (std::size_t i = 0; i < ru.size(); ++i) {
    ru[i] -= cu * pot_v[i] * signed_power(w.u[i], p - 1.0);
    rv[i] -= cv * pot_u[i] * signed_power(w.v[i], q - 1.0);
  }
  const double r2 = inner(ru, ru) + inner(rv, rv);
  const double rel = e > 0.0 ? std::sqrt(r2 / e) : 0.0;
  return {StatePair(std::move(ru), std::move(rv)), rel};
}

} // namespace hartree
