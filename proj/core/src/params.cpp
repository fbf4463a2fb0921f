#include "hartree/params.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hartree {

namespace {

// a < b with the conservative slack: within kBoundaryTol counts as failure.
bool strictly_less(double a, double b) { return b - a > kBoundaryTol; }

} // namespace

ProblemParams::ProblemParams(int N, double alpha, double p, double q)
    : N_{N}, alpha_{alpha}, p_{p}, q_{q} {
  if (N < 1 || N > 3)
    throw std::invalid_argument("N must be 1, 2 or 3 (got " +
                                std::to_string(N) + ")");
  if (!std::isfinite(alpha) || !(alpha > 0.0) || !(alpha < N))
    throw std::invalid_argument("alpha must lie in (0, N)");
  if (!std::isfinite(p) || !(p > 1.0))
    throw std::invalid_argument("p must be finite and > 1");
  if (!std::isfinite(q) || !(q > 1.0))
    throw std::invalid_argument("q must be finite and > 1");
}

double ProblemParams::sobolev_exponent() const noexcept {
  return N_ >= 3 ? 2.0 * N_ / (N_ - 2.0) : kInfinity;
}

double ProblemParams::upper_critical_sum() const noexcept {
  return N_ >= 3 ? 2.0 * (N_ + alpha_) / (N_ - 2.0) : kInfinity;
}

double ProblemParams::lower_critical_sum() const noexcept {
  return 2.0 * (N_ + alpha_) / N_;
}

double riesz_constant(int N, double alpha) {
  // log-Gamma route keeps the ratio accurate when either argument is small.
  const double log_c = std::lgamma(0.5 * (N - alpha)) - std::lgamma(0.5 * alpha) -
                       0.5 * N * std::log(M_PI) - alpha * std::log(2.0);
  return std::exp(log_c);
}

//==============================================================================
H1Check check_h1(const ProblemParams &params) {
  const double N = params.N();
  const double box_lo = std::max(2.0 * params.alpha() / N, 1.0);
  const double box_hi = params.sobolev_exponent();
  const double sum = params.p() + params.q();

  H1Check c{};
  c.p_lower = params.p() - box_lo;
  c.p_upper = box_hi - params.p();
  c.q_lower = params.q() - box_lo;
  c.q_upper = box_hi - params.q();
  c.sum_lower = sum - params.lower_critical_sum();
  c.sum_upper = params.upper_critical_sum() - sum;
  c.holds = strictly_less(box_lo, params.p()) &&
            strictly_less(params.p(), box_hi) &&
            strictly_less(box_lo, params.q()) &&
            strictly_less(params.q(), box_hi) &&
            strictly_less(params.lower_critical_sum(), sum) &&
            strictly_less(sum, params.upper_critical_sum());
  return c;
}

ThetaInterval theta_interval(const ProblemParams &params) {
  const double N = params.N();
  const double a = params.alpha();
  const double p = params.p();
  const double q = params.q();
  const double total = (N + a) / N;

  ThetaInterval t{};
  t.lower = std::max({a / N, p * (N - 2.0) / (2.0 * N), total - 0.5 * q});
  t.upper = std::min({1.0, 0.5 * p, total - q * (N - 2.0) / (2.0 * N)});
  t.inv_theta1 = 0.5 * (t.lower + t.upper);
  t.theta1 = 1.0 / t.inv_theta1;
  t.theta2 = 1.0 / (total - t.inv_theta1);
  return t;
}

ExistenceClass classify_existence(const ProblemParams &params) {
  const auto h1 = check_h1(params);
  const double sum = params.p() + params.q();
  const int N = params.N();
  const double a = params.alpha();

  ExistenceClass e{};
  e.lower_line_margin = h1.sum_lower;
  e.upper_line_margin = h1.sum_upper;
  e.p_lower = h1.p_lower;
  e.p_upper = h1.p_upper;
  e.q_lower = h1.q_lower;
  e.q_upper = h1.q_upper;

  // (p+q)N <= 2(N+a) and (p+q)(N-2) >= 2(N+a), with the tolerance band
  // assigned to the nonexistence side.
  const bool on_or_below_lower = !strictly_less(2.0 * (N + a), sum * N);
  const bool on_or_above_upper =
      N >= 3 && !strictly_less(sum * (N - 2.0), 2.0 * (N + a));

  if (on_or_below_lower)
    e.tag = Existence::NonexistenceLowerLine;
  else if (on_or_above_upper)
    e.tag = Existence::NonexistenceUpperLine;
  else if (h1.holds)
    e.tag = Existence::ExistsH1;
  else
    e.tag = Existence::OutsideTheory;
  return e;
}

//==============================================================================
namespace {

// Exponent pair shared by region B (p small) and region C (second sub-case).
std::pair<double, double> small_p_exponents(double N, double a, double p,
                                            double q) {
  const double r = (2.0 - p) * N / (N - a);
  const double h = (2.0 - p) * q * N / ((2.0 * q + p - 2.0) * N - 2.0 * q * a);
  return {r, h};
}

std::pair<double, double> small_q_exponents(double N, double a, double p,
                                            double q) {
  const double r = (2.0 - q) * p * N / ((2.0 * p + q - 2.0) * N - 2.0 * p * a);
  const double h = (2.0 - q) * N / (N - a);
  return {r, h};
}

} // namespace

RegularityRegion classify_regularity(const ProblemParams &params) {
  if (!check_h1(params).holds)
    throw std::invalid_argument("classify_regularity requires (H1)");

  const double N = params.N();
  const double a = params.alpha();
  const double p = params.p();
  const double q = params.q();

  // The four regions are cut by q = (a/N)p + 1, q = (N/a)(p - 1) and the
  // square p, q < N/(N-a); both lines cross at (N/(N-a), N/(N-a)).
  const double corner = N / (N - a);
  const double lower_line = (a / N) * p + 1.0;
  const double upper_line = (N / a) * p - N / a;
  const double half = 2.0 * N / (2.0 * N - a);

  RegularityRegion out{};
  if (q >= lower_line && q <= upper_line) {
    out = {Region::A, 1, 1.0, 1.0};
  } else if (p < corner && q < corner) {
    out.region = Region::B;
    if (p < half) {
      out.sub_case = 2;
      std::tie(out.r_bar, out.h_bar) = small_p_exponents(N, a, p, q);
    } else if (q < half) {
      out.sub_case = 3;
      std::tie(out.r_bar, out.h_bar) = small_q_exponents(N, a, p, q);
    } else {
      out.sub_case = 1;
      out.r_bar = p * N / (p * (2.0 * N - a) - N);
      out.h_bar = q * N / (q * (2.0 * N - a) - N);
    }
  } else if (q >= corner && q > upper_line) {
    out.region = Region::C;
    if ((2.0 - p) / (N - a) <= p * q / (N + a * q)) {
      out.sub_case = 1;
      out.r_bar = p * q * N / ((p * q + p - 1.0) * N - q * a);
      out.h_bar = 1.0;
    } else {
      out.sub_case = 2;
      std::tie(out.r_bar, out.h_bar) = small_p_exponents(N, a, p, q);
    }
  } else {
    // q < (a/N)p + 1 and p >= N/(N-a)
    out.region = Region::D;
    if ((2.0 - q) / (N - a) < p * q / (N + a * p)) {
      out.sub_case = 1;
      out.r_bar = 1.0;
      out.h_bar = p * q * N / ((p * q + q - 1.0) * N - p * a);
    } else {
      out.sub_case = 2;
      std::tie(out.r_bar, out.h_bar) = small_q_exponents(N, a, p, q);
    }
  }
  return out;
}

//==============================================================================
double decay_threshold_mixed(int N, double alpha) {
  return std::max(2.0 * N / (2.0 * N - alpha), 2.0 * (alpha + 1.0) / (N + 1.0));
}

double decay_threshold_subquadratic(int N, double alpha) {
  return 2.0 * N / (2.0 * N - alpha);
}

namespace {

DecayKind kind_of(double exponent) {
  if (std::abs(exponent - 2.0) <= kBoundaryTol)
    return DecayKind::Critical;
  return exponent > 2.0 ? DecayKind::Exponential : DecayKind::Algebraic;
}

// own: exponent of this component, other: exponent of the partner.
ComponentDecay component_decay(const ProblemParams &params, double own,
                               double other) {
  const double N = params.N();
  const double a = params.alpha();
  const double c_alpha = riesz_constant(params.N(), a);
  const double nan = std::numeric_limits<double>::quiet_NaN();

  ComponentDecay d{kind_of(own), nan, nan};
  switch (d.kind) {
  case DecayKind::Algebraic:
    d.algebraic_exponent = (N - a) / (2.0 - own);
    d.limit_coefficient = 2.0 * own / (own + other) * c_alpha;
    break;
  case DecayKind::Critical:
    // Coefficient of the Coulomb-like tail of 2p/(p+q) (I_a * |v|^q).
    d.limit_coefficient = 2.0 * own / (own + other) * c_alpha;
    break;
  case DecayKind::Exponential:
    break;
  }
  return d;
}

} // namespace

DecayCase decay_case(const ProblemParams &params) {
  if (!check_h1(params).holds)
    throw std::invalid_argument("decay_case requires (H1)");

  DecayCase out{};
  out.u = component_decay(params, params.p(), params.q());
  out.v = component_decay(params, params.q(), params.p());

  const double lo = std::min(params.p(), params.q());
  const double hi = std::max(params.p(), params.q());
  const bool hi_critical = kind_of(hi) == DecayKind::Critical;
  const bool lo_critical = kind_of(lo) == DecayKind::Critical;

  out.extra_ok = true;
  if (hi_critical && !lo_critical)
    out.extra_ok = strictly_less(decay_threshold_mixed(params.N(), params.alpha()), lo);
  else if (kind_of(hi) == DecayKind::Algebraic)
    out.extra_ok =
        strictly_less(decay_threshold_subquadratic(params.N(), params.alpha()), lo);
  return out;
}

//==============================================================================
std::string_view to_string(Existence e) {
  switch (e) {
  case Existence::ExistsH1:
    return "ExistsH1";
  case Existence::NonexistenceLowerLine:
    return "NonexistenceLowerLine";
  case Existence::NonexistenceUpperLine:
    return "NonexistenceUpperLine";
  case Existence::OutsideTheory:
    return "OutsideTheory";
  }
  return "?";
}

std::string_view to_string(Region r) {
  switch (r) {
  case Region::A:
    return "A";
  case Region::B:
    return "B";
  case Region::C:
    return "C";
  case Region::D:
    return "D";
  }
  return "?";
}

std::string_view to_string(DecayKind k) {
  switch (k) {
  case DecayKind::Exponential:
    return "Exponential";
  case DecayKind::Critical:
    return "Critical";
  case DecayKind::Algebraic:
    return "Algebraic";
  }
  return "?";
}

} // namespace hartree
