#include "hartree/diagnostics.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace hartree {

double pohozaev_residual(const Functional &functional, const StatePair &w) {
  const auto &params = functional.params();
  const auto &op = functional.spectral();
  const int N = params.N();
  const double grad = op.gradient_norm_sq(w.u) + op.gradient_norm_sq(w.v);
  const double mass = inner(w.u, w.u) + inner(w.v, w.v);
  const double lhs = 0.5 * (N - 2) * grad + 0.5 * N * mass;
  const double rhs = 2.0 * (N + params.alpha()) / (params.p() + params.q()) *
                     functional.interaction(w);
  return std::abs(lhs - rhs) /
         (std::abs(lhs) + std::abs(rhs) + std::numeric_limits<double>::min());
}

double pohozaev_residual(const StatePair &w, const ProblemParams &params) {
  return pohozaev_residual(Functional(params, w.spec()), w);
}

//==============================================================================
namespace {

// Squared minimum-image distance (in cells) of every node from center.
std::vector<long> shell_keys(const GridSpec &spec,
                             const std::array<std::size_t, 3> &center) {
  std::vector<long> keys(spec.size());
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const auto idx = spec.unravel(i);
    long k = 0;
    for (int d = 0; d < spec.N(); ++d) {
      const auto a = static_cast<std::size_t>(d);
      const long o = min_image_offset(idx[a], center[a], spec.M());
      k += o * o;
    }
    keys[i] = k;
  }
  return keys;
}

} // namespace

double symmetry_deviation(const Field &f) {
  const auto &spec = f.spec();
  const auto center = spec.unravel(f.argmax_abs());
  const auto keys = shell_keys(spec, center);
  const long kmax = *std::max_element(keys.begin(), keys.end());
  std::vector<double> sum(static_cast<std::size_t>(kmax) + 1, 0.0);
  std::vector<std::size_t> count(sum.size(), 0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    sum[static_cast<std::size_t>(keys[i])] += f[i];
    ++count[static_cast<std::size_t>(keys[i])];
  }
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto k = static_cast<std::size_t>(keys[i]);
    const double diff = f[i] - sum[k] / static_cast<double>(count[k]);
    num += diff * diff;
    den += f[i] * f[i];
  }
  if (!(den > 0.0))
    throw DiagnosticError("symmetry_deviation: zero field");
  return std::sqrt(num / den);
}

//==============================================================================
FitWindow default_window(const GridSpec &spec) {
  return {0.35 * spec.L(), 0.7 * spec.L()};
}

std::vector<FitWindow> staggered_windows(const GridSpec &spec) {
  const double L = spec.L();
  return {{0.3 * L, 0.6 * L}, default_window(spec), {0.4 * L, 0.8 * L}};
}

double critical_decay_integral(double A, double exponent, double r) {
  if (!(r > A))
    return 0.0;
  if (!(A > 0.0))
    return r;
  auto integrand = [&](double s) {
    const double x = 1.0 - std::pow(A / s, exponent);
    return std::sqrt(std::clamp(x, 0.0, 1.0));
  };
  boost::math::quadrature::tanh_sinh<double> rule;
  return rule.integrate(integrand, A, r, 1e-12);
}

namespace {

struct LineFit {
  double slope;
  double intercept;
  double r_squared;
};

LineFit least_squares(const std::vector<double> &x, const std::vector<double> &y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  const double r2 = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
  return {slope, my - slope * mx, r2};
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double integral_abs_power(const Field &f, double p) {
  double s = 0.0;
  for (double x : f.values())
    s += std::pow(std::abs(x), p);
  return s * f.spec().cell_volume();
}

DecayFit fit_component(const Field &f, char name, const ComponentDecay &decay,
                       double exponent, double other_integral, const ProblemParams &params,
                       const FitWindow &window, bool applicable) {
  const int N = params.N();
  const double s = N - params.alpha();
  const auto prof = radial_profile(f, f.spec().unravel(f.argmax_abs()));

  std::vector<double> r, u;
  for (std::size_t j = 0; j < prof.bins(); ++j) {
    const double rj = prof.mean_radius[j];
    if (rj < window.r_lo || rj > window.r_hi)
      continue;
    if (!(prof.mean[j] > 0.0))
      throw DiagnosticError(std::string("fit_decay: ") + name +
                            " is not positive in the fit window");
    r.push_back(rj);
    u.push_back(prof.mean[j]);
  }
  if (r.size() < kMinFitBins)
    throw DiagnosticError("fit_decay: fewer than 10 usable bins in the window");

  DecayFit fit;
  fit.component = name;
  fit.kind = decay.kind;
  fit.window = window;
  fit.bins = r.size();
  fit.theory_applicable = applicable;
  fit.variation = std::numeric_limits<double>::quiet_NaN();
  fit.limit_predicted = std::numeric_limits<double>::quiet_NaN();

  const double half = 0.5 * (N - 1);
  std::vector<double> x, y, lim;
  switch (decay.kind) {
  case DecayKind::Exponential:
    for (std::size_t i = 0; i < r.size(); ++i) {
      x.push_back(r[i]);
      y.push_back(std::log(u[i]) + half * std::log(r[i]));
      lim.push_back(u[i] * std::pow(r[i], half) * std::exp(r[i]));
    }
    fit.predicted = -1.0;
    break;
  case DecayKind::Algebraic:
    for (std::size_t i = 0; i < r.size(); ++i) {
      x.push_back(std::log(r[i]));
      y.push_back(std::log(u[i]));
      lim.push_back(std::pow(u[i], 2.0 - exponent) * std::pow(r[i], s));
    }
    fit.predicted = -decay.algebraic_exponent;
    fit.limit_predicted = decay.limit_coefficient * other_integral;
    break;
  case DecayKind::Critical: {
    const double As = decay.limit_coefficient * other_integral;
    const double A = std::pow(As, 1.0 / s);
    for (std::size_t i = 0; i < r.size(); ++i) {
      const double lg = std::log(u[i]) + half * std::log(r[i]) +
                        critical_decay_integral(A, s, r[i]);
      x.push_back(r[i]);
      y.push_back(lg);
      lim.push_back(std::exp(lg));
    }
    fit.predicted = 0.0;
    fit.limit_predicted = As;
    break;
  }
  }
  const auto line = least_squares(x, y);
  fit.fitted = line.slope;
  fit.r_squared = line.r_squared;
  fit.limit_estimate = median(lim);
  if (decay.kind == DecayKind::Critical) {
    const auto [lo, hi] = std::minmax_element(lim.begin(), lim.end());
    fit.variation = (*hi - *lo) / fit.limit_estimate;
  }
  return fit;
}

} // namespace

DecayFit fit_decay_component(const StatePair &w, const ProblemParams &params,
                             const FitWindow &window, char component) {
  const auto &spec = w.spec();
  if (component != 'u' && component != 'v')
    throw std::invalid_argument("fit_decay_component: component must be 'u' or 'v'");
  if (!(window.r_lo > 0.0 && window.r_lo < window.r_hi && window.r_hi <= spec.L()))
    throw DiagnosticError("fit_decay: window must satisfy 0 < r_lo < r_hi <= L");
  const auto dc = decay_case(params);
  if (component == 'u')
    return fit_component(w.u, 'u', dc.u, params.p(), integral_abs_power(w.v, params.q()),
                         params, window, dc.extra_ok);
  return fit_component(w.v, 'v', dc.v, params.q(), integral_abs_power(w.u, params.p()),
                       params, window, dc.extra_ok);
}

std::pair<DecayFit, DecayFit> fit_decay(const StatePair &w,
                                        const ProblemParams &params,
                                        const FitWindow &window) {
  return {fit_decay_component(w, params, window, 'u'),
          fit_decay_component(w, params, window, 'v')};
}

//==============================================================================
HlsAudit hls_audit(const Functional &functional, const StatePair &w) {
  const auto &params = functional.params();
  const auto th = theta_interval(params);
  if (th.empty())
    throw DiagnosticError("hls_audit: empty theta interval");
  const int N = params.N();
  const double p = params.p(), q = params.q(), a = params.alpha();

  const double nu = std::pow(lp_norm(w.u, th.theta1 * p), p);
  const double nv = std::pow(lp_norm(w.v, th.theta2 * q), q);
  if (!(nu > 0.0) || !(nv > 0.0))
    throw DiagnosticError("hls_audit: vanishing component");

  Field up(w.u.spec());
  for (std::size_t i = 0; i < up.size(); ++i)
    up[i] = std::pow(std::abs(w.u[i]), p);
  const Field pot = functional.riesz().apply(up);
  const double s = th.theta1;
  const double target = N * s / (N - a * s);

  HlsAudit out;
  out.theta1 = th.theta1;
  out.theta2 = th.theta2;
  out.pairing_ratio = functional.interaction(w) / (nu * nv);
  out.potential_ratio = lp_norm(pot, target) / lp_norm(up, s);
  return out;
}

HlsAudit hls_audit(const StatePair &w, const ProblemParams &params) {
  return hls_audit(Functional(params, w.spec()), w);
}

Field dilate(const Field &f, double lambda) {
  if (!(lambda > 0.0))
    throw std::invalid_argument("dilate: lambda must be positive");
  const auto &spec = f.spec();
  const int N = spec.N();
  const std::size_t M = spec.M();
  const double h = spec.h(), L = spec.L();
  return Field::sample(spec, [&](const Point &x) {
    std::array<std::size_t, 3> base{0, 0, 0};
    std::array<double, 3> frac{0, 0, 0};
    for (int d = 0; d < N; ++d) {
      const auto a = static_cast<std::size_t>(d);
      const double k = (x[a] / lambda + L) / h;
      if (k < 0.0 || k > static_cast<double>(M - 1))
        return 0.0;
      const double fl = std::min(std::floor(k), static_cast<double>(M - 2));
      base[a] = static_cast<std::size_t>(fl);
      frac[a] = k - fl;
    }
    double acc = 0.0;
    for (int corner = 0; corner < (1 << N); ++corner) {
      auto idx = base;
      double wgt = 1.0;
      for (int d = 0; d < N; ++d) {
        const auto a = static_cast<std::size_t>(d);
        const bool up = (corner >> d) & 1;
        idx[a] += up ? 1 : 0;
        wgt *= up ? frac[a] : 1.0 - frac[a];
      }
      if (wgt != 0.0)
        acc += wgt * f[spec.ravel(idx)];
    }
    return acc;
  });
}

HlsDilationAudit hls_dilation_audit(const Functional &functional,
                                    const StatePair &w) {
  HlsDilationAudit out;
  out.lambdas = {0.5, 1.0, 2.0};
  for (double lam : out.lambdas) {
    StatePair d(dilate(w.u, lam), dilate(w.v, lam));
    out.audits.push_back(hls_audit(functional, d));
  }
  auto spread = [&](auto member) {
    double lo = kInfinity, hi = 0.0;
    for (const auto &a : out.audits) {
      lo = std::min(lo, a.*member);
      hi = std::max(hi, a.*member);
    }
    return hi / lo;
  };
  out.pairing_spread = spread(&HlsAudit::pairing_ratio);
  out.potential_spread = spread(&HlsAudit::potential_ratio);
  return out;
}

} // namespace hartree
