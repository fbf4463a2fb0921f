#pragma once

#include "hartree/functional.hpp"
#include "hartree/grid.hpp"
#include "hartree/params.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hartree {

class DiagnosticError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

//==============================================================================
// |LHS - RHS| / (|LHS| + |RHS| + eps) with
//   LHS = (N-2)/2 int |grad u|^2 + |grad v|^2 + N/2 int u^2 + v^2
//   RHS = 2 (N+a)/(p+q) D(u, v).
double pohozaev_residual(const Functional &functional, const StatePair &w);
double pohozaev_residual(const StatePair &w, const ProblemParams &params);

// ||f - s(f)||_2 / ||f||_2 where s(f) replaces every value by the mean over
// its exact distance shell about argmax |f| (minimum-image offsets).
// Throws DiagnosticError for the zero field.
double symmetry_deviation(const Field &f);

//==============================================================================
struct FitWindow {
  double r_lo;
  double r_hi;
};

// [0.35 L, 0.7 L].
FitWindow default_window(const GridSpec &spec);
// The default window and two staggered neighbours, [0.3 L, 0.6 L] and
// [0.4 L, 0.8 L], used to report window sensitivity.
std::vector<FitWindow> staggered_windows(const GridSpec &spec);

inline constexpr std::size_t kMinFitBins = 10;

struct DecayFit {
  char component = 'u';
  DecayKind kind = DecayKind::Exponential;
  FitWindow window{0.0, 0.0};
  std::size_t bins = 0;
  // Exponential: slope of log(u r^{(N-1)/2}) against r, predicted -1.
  // Algebraic:   slope of log u against log r, predicted -(N-a)/(2-p).
  // Critical:    slope of log g against r, predicted 0, where
  //              g = u r^{(N-1)/2} exp(int_A^r sqrt(1 - A^{N-a}/s^{N-a}) ds).
  double fitted = 0.0;
  double predicted = 0.0;
  double r_squared = 0.0;
  // Algebraic: window median of u^{2-p} r^{N-a}.
  // Critical:  window median of g.  Exponential: median of u r^{(N-1)/2} e^r.
  double limit_estimate = 0.0;
  // Algebraic: coefficient * int |v|^q. Critical: A^{N-a}. Otherwise NaN.
  double limit_predicted = 0.0;
  // Critical only: (max g - min g) / median g over the window; NaN otherwise.
  double variation = 0.0;
  // False when the extra lower bounds on min{p, q} fail; the fit is then
  // reported but carries no prediction worth asserting.
  bool theory_applicable = true;
};

// Fits both components on one window. Each component's radial profile is
// taken about its own argmax. Throws DiagnosticError when the window is not
// inside (0, L], has fewer than kMinFitBins usable bins, or the profile is
// not positive there; std::invalid_argument when (H1) fails.
std::pair<DecayFit, DecayFit> fit_decay(const StatePair &w,
                                        const ProblemParams &params,
                                        const FitWindow &window);
// One component ('u' or 'v') of fit_decay, same errors.
DecayFit fit_decay_component(const StatePair &w, const ProblemParams &params,
                             const FitWindow &window, char component);

// int_A^r sqrt(1 - (A/s)^{exponent}) ds with the integrand clamped to [0, 1];
// 0 for r <= A.
double critical_decay_integral(double A, double exponent, double r);

//==============================================================================
struct HlsAudit {
  double theta1;
  double theta2;
  // D(u,v) / (||u||_{theta1 p}^p ||v||_{theta2 q}^q)
  double pairing_ratio;
  // ||I_a * |u|^p||_{N s/(N - a s)} / || |u|^p ||_s with s = theta1
  double potential_ratio;
};

// Throws DiagnosticError when the theta interval is empty or either
// component vanishes.
HlsAudit hls_audit(const Functional &functional, const StatePair &w);
HlsAudit hls_audit(const StatePair &w, const ProblemParams &params);

struct HlsDilationAudit {
  std::vector<double> lambdas;
  std::vector<HlsAudit> audits;
  // max / min over the family, for each ratio
  double pairing_spread;
  double potential_spread;
};

// Audits w(. / lambda) for lambda in {1/2, 1, 2}.
HlsDilationAudit hls_dilation_audit(const Functional &functional,
                                    const StatePair &w);

// f(x / lambda) by multilinear interpolation, zero outside the cube.
Field dilate(const Field &f, double lambda);

} // namespace hartree
