#pragma once

#include <limits>
#include <string_view>

namespace hartree {

// Absolute slack for every strict inequality in the (p, q) classifiers.
// A value within this distance of a critical line is put on the failing side.
inline constexpr double kBoundaryTol = 1e-12;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

//==============================================================================
// The quadruple (N, alpha, p, q) of the coupled Choquard system
//
//   -Lap u + u = 2p/(p+q) (I_alpha * |v|^q) |u|^{p-2} u
//   -Lap v + v = 2q/(p+q) (I_alpha * |u|^p) |v|^{q-2} v
//
// Only N in {1, 2, 3} is supported (the grid solver is capped there).
class ProblemParams {
public:
  ProblemParams(int N, double alpha, double p, double q);

  int N() const noexcept { return N_; }
  double alpha() const noexcept { return alpha_; }
  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }

  // Sobolev exponent 2N/(N-2), +infinity for N = 1, 2.
  double sobolev_exponent() const noexcept;
  // Upper critical sum 2(N+alpha)/(N-2), +infinity for N = 1, 2.
  double upper_critical_sum() const noexcept;
  // Lower critical sum 2(N+alpha)/N.
  double lower_critical_sum() const noexcept;
  // 1/2 - 1/(p+q): ratio between the Nehari level and the squared E-norm.
  double nehari_level_factor() const noexcept { return 0.5 - 1.0 / (p_ + q_); }

  friend bool operator==(const ProblemParams &, const ProblemParams &) = default;

private:
  int N_;
  double alpha_;
  double p_;
  double q_;
};

// c_alpha = Gamma((N-a)/2) / (Gamma(a/2) pi^{N/2} 2^a), the normalization of
// the Riesz kernel I_a(x) = c_alpha |x|^{-(N-a)}.
double riesz_constant(int N, double alpha);

//==============================================================================
// Hypothesis (H1): max{2a/N, 1} < p, q < 2*  and  2(N+a)/N < p+q < 2*_a.
// Margins are signed slacks; positive means the strict inequality holds.
struct H1Check {
  bool holds;
  double p_lower; // p - max{2a/N, 1}
  double p_upper; // 2* - p
  double q_lower;
  double q_upper;
  double sum_lower; // (p+q) - 2(N+a)/N
  double sum_upper; // 2*_a - (p+q)
};

H1Check check_h1(const ProblemParams &params);

// Admissible range for 1/theta_1 such that the HLS pairing of |u|^p and |v|^q
// is controlled by the H^1 norms.
struct ThetaInterval {
  double lower; // max{a/N, p(N-2)/(2N), (N+a)/N - q/2}
  double upper; // min{1, p/2, (N+a)/N - q(N-2)/(2N)}
  bool empty() const noexcept { return !(upper - lower > kBoundaryTol); }
  // Canonical choice: 1/theta_1 at the midpoint; theta_2 from
  // 1/theta_1 + 1/theta_2 = (N+a)/N. Only meaningful when !empty().
  double inv_theta1;
  double theta1;
  double theta2;
};

ThetaInterval theta_interval(const ProblemParams &params);

//==============================================================================
enum class Existence {
  ExistsH1,
  NonexistenceLowerLine,
  NonexistenceUpperLine,
  OutsideTheory,
};

struct ExistenceClass {
  Existence tag;
  // Signed distance of p+q above the lower line and below the upper line
  // (upper is +infinity for N <= 2).
  double lower_line_margin;
  double upper_line_margin;
  // Slack of p and q to the box bounds of (H1), same convention as H1Check.
  double p_lower, p_upper, q_lower, q_upper;
};

ExistenceClass classify_existence(const ProblemParams &params);

//==============================================================================
enum class Region { A, B, C, D };

// Regularity region of the (p, q) plane. Solutions lie in W^{2,r} x W^{2,h}
// for every r > r_bar and h > h_bar. r_bar == 1 means every exponent > 1 works.
struct RegularityRegion {
  Region region;
  int sub_case; // 1-based sub-case inside the region (1 for region A)
  double r_bar;
  double h_bar;
};

// Throws std::invalid_argument when (H1) fails.
RegularityRegion classify_regularity(const ProblemParams &params);

//==============================================================================
enum class DecayKind { Exponential, Critical, Algebraic };

struct ComponentDecay {
  DecayKind kind;
  // Algebraic: u ~ r^{-exponent} with exponent = (N-a)/(2-p). NaN otherwise.
  double algebraic_exponent;
  // Multiplies int |other|^{exponent of other} to give the limit constant:
  //  Algebraic: lim u^{2-p} r^{N-a} = coefficient * int |v|^q
  //  Critical:  A^{N-a}             = coefficient * int |v|^q
  //  Exponential: NaN (the limit of u r^{(N-1)/2} e^r is positive, unspecified)
  double limit_coefficient;
};

struct DecayCase {
  ComponentDecay u;
  ComponentDecay v;
  // False when the extra lower bounds on min{p,q} required for the
  // sub-quadratic cases are violated; decay predictions are then not asserted.
  bool extra_ok;
};

// Throws std::invalid_argument when (H1) fails.
DecayCase decay_case(const ProblemParams &params);

// Lower bound max{2N/(2N-a), 2(a+1)/(N+1)} used by the extra decay condition
// when min{p,q} < max{p,q} = 2.
double decay_threshold_mixed(int N, double alpha);
// Lower bound 2N/(2N-a) used when max{p,q} < 2.
double decay_threshold_subquadratic(int N, double alpha);

std::string_view to_string(Existence e);
std::string_view to_string(Region r);
std::string_view to_string(DecayKind k);

} // namespace hartree
