#pragma once

#include "hartree/functional.hpp"
#include "hartree/grid.hpp"
#include "hartree/params.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

namespace hartree {

// u = a_u exp(-|x - c_u|^2 / w_u^2), likewise v. Defaults give exp(-|x|^2).
struct GaussianInit {
  std::array<double, 2> widths{1.0, 1.0};
  std::array<Point, 2> centers{Point{0, 0, 0}, Point{0, 0, 0}};
  std::array<double, 2> amplitudes{1.0, 1.0};
};

// Sum of three positive Gaussian bumps per component with centers, widths and
// amplitudes drawn from a seeded mt19937_64.
struct RandomInit {
  std::uint64_t seed = 0;
};

using InitSpec = std::variant<GaussianInit, RandomInit>;

struct SolveConfig {
  SolveConfig(ProblemParams params_, GridSpec spec_)
      : params(params_), spec(spec_) {}

  ProblemParams params;
  GridSpec spec;
  InitSpec init = GaussianInit{};
  double step0 = 0.5;
  double tol_residual = 1e-6;
  int max_iters = 5000;
  // Every this many iterations try (schwarz|u|, schwarz|v|), and failing that
  // the whole-cell translation centering the peak of u; either is kept only
  // if I does not increase. 0 disables.
  int symmetrize_every = 10;
  // Run even when the parameters are not in the existence region.
  bool force = false;

  // Throws std::invalid_argument on an inconsistent configuration.
  void validate() const;
};

struct IterationRecord {
  int iteration = 0;
  double energy = 0.0;   // I after the step (on the Nehari set)
  double residual = 0.0; // relative strong-form residual after the step
  double nehari_scale = 1.0;
  double step = 0.0; // accepted tau
  int halvings = 0;
  bool symmetrized = false;
};

struct SolveReport {
  bool converged = false;
  int iterations = 0;
  std::vector<IterationRecord> history;
  EnergyBreakdown final_energy;
  double c_N = 0.0; // ground-state level estimate: final I
  double final_residual = 0.0;
  int symmetrizations_accepted = 0;
  int symmetrizations_rejected = 0;
  int recenterings = 0; // accepted translations after a rejected symmetrization
  double wall_seconds = 0.0;
};

class NonexistenceRefused : public std::runtime_error {
public:
  NonexistenceRefused()
      : std::runtime_error("refused: critical/nonexistence parameters") {}
};

class Stagnation : public std::runtime_error {
public:
  explicit Stagnation(StatePair last)
      : std::runtime_error("stagnation: no energy decrease after 30 step halvings"),
        last_state(std::move(last)) {}
  StatePair last_state;
};

// Relative slack on "energy does not increase", covering summation round-off.
inline constexpr double kEnergyRoundoff = 1e-13;
// Relative slack for accepting a symmetrized pair.
inline constexpr double kSymmetrizeSlack = 1e-12;
inline constexpr int kMaxHalvings = 30;

// Positive initial pair. Throws NonexistenceRefused unless the parameters are
// in the existence region or cfg.force is set.
StatePair initialize(const SolveConfig &cfg);

//==============================================================================
// Sobolev-gradient descent on I with Nehari reprojection after every step.
class Solver {
public:
  explicit Solver(SolveConfig cfg);
  // Start from a given pair (resampled onto cfg.spec if it lives elsewhere).
  Solver(SolveConfig cfg, const StatePair &initial);

  const SolveConfig &config() const noexcept { return cfg_; }
  const Functional &functional() const noexcept { return functional_; }
  const StatePair &state() const noexcept { return w_; }
  const EnergyBreakdown &energy() const noexcept { return energy_; }
  double residual() const noexcept { return residual_; }
  double nehari_scale() const noexcept { return last_scale_; }
  int iteration() const noexcept { return iteration_; }

  // One descent step (plus the symmetrization pass when due). Throws
  // Stagnation when no step size decreases I.
  IterationRecord step();

  using Observer = std::function<void(const IterationRecord &)>;
  std::pair<StatePair, SolveReport> solve(const Observer &observer = {});

private:
  struct Candidate;
  Candidate evaluate(StatePair w) const;
  void adopt(Candidate c);
  bool try_symmetrize();

  SolveConfig cfg_;
  Functional functional_;
  StatePair w_;
  Field pot_u_;
  Field pot_v_;
  Residual gradient_;
  EnergyBreakdown energy_;
  double residual_ = 0.0;
  double last_scale_ = 1.0;
  double tau_;
  int iteration_ = 0;
  int sym_accepted_ = 0;
  int sym_rejected_ = 0;
  int recentered_ = 0;
};

std::pair<StatePair, SolveReport> solve(const SolveConfig &cfg);
std::pair<StatePair, SolveReport> solve(const SolveConfig &cfg,
                                        const StatePair &initial);

} // namespace hartree
