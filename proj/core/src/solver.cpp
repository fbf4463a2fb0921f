#include "hartree/solver.hpp"

#include "hartree/rearrange.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>

namespace hartree {

void SolveConfig::validate() const {
  if (params.N() != spec.N())
    throw std::invalid_argument("SolveConfig: params and grid disagree on N");
  if (!(tol_residual > 0.0))
    throw std::invalid_argument("SolveConfig: tol_residual must be positive");
  if (!(step0 > 0.0 && step0 <= 2.0))
    throw std::invalid_argument("SolveConfig: step0 must lie in (0, 2]");
  if (max_iters < 0)
    throw std::invalid_argument("SolveConfig: max_iters must be >= 0");
  if (symmetrize_every < 0)
    throw std::invalid_argument("SolveConfig: symmetrize_every must be >= 0");
}

namespace {

// Offsets below this many cells are round-off in the centroid.
constexpr double kRecenterMinCells = 1e-6;

struct Bump {
  Point center{0, 0, 0};
  double width = 1.0;
  double amplitude = 1.0;
};

// Gaussian tails underflow on large boxes; keep every node strictly positive.
constexpr double kPositiveFloor = std::numeric_limits<double>::min();

Field bumps(const GridSpec &spec, const std::vector<Bump> &list) {
  const int N = spec.N();
  return Field::sample(spec, [&](const Point &x) {
    double s = 0.0;
    for (const auto &b : list) {
      double r2 = 0.0;
      for (int d = 0; d < N; ++d) {
        const auto a = static_cast<std::size_t>(d);
        r2 += (x[a] - b.center[a]) * (x[a] - b.center[a]);
      }
      s += b.amplitude * std::exp(-r2 / (b.width * b.width));
    }
    return std::max(s, kPositiveFloor);
  });
}

double uniform(std::mt19937_64 &gen, double lo, double hi) {
  const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

std::vector<Bump> random_bumps(std::mt19937_64 &gen, const GridSpec &spec) {
  constexpr int kBumps = 3;
  const double reach = 0.25 * std::min(spec.L(), 4.0);
  std::vector<Bump> out(kBumps);
  for (auto &b : out) {
    for (int d = 0; d < spec.N(); ++d)
      b.center[static_cast<std::size_t>(d)] = uniform(gen, -reach, reach);
    b.width = uniform(gen, 0.75, 1.5);
    b.amplitude = uniform(gen, 0.5, 1.5);
  }
  return out;
}

void require_existence(const SolveConfig &cfg) {
  if (cfg.force)
    return;
  if (classify_existence(cfg.params).tag != Existence::ExistsH1)
    throw NonexistenceRefused();
}

Field abs_power(const Field &f, double p) {
  Field out(f.spec());
  for (std::size_t i = 0; i < f.size(); ++i)
    out[i] = std::pow(std::abs(f[i]), p);
  return out;
}

} // namespace

StatePair initialize(const SolveConfig &cfg) {
  cfg.validate();
  require_existence(cfg);
  const auto &spec = cfg.spec;
  if (const auto *g = std::get_if<GaussianInit>(&cfg.init)) {
    for (double w : g->widths)
      if (!(w > 0.0))
        throw std::invalid_argument("GaussianInit: widths must be positive");
    for (double a : g->amplitudes)
      if (!(a > 0.0))
        throw std::invalid_argument("GaussianInit: amplitudes must be positive");
    return {bumps(spec, {{g->centers[0], g->widths[0], g->amplitudes[0]}}),
            bumps(spec, {{g->centers[1], g->widths[1], g->amplitudes[1]}})};
  }
  const auto &r = std::get<RandomInit>(cfg.init);
  std::mt19937_64 gen(r.seed);
  auto bu = random_bumps(gen, spec);
  auto bv = random_bumps(gen, spec);
  return {bumps(spec, bu), bumps(spec, bv)};
}

//==============================================================================
struct Solver::Candidate {
  StatePair w;
  Field pot_u;
  Field pot_v;
  double e;
  double d;
  double scale;
};

// Potentials, norms and Nehari projection of w, with the cached quantities
// rescaled instead of recomputed.
Solver::Candidate Solver::evaluate(StatePair w) const {
  const double p = cfg_.params.p(), q = cfg_.params.q();
  Field pu = functional_.potential_u(w.u);
  Field pv = functional_.potential_v(w.v);
  double e = functional_.e_norm_sq(w);
  double d = inner(pu, abs_power(w.v, q));
  const double t = functional_.nehari_scale(e, d);
  w = t * std::move(w);
  pu *= std::pow(t, p);
  pv *= std::pow(t, q);
  e *= t * t;
  d *= std::pow(t, p + q);
  return {std::move(w), std::move(pu), std::move(pv), e, d, t};
}

void Solver::adopt(Candidate c) {
  w_ = std::move(c.w);
  pot_u_ = std::move(c.pot_u);
  pot_v_ = std::move(c.pot_v);
  energy_ = functional_.breakdown(c.e, c.d);
  last_scale_ = c.scale;
  gradient_ = functional_.euler_residual(w_, pot_u_, pot_v_, c.e);
  residual_ = gradient_.relative_norm;
}

Solver::Solver(SolveConfig cfg) : Solver(cfg, initialize(cfg)) {}

Solver::Solver(SolveConfig cfg, const StatePair &initial)
    : cfg_(std::move(cfg)), functional_(cfg_.params, cfg_.spec),
      w_(Field(cfg_.spec), Field(cfg_.spec)), pot_u_(cfg_.spec),
      pot_v_(cfg_.spec),
      gradient_{StatePair(Field(cfg_.spec), Field(cfg_.spec)), 0.0},
      tau_(cfg_.step0) {
  cfg_.validate();
  require_existence(cfg_);
  if (initial.spec() == cfg_.spec) {
    adopt(evaluate(initial));
  } else {
    if (initial.spec().N() != cfg_.spec.N() || initial.spec().L() != cfg_.spec.L())
      throw std::invalid_argument("Solver: initial pair lives on an incompatible grid");
    StatePair moved(fourier_resample(initial.u, cfg_.spec),
                    fourier_resample(initial.v, cfg_.spec));
    adopt(evaluate(std::move(moved)));
  }
}

bool Solver::try_symmetrize() {
  const double i_old = energy_.energy_I;
  const double slack = kSymmetrizeSlack * std::max(1.0, std::abs(i_old));
  auto accept = [&](StatePair cand) {
    Candidate c = evaluate(std::move(cand));
    if (!(functional_.breakdown(c.e, c.d).energy_I <= i_old + slack))
      return false;
    adopt(std::move(c));
    return true;
  };
  if (accept(StatePair(schwarz(abs(w_.u)), schwarz(abs(w_.v))))) {
    ++sym_accepted_;
    return true;
  }
  ++sym_rejected_;

  // On a coarse grid the sorted pair is a staircase and usually loses. The
  // descent itself only moves an off-center bump by a slow drift, so try the
  // translation that puts the u^2 centroid (taken about the peak, nearest
  // image) on the grid center.
  const auto &spec = w_.spec();
  const auto peak = spec.unravel(w_.u.argmax_abs());
  const auto center = spec.center();
  const auto M = spec.M();
  std::array<double, 3> moment{0.0, 0.0, 0.0};
  double mass = 0.0;
  for (std::size_t i = 0; i < w_.u.size(); ++i) {
    const double w = w_.u[i] * w_.u[i];
    const auto idx = spec.unravel(i);
    for (int d = 0; d < spec.N(); ++d) {
      const auto ax = static_cast<std::size_t>(d);
      moment[ax] += w * static_cast<double>(min_image_offset(idx[ax], peak[ax], M));
    }
    mass += w;
  }
  if (!(mass > 0.0))
    return false;
  Point shift{0.0, 0.0, 0.0};
  double largest = 0.0;
  for (int d = 0; d < spec.N(); ++d) {
    const auto ax = static_cast<std::size_t>(d);
    const double cells = static_cast<double>(center[ax]) - static_cast<double>(peak[ax]) -
                         moment[ax] / mass;
    shift[ax] = cells * spec.h();
    largest = std::max(largest, std::abs(cells));
  }
  if (largest < kRecenterMinCells)
    return false;
  if (accept(StatePair(translate(w_.u, shift), translate(w_.v, shift)))) {
    ++recentered_;
    return true;
  }
  return false;
}

IterationRecord Solver::step() {
  const double p = cfg_.params.p(), q = cfg_.params.q();
  const auto &op = functional_.spectral();
  const Field gu = op.inverse_helmholtz(gradient_.fields.u);
  const Field gv = op.inverse_helmholtz(gradient_.fields.v);

  const double i_old = energy_.energy_I;
  const double slack = kEnergyRoundoff * std::abs(i_old);
  double tau = std::min(cfg_.step0, 2.0 * tau_);

  for (int halvings = 0; halvings <= kMaxHalvings; ++halvings, tau *= 0.5) {
    StatePair trial(w_.u, w_.v);
    for (std::size_t i = 0; i < trial.u.size(); ++i) {
      trial.u[i] -= tau * gu[i];
      trial.v[i] -= tau * gv[i];
    }
    // One convolution decides acceptance; the second is paid only on success.
    Field pu = functional_.potential_u(trial.u);
    const double e = functional_.e_norm_sq(trial);
    const double d = inner(pu, abs_power(trial.v, q));
    if (!(d > kInteractionFloor) || !std::isfinite(d) || !std::isfinite(e))
      continue;
    const double i_trial = functional_.projected_energy(e, d);
    if (!(i_trial <= i_old + slack))
      continue;

    const double t = functional_.nehari_scale(e, d);
    trial = t * std::move(trial);
    pu *= std::pow(t, p);
    Field pv = functional_.potential_v(trial.v);
    adopt({std::move(trial), std::move(pu), std::move(pv), e * t * t,
           d * std::pow(t, p + q), t});
    tau_ = tau;
    ++iteration_;

    IterationRecord rec;
    rec.iteration = iteration_;
    rec.step = tau;
    rec.halvings = halvings;
    rec.nehari_scale = t;
    if (cfg_.symmetrize_every > 0 && iteration_ % cfg_.symmetrize_every == 0)
      rec.symmetrized = try_symmetrize();
    rec.energy = energy_.energy_I;
    rec.residual = residual_;
    return rec;
  }
  throw Stagnation(w_);
}

std::pair<StatePair, SolveReport> Solver::solve(const Observer &observer) {
  const auto start = std::chrono::steady_clock::now();
  SolveReport report;
  const int first = iteration_;
  while (residual_ > cfg_.tol_residual && iteration_ - first < cfg_.max_iters) {
    auto rec = step();
    if (observer)
      observer(rec);
    report.history.push_back(rec);
  }
  report.converged = residual_ <= cfg_.tol_residual;
  report.iterations = iteration_ - first;
  report.final_energy = energy_;
  report.c_N = energy_.energy_I;
  report.final_residual = residual_;
  report.symmetrizations_accepted = sym_accepted_;
  report.symmetrizations_rejected = sym_rejected_;
  report.recenterings = recentered_;
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {w_, std::move(report)};
}

std::pair<StatePair, SolveReport> solve(const SolveConfig &cfg) {
  Solver s(cfg);
  return s.solve();
}

std::pair<StatePair, SolveReport> solve(const SolveConfig &cfg,
                                        const StatePair &initial) {
  Solver s(cfg, initial);
  return s.solve();
}

} // namespace hartree
