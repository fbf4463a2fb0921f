#pragma once

#include "hartree/grid.hpp"

#include <memory>

namespace hartree {

// How the singular kernel value at the zero offset is assigned.
enum class OriginRule {
  // Weight chosen so that the punctured lattice sum plus the origin term
  // reproduces the integral of c_a |y|^{-(N-a)} g(y) for smooth g up to
  // O(h^{a+2}) (lattice zeta correction).
  LatticeCorrected,
  // Cell average of c_a |y|^{-(N-a)} over the origin cell by 16^N sub-cell
  // midpoints; O(h^a) consistent.
  CellAverage,
};

// Discrete Riesz kernel at the grid offset x on a grid of spacing h:
// c_a |x|^{-(N-a)} for x != 0 and the origin weight for x == 0.
double kernel_value(int N, double alpha, const Point &x, double h,
                    OriginRule rule = OriginRule::LatticeCorrected);

// Value the kernel takes at the zero offset.
double origin_weight(int N, double alpha, double h,
                     OriginRule rule = OriginRule::LatticeCorrected);

// Dimensionless lattice constant C with
//   C = lim_{sigma->inf} [ int |y|^{-s} g - sum_{j != 0} |j|^{-s} g(j) ],
// g = exp(-|y|^2 / (2 sigma^2)), s = N - a. For N = 1 it equals -2 zeta(s).
double lattice_zeta_constant(int N, double alpha);

// O(M^{2N}) free-space sum g_i = h^N sum_j K(x_i - x_j) f_j over the closed
// cube [-L, L]^N. A node on the plane x_d = -L also stands for x_d = +L; its
// mass is split evenly between the two faces and its value is the mean over
// them, which keeps the sum invariant under the grid reflections k -> M - k.
// Guarded to M^N <= 4096; throws std::invalid_argument above that.
Field riesz_direct(const Field &f, double alpha,
                   OriginRule rule = OriginRule::LatticeCorrected);

inline constexpr std::size_t kDirectSumLimit = 4096;

// Precomputed free-space convolution with I_alpha on one grid, equal to
// riesz_direct: f is zero padded to (2M)^N (boundary planes split onto both
// faces), multiplied by the transform of the sampled kernel and cropped back.
// Immutable after construction; apply() may be called concurrently.
class RieszPlan {
public:
  RieszPlan(const GridSpec &spec, double alpha,
            OriginRule rule = OriginRule::LatticeCorrected);
  ~RieszPlan();
  RieszPlan(RieszPlan &&) noexcept;
  RieszPlan &operator=(RieszPlan &&) noexcept;

  const GridSpec &spec() const noexcept;
  double alpha() const noexcept;
  double c_alpha() const noexcept;
  OriginRule origin_rule() const noexcept;

  // Throws std::invalid_argument when f lives on another grid.
  Field apply(const Field &f) const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

inline Field riesz_apply(const RieszPlan &plan, const Field &f) {
  return plan.apply(f);
}

// Double integral of f(x) |x - y|^{-(N-a)} g(y), i.e. int (I_a * f) g / c_a.
double hls_pairing(const RieszPlan &plan, const Field &f, const Field &g);

} // namespace hartree
