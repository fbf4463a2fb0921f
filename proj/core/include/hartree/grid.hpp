#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace hartree {

//==============================================================================
// Uniform tensor grid on the periodic cube [-L, L)^N, N <= 3, with M nodes per
// axis (M a power of two, M >= 16). Node coordinates x_k = -L + k h, h = 2L/M.
// Values are stored row-major with axis 0 slowest.
class GridSpec {
public:
  GridSpec(int N, double L, std::size_t M);

  int N() const noexcept { return N_; }
  double L() const noexcept { return L_; }
  std::size_t M() const noexcept { return M_; }
  double h() const noexcept { return h_; }
  double cell_volume() const noexcept { return cell_volume_; }
  std::size_t size() const noexcept { return size_; }

  double coordinate(std::size_t k) const noexcept {
    return -L_ + static_cast<double>(k) * h_;
  }
  // Multi-index of a flat index; unused trailing axes are zero.
  std::array<std::size_t, 3> unravel(std::size_t flat) const noexcept;
  std::size_t ravel(const std::array<std::size_t, 3> &idx) const noexcept;
  // The node at x = 0 on every axis.
  std::array<std::size_t, 3> center() const noexcept;

  friend bool operator==(const GridSpec &, const GridSpec &) = default;

private:
  int N_;
  double L_;
  std::size_t M_;
  double h_;
  double cell_volume_;
  std::size_t size_;
};

using Point = std::array<double, 3>;

//==============================================================================
// A real function sampled on a GridSpec.
class Field {
public:
  explicit Field(GridSpec spec); // zero-initialised
  Field(GridSpec spec, std::vector<double> values);

  // Samples fn at every node; unused trailing coordinates are zero.
  static Field sample(const GridSpec &spec,
                      const std::function<double(const Point &)> &fn);
  static Field constant(const GridSpec &spec, double value);

  const GridSpec &spec() const noexcept { return spec_; }
  std::size_t size() const noexcept { return values_.size(); }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double &operator[](std::size_t i) noexcept { return values_[i]; }

  Point node(std::size_t flat) const noexcept;

  bool all_finite() const noexcept;
  std::size_t argmax_abs() const noexcept;

  Field &operator*=(double s) noexcept;
  Field &operator+=(const Field &other);
  Field &operator-=(const Field &other);

  friend bool operator==(const Field &, const Field &) = default;

private:
  GridSpec spec_;
  std::vector<double> values_;
};

Field operator*(double s, Field f);
Field operator+(Field a, const Field &b);
Field operator-(Field a, const Field &b);
Field abs(Field f);

// Throws std::invalid_argument when the specs differ.
void require_same_grid(const Field &a, const Field &b);

//==============================================================================
// Quadrature and norms. All integrals use the rectangle rule h^N sum f.
double integrate(const Field &f);
// Integral of the pointwise product f * g.
double inner(const Field &f, const Field &g);
double lp_norm(const Field &f, double r);

// Spectral (Fourier) operators on the periodic cube. The Nyquist mode carries
// the full symbol |k|^2, so <f, -Lap f> equals gradient_norm_sq(f) exactly.
class SpectralOperator {
public:
  explicit SpectralOperator(const GridSpec &spec);
  ~SpectralOperator();
  SpectralOperator(SpectralOperator &&) noexcept;
  SpectralOperator &operator=(SpectralOperator &&) noexcept;

  const GridSpec &spec() const noexcept;

  Field laplacian(const Field &f) const;
  // (-Lap + 1) f
  Field helmholtz(const Field &f) const;
  // (-Lap + 1)^{-1} f
  Field inverse_helmholtz(const Field &f) const;
  // Integral of |grad f|^2.
  double gradient_norm_sq(const Field &f) const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

double gradient_norm_sq(const Field &f);
// Integral of |grad f|^2 + f^2.
double h1_norm_sq(const Field &f);
Field laplacian(const Field &f);

// Trigonometric interpolation onto a grid with the same N and L but a
// different M (Nyquist modes of the coarser grid are dropped).
Field fourier_resample(const Field &f, const GridSpec &target);

// Periodic translation by whole cells: out(k) = f(k - shift).
Field roll(const Field &f, const std::array<long, 3> &shift);

// Periodic translation by any distance through the trigonometric interpolant:
// out(x) = f(x - shift). Agrees with roll for whole-cell shifts.
Field translate(const Field &f, const Point &shift);

//==============================================================================
// Radial statistics about a grid node, using minimum-image displacements on
// the periodic cube. Bin j collects nodes at distance d in [j h, (j+1) h);
// nodes with d > L are dropped, as are empty bins.
struct RadialProfile {
  std::array<std::size_t, 3> center;
  std::vector<double> radius;      // bin midpoints (j + 1/2) h
  std::vector<double> mean_radius; // mean node distance in the bin
  std::vector<double> mean;        // mean of f
  std::vector<double> max_abs;     // max of |f|
  std::vector<std::size_t> count;

  std::size_t bins() const noexcept { return radius.size(); }
};

RadialProfile radial_profile(const Field &f,
                             const std::array<std::size_t, 3> &center);

// Minimum-image displacement (in cells) of node idx from center along one axis.
long min_image_offset(std::size_t idx, std::size_t center, std::size_t M) noexcept;

} // namespace hartree
