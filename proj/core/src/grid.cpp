#include "hartree/grid.hpp"

#include "fft.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace hartree {

namespace {

bool is_power_of_two(std::size_t m) { return m != 0 && (m & (m - 1)) == 0; }

std::vector<int> grid_dims(const GridSpec &spec) {
  return std::vector<int>(static_cast<std::size_t>(spec.N()),
                          static_cast<int>(spec.M()));
}

} // namespace

//==============================================================================
GridSpec::GridSpec(int N, double L, std::size_t M) : N_{N}, L_{L}, M_{M} {
  if (N < 1 || N > 3)
    throw std::invalid_argument("GridSpec: N must be 1, 2 or 3");
  if (!std::isfinite(L) || !(L > 0.0))
    throw std::invalid_argument("GridSpec: L must be positive and finite");
  if (!is_power_of_two(M) || M < 16)
    throw std::invalid_argument("GridSpec: M must be a power of two >= 16 (got " +
                                std::to_string(M) + ")");
  h_ = 2.0 * L / static_cast<double>(M);
  cell_volume_ = std::pow(h_, N);
  size_ = 1;
  for (int d = 0; d < N; ++d)
    size_ *= M;
}

std::array<std::size_t, 3> GridSpec::unravel(std::size_t flat) const noexcept {
  std::array<std::size_t, 3> idx{0, 0, 0};
  for (int d = N_ - 1; d >= 0; --d) {
    idx[static_cast<std::size_t>(d)] = flat % M_;
    flat /= M_;
  }
  return idx;
}

std::size_t GridSpec::ravel(const std::array<std::size_t, 3> &idx) const noexcept {
  std::size_t flat = 0;
  for (int d = 0; d < N_; ++d)
    flat = flat * M_ + idx[static_cast<std::size_t>(d)];
  return flat;
}

std::array<std::size_t, 3> GridSpec::center() const noexcept {
  std::array<std::size_t, 3> c{0, 0, 0};
  for (int d = 0; d < N_; ++d)
    c[static_cast<std::size_t>(d)] = M_ / 2;
  return c;
}

//==============================================================================
Field::Field(GridSpec spec) : spec_{spec}, values_(spec.size(), 0.0) {}

Field::Field(GridSpec spec, std::vector<double> values)
    : spec_{spec}, values_(std::move(values)) {
  if (values_.size() != spec_.size())
    throw std::invalid_argument("Field: value count does not match the grid");
}

Field Field::sample(const GridSpec &spec,
                    const std::function<double(const Point &)> &fn) {
  Field f(spec);
  for (std::size_t i = 0; i < f.size(); ++i)
    f.values_[i] = fn(f.node(i));
  return f;
}

Field Field::constant(const GridSpec &spec, double value) {
  return Field(spec, std::vector<double>(spec.size(), value));
}

Point Field::node(std::size_t flat) const noexcept {
  const auto idx = spec_.unravel(flat);
  Point x{0.0, 0.0, 0.0};
  for (int d = 0; d < spec_.N(); ++d)
    x[static_cast<std::size_t>(d)] =
        spec_.coordinate(idx[static_cast<std::size_t>(d)]);
  return x;
}

bool Field::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(),
                     [](double x) { return std::isfinite(x); });
}

std::size_t Field::argmax_abs() const noexcept {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values_.size(); ++i)
    if (std::abs(values_[i]) > std::abs(values_[best]))
      best = i;
  return best;
}

Field &Field::operator*=(double s) noexcept {
  for (auto &x : values_)
    x *= s;
  return *this;
}

Field &Field::operator+=(const Field &other) {
  require_same_grid(*this, other);
  for (std::size_t i = 0; i < values_.size(); ++i)
    values_[i] += other.values_[i];
  return *this;
}

Field &Field::operator-=(const Field &other) {
  require_same_grid(*this, other);
  for (std::size_t i = 0; i < values_.size(); ++i)
    values_[i] -= other.values_[i];
  return *this;
}

Field operator*(double s, Field f) {
  f *= s;
  return f;
}

Field operator+(Field a, const Field &b) {
  a += b;
  return a;
}

Field operator-(Field a, const Field &b) {
  a -= b;
  return a;
}

Field abs(Field f) {
  for (auto &x : f.values())
    x = std::abs(x);
  return f;
}

void require_same_grid(const Field &a, const Field &b) {
  if (!(a.spec() == b.spec()))
    throw std::invalid_argument("fields live on different grids");
}

//==============================================================================
double integrate(const Field &f) {
  double sum = 0.0;
  for (double x : f.values())
    sum += x;
  return f.spec().cell_volume() * sum;
}

double inner(const Field &f, const Field &g) {
  require_same_grid(f, g);
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    sum += f[i] * g[i];
  return f.spec().cell_volume() * sum;
}

double lp_norm(const Field &f, double r) {
  if (std::isinf(r) && r > 0) {
    double m = 0.0;
    for (double x : f.values())
      m = std::max(m, std::abs(x));
    return m;
  }
  if (!(r >= 1.0))
    throw std::invalid_argument("lp_norm: exponent must be >= 1");
  // Scale by the max to keep |f|^r representable for large r.
  double scale = 0.0;
  for (double x : f.values())
    scale = std::max(scale, std::abs(x));
  if (scale == 0.0)
    return 0.0;
  double sum = 0.0;
  for (double x : f.values())
    sum += std::pow(std::abs(x) / scale, r);
  return scale * std::pow(f.spec().cell_volume() * sum, 1.0 / r);
}

//==============================================================================
struct SpectralOperator::Impl {
  explicit Impl(const GridSpec &s)
      : spec(s), plan(grid_dims(s)), pool(plan), symbol(plan.complex_size()) {
    // |k|^2 on the half-spectrum layout of the r2c transform.
    const std::size_t M = s.M();
    const std::size_t last = M / 2 + 1;
    const double dk = M_PI / s.L();
    for (std::size_t c = 0; c < symbol.size(); ++c) {
      std::size_t rest = c / last;
      double k2 = 0.0;
      const double kl = dk * static_cast<double>(c % last);
      k2 += kl * kl;
      for (int d = 0; d < s.N() - 1; ++d) {
        const double k =
            dk * static_cast<double>(detail::signed_frequency(rest % M, M));
        k2 += k * k;
        rest /= M;
      }
      symbol[c] = k2;
    }
  }

  // out = IFFT(multiplier(|k|^2) * FFT(in)), normalised.
  template <class Multiplier>
  Field apply(const Field &f, Multiplier &&multiplier) const {
    if (!(f.spec() == spec))
      throw std::invalid_argument("SpectralOperator: field on a different grid");
    auto ws = pool.lease();
    std::copy(f.values().begin(), f.values().end(), ws->real.get());
    plan.forward(ws->real.get(), ws->spectrum.get());
    const double norm = 1.0 / static_cast<double>(spec.size());
    for (std::size_t c = 0; c < symbol.size(); ++c) {
      const double m = multiplier(symbol[c]) * norm;
      ws->spectrum[c][0] *= m;
      ws->spectrum[c][1] *= m;
    }
    Field out(spec);
    plan.backward(ws->spectrum.get(), ws->real.get());
    std::copy(ws->real.get(), ws->real.get() + spec.size(), out.values().begin());
    return out;
  }

  GridSpec spec;
  detail::RealFftPlan plan;
  mutable detail::WorkspacePool pool;
  std::vector<double> symbol;
};

SpectralOperator::SpectralOperator(const GridSpec &spec)
    : impl_(std::make_unique<Impl>(spec)) {}
SpectralOperator::~SpectralOperator() = default;
SpectralOperator::SpectralOperator(SpectralOperator &&) noexcept = default;
SpectralOperator &
SpectralOperator::operator=(SpectralOperator &&) noexcept = default;

const GridSpec &SpectralOperator::spec() const noexcept { return impl_->spec; }

Field SpectralOperator::laplacian(const Field &f) const {
  return impl_->apply(f, [](double k2) { return -k2; });
}

Field SpectralOperator::helmholtz(const Field &f) const {
  return impl_->apply(f, [](double k2) { return 1.0 + k2; });
}

Field SpectralOperator::inverse_helmholtz(const Field &f) const {
  return impl_->apply(f, [](double k2) { return 1.0 / (1.0 + k2); });
}

double SpectralOperator::gradient_norm_sq(const Field &f) const {
  // <f, -Lap f> through Parseval, with the Hermitian half-spectrum weights.
  const auto &spec = impl_->spec;
  if (!(f.spec() == spec))
    throw std::invalid_argument("SpectralOperator: field on a different grid");
  auto ws = impl_->pool.lease();
  std::copy(f.values().begin(), f.values().end(), ws->real.get());
  impl_->plan.forward(ws->real.get(), ws->spectrum.get());
  const std::size_t M = spec.M();
  const std::size_t last = M / 2 + 1;
  double sum = 0.0;
  for (std::size_t c = 0; c < impl_->symbol.size(); ++c) {
    const std::size_t m = c % last;
    const double weight = (m == 0 || m == M / 2) ? 1.0 : 2.0;
    const double re = ws->spectrum[c][0];
    const double im = ws->spectrum[c][1];
    sum += weight * impl_->symbol[c] * (re * re + im * im);
  }
  return spec.cell_volume() * sum / static_cast<double>(spec.size());
}

double gradient_norm_sq(const Field &f) {
  return SpectralOperator(f.spec()).gradient_norm_sq(f);
}

double h1_norm_sq(const Field &f) {
  return gradient_norm_sq(f) + inner(f, f);
}

Field laplacian(const Field &f) { return SpectralOperator(f.spec()).laplacian(f); }

//==============================================================================
Field fourier_resample(const Field &f, const GridSpec &target) {
  const auto &src = f.spec();
  if (src.N() != target.N() || src.L() != target.L())
    throw std::invalid_argument("fourier_resample: grids must share N and L");
  if (src == target)
    return f;

  const detail::RealFftPlan from(grid_dims(src));
  const detail::RealFftPlan to(grid_dims(target));
  detail::FftWorkspace a(from), b(to);
  std::copy(f.values().begin(), f.values().end(), a.real.get());
  from.forward(a.real.get(), a.spectrum.get());

  const std::size_t Ms = src.M(), Mt = target.M();
  // Keep |frequency| < min(Ms, Mt)/2 on every axis.
  const long keep = static_cast<long>(std::min(Ms, Mt) / 2);
  const std::size_t last_s = Ms / 2 + 1, last_t = Mt / 2 + 1;
  const int N = src.N();
  std::fill_n(&b.spectrum[0][0], 2 * to.complex_size(), 0.0);

  for (std::size_t c = 0; c < from.complex_size(); ++c) {
    const long kl = static_cast<long>(c % last_s);
    if (kl >= keep)
      continue;
    std::size_t rest = c / last_s;
    std::size_t target_index = static_cast<std::size_t>(kl);
    std::size_t stride = last_t;
    bool inside = true;
    for (int d = 0; d < N - 1; ++d) {
      const long k = detail::signed_frequency(rest % Ms, Ms);
      rest /= Ms;
      if (std::abs(k) >= keep) {
        inside = false;
        break;
      }
      const std::size_t slot =
          k >= 0 ? static_cast<std::size_t>(k)
                 : static_cast<std::size_t>(static_cast<long>(Mt) + k);
      target_index += slot * stride;
      stride *= Mt;
    }
    if (!inside)
      continue;
    b.spectrum[target_index][0] = a.spectrum[c][0];
    b.spectrum[target_index][1] = a.spectrum[c][1];
  }

  to.backward(b.spectrum.get(), b.real.get());
  const double norm = 1.0 / static_cast<double>(src.size());
  Field out(target);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = b.real[i] * norm;
  return out;
}

Field translate(const Field &f, const Point &shift) {
  const auto &spec = f.spec();
  const detail::RealFftPlan plan(grid_dims(spec));
  detail::FftWorkspace ws(plan);
  std::copy(f.values().begin(), f.values().end(), ws.real.get());
  plan.forward(ws.real.get(), ws.spectrum.get());

  const std::size_t M = spec.M(), last = M / 2 + 1;
  const int N = spec.N();
  const double k0 = M_PI / spec.L();
  for (std::size_t c = 0; c < plan.complex_size(); ++c) {
    // Axis N-1 is the halved one; the others follow from slowest to fastest.
    std::array<std::size_t, 3> m{0, 0, 0};
    m[static_cast<std::size_t>(N - 1)] = c % last;
    std::size_t rest = c / last;
    for (int d = N - 2; d >= 0; --d) {
      m[static_cast<std::size_t>(d)] = rest % M;
      rest /= M;
    }
    std::complex<double> phase = 1.0;
    for (int d = 0; d < N; ++d) {
      const auto a = static_cast<std::size_t>(d);
      const double arg = k0 * static_cast<double>(detail::signed_frequency(m[a], M)) * shift[a];
      // The Nyquist mode is real: its interpolant is cos, which shifts to cos.
      phase *= m[a] == M / 2 ? std::complex<double>(std::cos(arg), 0.0)
                             : std::polar(1.0, -arg);
    }
    const std::complex<double> z(ws.spectrum[c][0], ws.spectrum[c][1]);
    const auto r = z * phase;
    ws.spectrum[c][0] = r.real();
    ws.spectrum[c][1] = r.imag();
  }
  plan.backward(ws.spectrum.get(), ws.real.get());
  const double norm = 1.0 / static_cast<double>(spec.size());
  Field out(spec);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = ws.real[i] * norm;
  return out;
}

Field roll(const Field &f, const std::array<long, 3> &shift) {
  const auto &spec = f.spec();
  const long M = static_cast<long>(spec.M());
  Field out(spec);
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto idx = spec.unravel(i);
    for (int d = 0; d < spec.N(); ++d) {
      const auto a = static_cast<std::size_t>(d);
      idx[a] = static_cast<std::size_t>(
          ((static_cast<long>(idx[a]) + shift[a]) % M + M) % M);
    }
    out[spec.ravel(idx)] = f[i];
  }
  return out;
}

//==============================================================================
long min_image_offset(std::size_t idx, std::size_t center, std::size_t M) noexcept {
  const long m = static_cast<long>(M);
  long d = static_cast<long>(idx) - static_cast<long>(center);
  d = ((d % m) + m) % m;
  if (d >= m / 2)
    d -= m;
  return d;
}

RadialProfile radial_profile(const Field &f,
                             const std::array<std::size_t, 3> &center) {
  const auto &spec = f.spec();
  for (int d = 0; d < spec.N(); ++d)
    if (center[static_cast<std::size_t>(d)] >= spec.M())
      throw std::invalid_argument("radial_profile: center is off the grid");

  const double h = spec.h();
  const auto nbins = static_cast<std::size_t>(std::floor(spec.L() / h)) + 1;
  std::vector<double> sum(nbins, 0.0), rsum(nbins, 0.0), peak(nbins, 0.0);
  std::vector<std::size_t> count(nbins, 0);

  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto idx = spec.unravel(i);
    long n2 = 0;
    for (int d = 0; d < spec.N(); ++d) {
      const auto a = static_cast<std::size_t>(d);
      const long o = min_image_offset(idx[a], center[a], spec.M());
      n2 += o * o;
    }
    const double r = h * std::sqrt(static_cast<double>(n2));
    if (r > spec.L())
      continue;
    const auto j = std::min(static_cast<std::size_t>(r / h), nbins - 1);
    sum[j] += f[i];
    rsum[j] += r;
    peak[j] = std::max(peak[j], std::abs(f[i]));
    ++count[j];
  }

  RadialProfile prof;
  prof.center = center;
  for (std::size_t j = 0; j < nbins; ++j) {
    if (count[j] == 0)
      continue;
    const double n = static_cast<double>(count[j]);
    prof.radius.push_back((static_cast<double>(j) + 0.5) * h);
    prof.mean_radius.push_back(rsum[j] / n);
    prof.mean.push_back(sum[j] / n);
    prof.max_abs.push_back(peak[j]);
    prof.count.push_back(count[j]);
  }
  return prof;
}

} // namespace hartree
