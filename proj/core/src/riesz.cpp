#include "hartree/riesz.hpp"

#include "fft.hpp"
#include "hartree/params.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>
#include <array>

namespace hartree {

namespace {

// Gaussian-weighted punctured lattice sum defect on the unit lattice Z^N:
//   int |y|^{-s} g - sum_{j != 0} |j|^{-s} g(j),  g = exp(-|y|^2/(2 sigma^2)).
double lattice_defect(int N, double s, double sigma) {
  const double two_sigma2 = 2.0 * sigma * sigma;
  const double sphere = 2.0 * std::pow(M_PI, 0.5 * N) / std::tgamma(0.5 * N);
  const double integral =
      sphere * 0.5 * std::pow(two_sigma2, 0.5 * (N - s)) * std::tgamma(0.5 * (N - s));

  // Truncated at |j| <= 9 sigma where the Gaussian is below e^{-40}.
  const long R = static_cast<long>(std::ceil(9.0 * sigma));
  const long R2 = R * R;
  long double sum = 0.0L;
  const long jmax1 = N >= 2 ? R : 0;
  const long jmax2 = N >= 3 ? R : 0;
  // Octant sum with multiplicity 2 per nonzero coordinate.
  for (long a = 0; a <= R; ++a)
    for (long b = 0; b <= jmax1; ++b)
      for (long c = 0; c <= jmax2; ++c) {
        const long n2 = a * a + b * b + c * c;
        if (n2 == 0 || n2 > R2)
          continue;
        const int mult = (a ? 2 : 1) * (b ? 2 : 1) * (c ? 2 : 1);
        const double r2 = static_cast<double>(n2);
        sum += mult * std::pow(r2, -0.5 * s) * std::exp(-r2 / two_sigma2);
      }
  return integral - static_cast<double>(sum);
}

} // namespace

double lattice_zeta_constant(int N, double alpha) {
  static std::mutex mutex;
  static std::map<std::pair<int, double>, double> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find({N, alpha}); it != cache.end())
      return it->second;
  }
  // The defect expands in even powers of 1/sigma; two Richardson levels on
  // sigma = 4, 8, 16 leave an O(sigma^-6) remainder.
  const double s = N - alpha;
  const double d4 = lattice_defect(N, s, 4.0);
  const double d8 = lattice_defect(N, s, 8.0);
  const double d16 = lattice_defect(N, s, 16.0);
  const double r1 = (4.0 * d8 - d4) / 3.0;
  const double r2 = (4.0 * d16 - d8) / 3.0;
  const double value = (16.0 * r2 - r1) / 15.0;
  std::lock_guard lock(mutex);
  cache.emplace(std::make_pair(N, alpha), value);
  return value;
}

double origin_weight(int N, double alpha, double h, OriginRule rule) {
  const double c = riesz_constant(N, alpha);
  const double s = N - alpha;
  if (rule == OriginRule::LatticeCorrected)
    return c * lattice_zeta_constant(N, alpha) * std::pow(h, -s);

  // Cell average by 16^N sub-cell midpoints, in units of h (scale h^{-s}).
  constexpr int sub = 16;
  const int n1 = sub, n2 = N >= 2 ? sub : 1, n3 = N >= 3 ? sub : 1;
  double sum = 0.0;
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j)
      for (int k = 0; k < n3; ++k) {
        const double y0 = (i + 0.5) / sub - 0.5;
        const double y1 = N >= 2 ? (j + 0.5) / sub - 0.5 : 0.0;
        const double y2 = N >= 3 ? (k + 0.5) / sub - 0.5 : 0.0;
        sum += std::pow(y0 * y0 + y1 * y1 + y2 * y2, -0.5 * s);
      }
  return c * std::pow(h, -s) * sum / (static_cast<double>(n1) * n2 * n3);
}

double kernel_value(int N, double alpha, const Point &x, double h,
                    OriginRule rule) {
  double r2 = 0.0;
  for (int d = 0; d < N; ++d)
    r2 += x[static_cast<std::size_t>(d)] * x[static_cast<std::size_t>(d)];
  if (r2 == 0.0)
    return origin_weight(N, alpha, h, rule);
  return riesz_constant(N, alpha) * std::pow(r2, -0.5 * (N - alpha));
}

//==============================================================================
namespace {

// Positions (in cells, 0..M per axis) that a torus node occupies in the
// closed cube, with their mass fractions. The plane k = 0 stands for both
// faces x = -L and x = +L and is split evenly between them.
struct Image {
  std::array<long, 3> pos;
  double weight;
};

std::vector<Image> node_images(const GridSpec &spec, std::size_t flat) {
  const auto idx = spec.unravel(flat);
  std::vector<Image> out{{{0, 0, 0}, 1.0}};
  for (int d = 0; d < spec.N(); ++d) {
    const auto a = static_cast<std::size_t>(d);
    const long k = static_cast<long>(idx[a]);
    if (k != 0) {
      for (auto &im : out)
        im.pos[a] = k;
      continue;
    }
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) {
      out[i].weight *= 0.5;
      out.push_back(out[i]);
      out.back().pos[a] = static_cast<long>(spec.M());
    }
  }
  return out;
}

} // namespace

Field riesz_direct(const Field &f, double alpha, OriginRule rule) {
  const auto &spec = f.spec();
  if (spec.size() > kDirectSumLimit)
    throw std::invalid_argument("riesz_direct: grid too large for the O(M^2N) sum");
  if (!(alpha > 0.0 && alpha < spec.N()))
    throw std::invalid_argument("riesz_direct: alpha must lie in (0, N)");

  const int N = spec.N();
  const double h = spec.h();
  const double w0 = origin_weight(N, alpha, h, rule);
  const double c = riesz_constant(N, alpha);
  const double s = N - alpha;

  std::vector<std::vector<Image>> images(spec.size());
  for (std::size_t i = 0; i < spec.size(); ++i)
    images[i] = node_images(spec, i);

  Field out(spec);
  for (std::size_t i = 0; i < spec.size(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < spec.size(); ++j) {
      if (f[j] == 0.0)
        continue;
      for (const auto &a : images[i])
        for (const auto &b : images[j]) {
          double n2 = 0.0;
          for (int d = 0; d < N; ++d) {
            const auto o = static_cast<double>(a.pos[static_cast<std::size_t>(d)] -
                                               b.pos[static_cast<std::size_t>(d)]);
            n2 += o * o;
          }
          const double k = n2 == 0.0 ? w0 : c * std::pow(n2 * h * h, -0.5 * s);
          acc += a.weight * b.weight * k * f[j];
        }
    }
    out[i] = spec.cell_volume() * acc;
  }
  return out;
}

//==============================================================================
struct RieszPlan::Impl {
  Impl(const GridSpec &s, double a, OriginRule r)
      : spec(s), alpha(a), rule(r), c_alpha(riesz_constant(s.N(), a)),
        plan(std::vector<int>(static_cast<std::size_t>(s.N()),
                              static_cast<int>(2 * s.M()))),
        pool(plan), multiplier(plan.complex_size()) {
    const int N = s.N();
    const std::size_t P = 2 * s.M();
    const double h = s.h();
    const double w0 = origin_weight(N, a, h, r);
    const double sexp = N - a;

    // Kernel samples on the padded torus; offsets j >= M wrap to j - 2M.
    auto ws = pool.lease();
    for (std::size_t i = 0; i < plan.real_size(); ++i) {
      std::size_t rest = i;
      double n2 = 0.0;
      for (int d = 0; d < N; ++d) {
        const double o = static_cast<double>(detail::signed_frequency(rest % P, P));
        n2 += o * o;
        rest /= P;
      }
      ws->real[i] = n2 == 0.0 ? w0 : c_alpha * std::pow(n2 * h * h, -0.5 * sexp);
    }
    plan.forward(ws->real.get(), ws->spectrum.get());
    // The kernel is even, so its transform is real. Quadrature weight and the
    // inverse-transform normalisation are folded in here.
    const double scale = s.cell_volume() / static_cast<double>(plan.real_size());
    for (std::size_t c = 0; c < multiplier.size(); ++c)
      multiplier[c] = ws->spectrum[c][0] * scale;
  }

  GridSpec spec;
  double alpha;
  OriginRule rule;
  double c_alpha;
  detail::RealFftPlan plan;
  mutable detail::WorkspacePool pool;
  std::vector<double> multiplier;
};

RieszPlan::RieszPlan(const GridSpec &spec, double alpha, OriginRule rule) {
  if (!(alpha > 0.0 && alpha < spec.N()))
    throw std::invalid_argument("RieszPlan: alpha must lie in (0, N)");
  impl_ = std::make_unique<Impl>(spec, alpha, rule);
}

RieszPlan::~RieszPlan() = default;
RieszPlan::RieszPlan(RieszPlan &&) noexcept = default;
RieszPlan &RieszPlan::operator=(RieszPlan &&) noexcept = default;

const GridSpec &RieszPlan::spec() const noexcept { return impl_->spec; }
double RieszPlan::alpha() const noexcept { return impl_->alpha; }
double RieszPlan::c_alpha() const noexcept { return impl_->c_alpha; }
OriginRule RieszPlan::origin_rule() const noexcept { return impl_->rule; }

namespace {

// Calls fn(offset) for every padded entry whose axis-d index is 0 and whose
// other indices run over 0..M. fn receives the offset and the axis stride.
template <class Fn>
void for_face(int N, std::size_t M, std::size_t P, int axis, Fn &&fn) {
  std::array<std::size_t, 3> idx{0, 0, 0};
  std::array<std::size_t, 3> stride{1, 1, 1};
  for (int d = N - 2; d >= 0; --d)
    stride[static_cast<std::size_t>(d)] = stride[static_cast<std::size_t>(d) + 1] * P;
  const auto ax = static_cast<std::size_t>(axis);
  while (true) {
    std::size_t off = 0;
    for (int d = 0; d < N; ++d)
      off += idx[static_cast<std::size_t>(d)] * stride[static_cast<std::size_t>(d)];
    fn(off, stride[ax]);
    int d = N - 1;
    for (; d >= 0; --d) {
      const auto a = static_cast<std::size_t>(d);
      if (a == ax)
        continue;
      if (++idx[a] <= M)
        break;
      idx[a] = 0;
    }
    if (d < 0)
      return;
  }
}

} // namespace

Field RieszPlan::apply(const Field &f) const {
  const auto &spec = impl_->spec;
  if (!(f.spec() == spec))
    throw std::invalid_argument("RieszPlan::apply: field on a different grid");

  const int N = spec.N();
  const std::size_t M = spec.M();
  const std::size_t P = 2 * M;
  auto ws = impl_->pool.lease();
  double *buf = ws->real.get();
  std::fill_n(buf, impl_->plan.real_size(), 0.0);

  // Embed in the low corner of the padded box, row by row along the last axis.
  const std::size_t rows = spec.size() / M;
  auto padded_row = [&](std::size_t row) {
    std::size_t offset = 0, stride = P, rest = row;
    for (int d = 0; d < N - 1; ++d) {
      offset += (rest % M) * stride;
      rest /= M;
      stride *= P;
    }
    return offset;
  };
  for (std::size_t row = 0; row < rows; ++row)
    std::copy_n(f.values().begin() + static_cast<long>(row * M), M,
                buf + padded_row(row));

  // The plane k = 0 is both faces of the closed cube: half its mass goes to
  // index M. Offsets of +-M alias on the 2M torus, harmlessly since the
  // kernel is even.
  for (int d = 0; d < N; ++d)
    for_face(N, M, P, d, [&](std::size_t off, std::size_t stride) {
      buf[off] *= 0.5;
      buf[off + M * stride] = buf[off];
    });

  impl_->plan.forward(buf, ws->spectrum.get());
  for (std::size_t c = 0; c < impl_->multiplier.size(); ++c) {
    ws->spectrum[c][0] *= impl_->multiplier[c];
    ws->spectrum[c][1] *= impl_->multiplier[c];
  }
  impl_->plan.backward(ws->spectrum.get(), buf);

  // Adjoint of the split: the boundary plane sees the mean of both faces.
  for (int d = 0; d < N; ++d)
    for_face(N, M, P, d, [&](std::size_t off, std::size_t stride) {
      buf[off] = 0.5 * (buf[off] + buf[off + M * stride]);
    });

  Field out(spec);
  for (std::size_t row = 0; row < rows; ++row)
    std::copy_n(buf + padded_row(row), M,
                out.values().begin() + static_cast<long>(row * M));
  return out;
}

double hls_pairing(const RieszPlan &plan, const Field &f, const Field &g) {
  return inner(plan.apply(f), g) / plan.c_alpha();
}

} // namespace hartree
