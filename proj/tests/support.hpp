#pragma once

#include "hartree/grid.hpp"

#include <cmath>
#include <cstdint>
#include <random>

namespace hartree::test {

inline double uniform(std::mt19937_64 &gen, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(gen() >> 11) * 0x1.0p-53);
}

// Sum of a few Gaussian bumps with centers in the middle third of the cube.
// Amplitudes are positive unless signed is set.
inline Field random_bumps(const GridSpec &spec, std::mt19937_64 &gen,
                          bool signed_amplitudes = false, int bumps = 3) {
  struct B {
    Point c{0, 0, 0};
    double w, a;
  };
  std::vector<B> list;
  const double reach = spec.L() / 3.0;
  for (int b = 0; b < bumps; ++b) {
    B x{};
    for (int d = 0; d < spec.N(); ++d)
      x.c[static_cast<std::size_t>(d)] = uniform(gen, -reach, reach);
    x.w = uniform(gen, 0.6, 1.4);
    x.a = uniform(gen, 0.5, 1.5);
    if (signed_amplitudes && (gen() & 1))
      x.a = -x.a;
    list.push_back(x);
  }
  return Field::sample(spec, [&](const Point &p) {
    double s = 0.0;
    for (const auto &b : list) {
      double r2 = 0.0;
      for (int d = 0; d < spec.N(); ++d) {
        const auto a = static_cast<std::size_t>(d);
        r2 += (p[a] - b.c[a]) * (p[a] - b.c[a]);
      }
      s += b.a * std::exp(-r2 / (b.w * b.w));
    }
    return s;
  });
}

// exp(-h^2 n / w^2) with n the integer squared offset from the grid center:
// exactly equal on every node of one distance shell.
inline Field centered_gaussian(const GridSpec &spec, double width = 1.0) {
  Field f(spec);
  const auto c = spec.center();
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const auto idx = spec.unravel(i);
    long n = 0;
    for (int d = 0; d < spec.N(); ++d) {
      const auto a = static_cast<std::size_t>(d);
      const long o = static_cast<long>(idx[a]) - static_cast<long>(c[a]);
      n += o * o;
    }
    f[i] = std::exp(-spec.h() * spec.h() * static_cast<double>(n) / (width * width));
  }
  return f;
}

inline double max_abs(const Field &f) {
  double m = 0.0;
  for (double x : f.values())
    m = std::max(m, std::abs(x));
  return m;
}

inline double max_abs_diff(const Field &a, const Field &b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

} // namespace hartree::test
