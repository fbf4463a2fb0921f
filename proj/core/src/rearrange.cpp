#include "hartree/rearrange.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace hartree {

namespace {

void require_nonnegative(const Field &f, const char *what) {
  for (double x : f.values())
    if (x < 0.0)
      throw std::invalid_argument(std::string(what) + ": negative input");
}

// Flat indices sorted by (squared distance to the center, index). Cached per
// grid shape; the order only depends on N and M.
std::shared_ptr<const std::vector<std::uint32_t>> distance_order(const GridSpec &spec) {
  static std::mutex mutex;
  static std::map<std::pair<int, std::size_t>,
                  std::shared_ptr<const std::vector<std::uint32_t>>>
      cache;
  const auto key = std::make_pair(spec.N(), spec.M());
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end())
      return it->second;
  }

  const auto center = spec.center();
  std::vector<std::uint64_t> dist2(spec.size());
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const auto idx = spec.unravel(i);
    std::uint64_t n2 = 0;
    for (int d = 0; d < spec.N(); ++d) {
      const auto a = static_cast<std::size_t>(d);
      const long o = static_cast<long>(idx[a]) - static_cast<long>(center[a]);
      n2 += static_cast<std::uint64_t>(o * o);
    }
    dist2[i] = n2;
  }
  auto order = std::make_shared<std::vector<std::uint32_t>>(spec.size());
  std::iota(order->begin(), order->end(), 0u);
  std::sort(order->begin(), order->end(), [&](std::uint32_t a, std::uint32_t b) {
    return dist2[a] != dist2[b] ? dist2[a] < dist2[b] : a < b;
  });

  std::lock_guard lock(mutex);
  cache.emplace(key, order);
  return order;
}

} // namespace

Field schwarz(const Field &f) {
  require_nonnegative(f, "schwarz");
  const auto order = distance_order(f.spec());
  std::vector<double> sorted(f.values().begin(), f.values().end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  Field out(f.spec());
  for (std::size_t k = 0; k < sorted.size(); ++k)
    out[(*order)[k]] = sorted[k];
  return out;
}

std::size_t reflect_index(const GridSpec &spec, std::size_t flat, int axis) {
  if (axis < 0 || axis >= spec.N())
    throw std::invalid_argument("reflect_index: axis out of range");
  auto idx = spec.unravel(flat);
  auto &k = idx[static_cast<std::size_t>(axis)];
  k = (spec.M() - k) % spec.M();
  return spec.ravel(idx);
}

Field polarize(const Field &f, const HalfSpace &H) {
  const auto &spec = f.spec();
  if (H.axis < 0 || H.axis >= spec.N())
    throw std::invalid_argument("polarize: axis out of range");
  if (H.orientation != 1 && H.orientation != -1)
    throw std::invalid_argument("polarize: orientation must be +1 or -1");

  const std::size_t half = spec.M() / 2;
  Field out(spec);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const std::size_t k = spec.unravel(i)[static_cast<std::size_t>(H.axis)];
    const double here = f[i];
    const double mirror = f[reflect_index(spec, i, H.axis)];
    // Signed side of the node: +1 for x_axis > 0, -1 for x_axis < 0, 0 on the
    // fixed slabs where here == mirror anyway.
    const int side = (k == 0 || k == half) ? 0 : (k > half ? 1 : -1);
    if (side == 0)
      out[i] = here;
    else if (side == H.orientation)
      out[i] = std::max(here, mirror);
    else
      out[i] = std::min(here, mirror);
  }
  return out;
}

RearrangementCheck riesz_rearrangement_check(const Field &f, const Field &g,
                                             const RieszPlan &plan) {
  require_nonnegative(f, "riesz_rearrangement_check");
  require_nonnegative(g, "riesz_rearrangement_check");
  require_same_grid(f, g);
  const double lhs = inner(plan.apply(f), g);
  const double rhs = inner(plan.apply(schwarz(f)), schwarz(g));
  return {lhs, rhs};
}

} // namespace hartree
