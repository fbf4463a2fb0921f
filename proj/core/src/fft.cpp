#include "fft.hpp"

#include <functional>
#include <mutex>
#include <new>
#include <numeric>
#include <stdexcept>

namespace hartree::detail {

namespace {
// The FFTW planner is not thread safe.
std::mutex &planner_mutex() {
  static std::mutex m;
  return m;
}
} // namespace

FftwArray<double> alloc_real(std::size_t n) {
  auto *p = fftw_alloc_real(n);
  if (!p)
    throw std::bad_alloc();
  return FftwArray<double>(p);
}

FftwArray<fftw_complex> alloc_complex(std::size_t n) {
  auto *p = fftw_alloc_complex(n);
  if (!p)
    throw std::bad_alloc();
  return FftwArray<fftw_complex>(p);
}

RealFftPlan::RealFftPlan(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty())
    throw std::invalid_argument("RealFftPlan: empty shape");
  real_size_ = std::accumulate(dims_.begin(), dims_.end(), std::size_t{1},
                               std::multiplies<>());
  complex_size_ = real_size_ / static_cast<std::size_t>(dims_.back()) *
                  static_cast<std::size_t>(dims_.back() / 2 + 1);

  // Planning with ESTIMATE never touches the arrays, but FFTW still wants
  // buffers with the alignment later executions will use.
  FftWorkspace probe_real{*this};
  const int rank = static_cast<int>(dims_.size());
  std::lock_guard lock(planner_mutex());
  forward_ = fftw_plan_dft_r2c(rank, dims_.data(), probe_real.real.get(),
                               probe_real.spectrum.get(), FFTW_ESTIMATE);
  backward_ = fftw_plan_dft_c2r(rank, dims_.data(), probe_real.spectrum.get(),
                                probe_real.real.get(), FFTW_ESTIMATE);
  if (!forward_ || !backward_)
    throw std::runtime_error("RealFftPlan: FFTW planning failed");
}

RealFftPlan::~RealFftPlan() {
  std::lock_guard lock(planner_mutex());
  if (forward_)
    fftw_destroy_plan(forward_);
  if (backward_)
    fftw_destroy_plan(backward_);
}

void RealFftPlan::forward(double *in, fftw_complex *out) const {
  fftw_execute_dft_r2c(forward_, in, out);
}

void RealFftPlan::backward(fftw_complex *in, double *out) const {
  fftw_execute_dft_c2r(backward_, in, out);
}

} // namespace hartree::detail
