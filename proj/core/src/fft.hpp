#pragma once

// FFTW plumbing shared by the spectral operators and the Riesz convolution.
// Not part of the installed interface.

#include <fftw3.h>

#include <cstddef>
#include <memory>
#include <mutex>
#include <vector>

namespace hartree::detail {

struct FftwDeleter {
  void operator()(void *p) const noexcept { fftw_free(p); }
};

template <class T> using FftwArray = std::unique_ptr<T[], FftwDeleter>;

FftwArray<double> alloc_real(std::size_t n);
FftwArray<fftw_complex> alloc_complex(std::size_t n);

// A pair of r2c / c2r plans for a fixed real shape. Plans are created with
// FFTW_ESTIMATE so the chosen algorithm (and so every result bit) does not
// depend on timing. Execution takes caller-owned, fftw_malloc'ed buffers and
// is safe to call concurrently.
class RealFftPlan {
public:
  explicit RealFftPlan(std::vector<int> dims);
  ~RealFftPlan();
  RealFftPlan(const RealFftPlan &) = delete;
  RealFftPlan &operator=(const RealFftPlan &) = delete;

  const std::vector<int> &dims() const noexcept { return dims_; }
  std::size_t real_size() const noexcept { return real_size_; }
  std::size_t complex_size() const noexcept { return complex_size_; }

  // Unnormalised transforms. backward() overwrites its input.
  void forward(double *in, fftw_complex *out) const;
  void backward(fftw_complex *in, double *out) const;

private:
  std::vector<int> dims_;
  std::size_t real_size_;
  std::size_t complex_size_;
  fftw_plan forward_{};
  fftw_plan backward_{};
};

// Scratch arrays sized for one plan.
struct FftWorkspace {
  explicit FftWorkspace(const RealFftPlan &plan)
      : real(alloc_real(plan.real_size())),
        spectrum(alloc_complex(plan.complex_size())) {}
  FftwArray<double> real;
  FftwArray<fftw_complex> spectrum;
};

// Reusable workspaces for one plan. lease() hands out an idle workspace or
// allocates a new one; the lease returns it on destruction.
class WorkspacePool {
public:
  explicit WorkspacePool(const RealFftPlan &plan) : plan_(&plan) {}

  class Lease {
  public:
    Lease(WorkspacePool &pool, std::unique_ptr<FftWorkspace> ws)
        : pool_(&pool), ws_(std::move(ws)) {}
    Lease(Lease &&) = default;
    ~Lease() {
      if (ws_)
        pool_->give_back(std::move(ws_));
    }
    FftWorkspace *operator->() const noexcept { return ws_.get(); }

  private:
    WorkspacePool *pool_;
    std::unique_ptr<FftWorkspace> ws_;
  };

  Lease lease() {
    {
      std::lock_guard lock(mutex_);
      if (!idle_.empty()) {
        auto ws = std::move(idle_.back());
        idle_.pop_back();
        return Lease(*this, std::move(ws));
      }
    }
    return Lease(*this, std::make_unique<FftWorkspace>(*plan_));
  }

private:
  void give_back(std::unique_ptr<FftWorkspace> ws) {
    std::lock_guard lock(mutex_);
    idle_.push_back(std::move(ws));
  }

  const RealFftPlan *plan_;
  std::mutex mutex_;
  std::vector<std::unique_ptr<FftWorkspace>> idle_;
};

// Signed integer frequency of DFT index m on an axis of length n; the Nyquist
// index n/2 maps to +n/2.
inline long signed_frequency(std::size_t m, std::size_t n) noexcept {
  return m <= n / 2 ? static_cast<long>(m)
                    : static_cast<long>(m) - static_cast<long>(n);
}

} // namespace hartree::detail
