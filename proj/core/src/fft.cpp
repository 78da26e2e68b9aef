#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <map>
#include <mutex>
#include <tuple>

namespace rellich::detail {
namespace {

struct PlanPair {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

// FFTW's planner is not thread-safe; execution with the new-array interface is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plans] : plans_) {
      fftw_destroy_plan(plans.r2c);
      fftw_destroy_plan(plans.c2r);
    }
  }

  PlanPair get(const PeriodicGrid& grid) {
    const auto key = std::make_tuple(grid.dim(), grid.size(0), grid.dim() == 2 ? grid.size(1) : 0);
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    const std::size_t n_real = grid.count();
    const std::size_t n_cplx = half_count(grid);
    double* real = fftw_alloc_real(n_real);
    fftw_complex* cplx = fftw_alloc_complex(n_cplx);
    PlanPair plans;
    if (grid.dim() == 1) {
      plans.r2c = fftw_plan_dft_r2c_1d(grid.size(0), real, cplx, FFTW_ESTIMATE);
      plans.c2r = fftw_plan_dft_c2r_1d(grid.size(0), cplx, real, FFTW_ESTIMATE);
    } else {
      plans.r2c = fftw_plan_dft_r2c_2d(grid.size(0), grid.size(1), real, cplx, FFTW_ESTIMATE);
      plans.c2r = fftw_plan_dft_c2r_2d(grid.size(0), grid.size(1), cplx, real, FFTW_ESTIMATE);
    }
    fftw_free(real);
    fftw_free(cplx);
    plans_.emplace(key, plans);
    return plans;
  }

  static std::size_t half_count(const PeriodicGrid& grid) {
    if (grid.dim() == 1) return static_cast<std::size_t>(grid.size(0) / 2 + 1);
    return static_cast<std::size_t>(grid.size(0)) * static_cast<std::size_t>(grid.size(1) / 2 + 1);
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, PlanPair> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

// fftw_malloc'd scratch so the new-array execute functions see the alignment
// the plans were made with.
struct Scratch {
  explicit Scratch(const PeriodicGrid& grid)
      : real(fftw_alloc_real(grid.count())),
        cplx(fftw_alloc_complex(PlanCache::half_count(grid))) {}
  ~Scratch() {
    fftw_free(real);
    fftw_free(cplx);
  }
  Scratch(const Scratch&) = delete;
  Scratch& operator=(const Scratch&) = delete;

  double* real;
  fftw_complex* cplx;
};

}  // namespace

void r2c(const PeriodicGrid& grid, const double* in, std::complex<double>* out) {
  const PlanPair plans = cache().get(grid);
  Scratch s(grid);
  std::copy(in, in + grid.count(), s.real);
  fftw_execute_dft_r2c(plans.r2c, s.real, s.cplx);
  std::memcpy(static_cast<void*>(out), s.cplx, sizeof(fftw_complex) * PlanCache::half_count(grid));
}

void c2r(const PeriodicGrid& grid, const std::complex<double>* in, double* out) {
  const PlanPair plans = cache().get(grid);
  Scratch s(grid);
  std::memcpy(static_cast<void*>(s.cplx), in, sizeof(fftw_complex) * PlanCache::half_count(grid));
  fftw_execute_dft_c2r(plans.c2r, s.cplx, s.real);
  std::copy(s.real, s.real + grid.count(), out);
}

}  // namespace rellich::detail
