#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <new>
#include <tuple>

namespace mixsmooth::detail {
namespace {

std::mutex g_plan_mutex;

// Plans live for the whole process; FFTW planning is not thread-safe but
// executing an existing plan on fresh arrays is.
fftw_plan plan_for(std::size_t n1, std::size_t n2, bool forward) {
  static std::map<std::tuple<std::size_t, std::size_t, bool>, fftw_plan> cache;
  std::lock_guard lock(g_plan_mutex);
  auto key = std::make_tuple(n1, n2, forward);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  const std::size_t half = (n1 / 2 + 1) * n2;
  auto* c = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * half));
  auto* r = static_cast<double*>(fftw_malloc(sizeof(double) * n1 * n2));
  fftw_plan p;
  const int a = static_cast<int>(n1);
  const int b = static_cast<int>(n2);
  if (n2 == 1) {
    p = forward ? fftw_plan_dft_r2c_1d(a, r, c, FFTW_ESTIMATE) : fftw_plan_dft_c2r_1d(a, c, r, FFTW_ESTIMATE);
  } else {
    p = forward ? fftw_plan_dft_r2c_2d(b, a, r, c, FFTW_ESTIMATE)
                : fftw_plan_dft_c2r_2d(b, a, c, r, FFTW_ESTIMATE);
  }
  fftw_free(c);
  fftw_free(r);
  if (p == nullptr) throw std::bad_alloc();
  cache.emplace(key, p);
  return p;
}

}  // namespace

FftWorkspace::FftWorkspace(std::size_t n1, std::size_t n2) : n1_(n1), n2_(n2) {
  half_ = reinterpret_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * half_n1() * n2));
  real_ = static_cast<double*>(fftw_malloc(sizeof(double) * n1 * n2));
  if (half_ == nullptr || real_ == nullptr) {
    fftw_free(half_);
    fftw_free(real_);
    throw std::bad_alloc();
  }
}

FftWorkspace::~FftWorkspace() {
  fftw_free(half_);
  fftw_free(real_);
}

void FftWorkspace::to_real() {
  fftw_execute_dft_c2r(plan_for(n1_, n2_, false), reinterpret_cast<fftw_complex*>(half_), real_);
}

void FftWorkspace::to_half() {
  fftw_execute_dft_r2c(plan_for(n1_, n2_, true), real_, reinterpret_cast<fftw_complex*>(half_));
}

}  // namespace mixsmooth::detail
