#pragma once

// Thin wrapper over FFTW real transforms. Not part of the public headers.

#include <complex>
#include <cstddef>

namespace mixsmooth::detail {

/// Aligned buffers for one real transform of size n1 x n2 (n2 = 1 for 1D).
/// The half-complex array is laid out [k2 mod n2][k1], k1 in [0, n1/2].
class FftWorkspace {
 public:
  FftWorkspace(std::size_t n1, std::size_t n2);
  ~FftWorkspace();
  FftWorkspace(const FftWorkspace&) = delete;
  FftWorkspace& operator=(const FftWorkspace&) = delete;

  std::size_t n1() const { return n1_; }
  std::size_t n2() const { return n2_; }
  std::size_t half_n1() const { return n1_ / 2 + 1; }

  std::complex<double>* half() { return half_; }
  double* real() { return real_; }

  /// real <- sum over the half spectrum with implied Hermitian symmetry,
  /// using e^{+i}. Unnormalized. Destroys half().
  void to_real();
  /// half <- unnormalized forward transform of real(), using e^{-i}.
  void to_half();

 private:
  std::size_t n1_;
  std::size_t n2_;
  std::complex<double>* half_;
  double* real_;
};

}  // namespace mixsmooth::detail
