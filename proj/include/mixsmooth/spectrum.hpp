#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace mixsmooth {

using Complex = std::complex<double>;

/// Fourier coefficients c(k), k in [-kmax, kmax], of a 2pi-periodic function
/// of one variable: f(x) = sum_k c(k) e^{ikx}.
class Spectrum1D {
 public:
  Spectrum1D() = default;
  explicit Spectrum1D(int kmax);
  Spectrum1D(int kmax, std::vector<Complex> coeffs);

  int kmax() const { return kmax_; }
  std::size_t size() const { return coeffs_.size(); }

  Complex& at(int k) { return coeffs_[index(k)]; }
  const Complex& at(int k) const { return coeffs_[index(k)]; }

  const std::vector<Complex>& coeffs() const { return coeffs_; }
  std::vector<Complex>& coeffs() { return coeffs_; }

  /// Largest |k| carrying a nonzero coefficient (0 for the zero spectrum).
  int effective_band() const;
  double max_abs() const;
  /// max |c(k) - conj(c(-k))|; zero for spectra of real functions.
  double hermitian_defect() const;
  /// Spectrum of Re f.
  Spectrum1D hermitian_part() const;
  /// Same function, coefficient band changed to kmax (truncating if smaller).
  Spectrum1D with_band(int kmax) const;

  Spectrum1D& operator+=(const Spectrum1D& other);
  Spectrum1D& operator-=(const Spectrum1D& other);
  Spectrum1D& operator*=(Complex scale);

 private:
  std::size_t index(int k) const;

  int kmax_ = 0;
  std::vector<Complex> coeffs_{Complex{}};
};

Spectrum1D operator+(Spectrum1D a, const Spectrum1D& b);
Spectrum1D operator-(Spectrum1D a, const Spectrum1D& b);
Spectrum1D operator*(Complex s, Spectrum1D a);

/// Fourier coefficients c(k1, k2) on the rectangle |k1| <= kmax1, |k2| <= kmax2:
/// f(x1, x2) = sum c(k1, k2) e^{i(k1 x1 + k2 x2)}. Storage is k1-fastest.
class Spectrum2D {
 public:
  Spectrum2D() = default;
  Spectrum2D(int kmax1, int kmax2);
  Spectrum2D(int kmax1, int kmax2, std::vector<Complex> coeffs);

  int kmax1() const { return kmax1_; }
  int kmax2() const { return kmax2_; }
  std::size_t size() const { return coeffs_.size(); }

  Complex& at(int k1, int k2) { return coeffs_[index(k1, k2)]; }
  const Complex& at(int k1, int k2) const { return coeffs_[index(k1, k2)]; }

  const std::vector<Complex>& coeffs() const { return coeffs_; }
  std::vector<Complex>& coeffs() { return coeffs_; }

  int effective_band1() const;
  int effective_band2() const;
  double max_abs() const;
  double hermitian_defect() const;
  Spectrum2D hermitian_part() const;
  Spectrum2D with_band(int kmax1, int kmax2) const;

  Spectrum2D& operator+=(const Spectrum2D& other);
  Spectrum2D& operator-=(const Spectrum2D& other);
  Spectrum2D& operator*=(Complex scale);

 private:
  std::size_t index(int k1, int k2) const;

  int kmax1_ = 0;
  int kmax2_ = 0;
  std::vector<Complex> coeffs_{Complex{}};
};

Spectrum2D operator+(Spectrum2D a, const Spectrum2D& b);
Spectrum2D operator-(Spectrum2D a, const Spectrum2D& b);
Spectrum2D operator*(Complex s, Spectrum2D a);

/// Outer product: spectrum of u(x1) * v(x2).
Spectrum2D outer_product(const Spectrum1D& u, const Spectrum1D& v);

}  // namespace mixsmooth
