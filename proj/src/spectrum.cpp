#include "mixsmooth/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mixsmooth/error.hpp"

namespace mixsmooth {
namespace {

void check_band(int kmax) {
  if (kmax < 0) throw InvalidInput("spectrum band must be nonnegative, got " + std::to_string(kmax));
}

void check_finite(const std::vector<Complex>& c) {
  for (const auto& z : c) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw InvalidInput("spectrum contains a non-finite coefficient");
    }
  }
}

}  // namespace

// ---- Spectrum1D ----

Spectrum1D::Spectrum1D(int kmax) : kmax_(kmax) {
  check_band(kmax);
  coeffs_.assign(2 * static_cast<std::size_t>(kmax) + 1, Complex{});
}

Spectrum1D::Spectrum1D(int kmax, std::vector<Complex> coeffs) : kmax_(kmax), coeffs_(std::move(coeffs)) {
  check_band(kmax);
  if (coeffs_.size() != 2 * static_cast<std::size_t>(kmax) + 1) {
    throw InvalidInput("Spectrum1D: expected 2*kmax+1 coefficients");
  }
  check_finite(coeffs_);
}

std::size_t Spectrum1D::index(int k) const {
  if (k < -kmax_ || k > kmax_) {
    throw InvalidInput("frequency " + std::to_string(k) + " outside band " + std::to_string(kmax_));
  }
  return static_cast<std::size_t>(k + kmax_);
}

int Spectrum1D::effective_band() const {
  for (int k = kmax_; k > 0; --k) {
    if (at(k) != Complex{} || at(-k) != Complex{}) return k;
  }
  return 0;
}

double Spectrum1D::max_abs() const {
  double m = 0;
  for (const auto& z : coeffs_) m = std::max(m, std::abs(z));
  return m;
}

double Spectrum1D::hermitian_defect() const {
  double d = 0;
  for (int k = -kmax_; k <= kmax_; ++k) d = std::max(d, std::abs(at(k) - std::conj(at(-k))));
  return d;
}

Spectrum1D Spectrum1D::hermitian_part() const {
  Spectrum1D out(kmax_);
  for (int k = -kmax_; k <= kmax_; ++k) out.at(k) = 0.5 * (at(k) + std::conj(at(-k)));
  return out;
}

Spectrum1D Spectrum1D::with_band(int kmax) const {
  Spectrum1D out(kmax);
  const int common = std::min(kmax, kmax_);
  for (int k = -common; k <= common; ++k) out.at(k) = at(k);
  return out;
}

Spectrum1D& Spectrum1D::operator+=(const Spectrum1D& other) {
  if (other.kmax_ > kmax_) *this = with_band(other.kmax_);
  for (int k = -other.kmax_; k <= other.kmax_; ++k) at(k) += other.at(k);
  return *this;
}

Spectrum1D& Spectrum1D::operator-=(const Spectrum1D& other) {
  if (other.kmax_ > kmax_) *this = with_band(other.kmax_);
  for (int k = -other.kmax_; k <= other.kmax_; ++k) at(k) -= other.at(k);
  return *this;
}

Spectrum1D& Spectrum1D::operator*=(Complex scale) {
  for (auto& z : coeffs_) z *= scale;
  return *this;
}

Spectrum1D operator+(Spectrum1D a, const Spectrum1D& b) { return a += b; }
Spectrum1D operator-(Spectrum1D a, const Spectrum1D& b) { return a -= b; }
Spectrum1D operator*(Complex s, Spectrum1D a) { return a *= s; }

// ---- Spectrum2D ----

Spectrum2D::Spectrum2D(int kmax1, int kmax2) : kmax1_(kmax1), kmax2_(kmax2) {
  check_band(kmax1);
  check_band(kmax2);
  coeffs_.assign((2 * static_cast<std::size_t>(kmax1) + 1) * (2 * static_cast<std::size_t>(kmax2) + 1),
                 Complex{});
}

Spectrum2D::Spectrum2D(int kmax1, int kmax2, std::vector<Complex> coeffs)
    : kmax1_(kmax1), kmax2_(kmax2), coeffs_(std::move(coeffs)) {
  check_band(kmax1);
  check_band(kmax2);
  if (coeffs_.size() != (2 * static_cast<std::size_t>(kmax1) + 1) * (2 * static_cast<std::size_t>(kmax2) + 1)) {
    throw InvalidInput("Spectrum2D: expected (2*kmax1+1)*(2*kmax2+1) coefficients");
  }
  check_finite(coeffs_);
}

std::size_t Spectrum2D::index(int k1, int k2) const {
  if (k1 < -kmax1_ || k1 > kmax1_ || k2 < -kmax2_ || k2 > kmax2_) {
    throw InvalidInput("frequency (" + std::to_string(k1) + "," + std::to_string(k2) + ") outside band");
  }
  return static_cast<std::size_t>(k1 + kmax1_) +
         (2 * static_cast<std::size_t>(kmax1_) + 1) * static_cast<std::size_t>(k2 + kmax2_);
}

int Spectrum2D::effective_band1() const {
  for (int k1 = kmax1_; k1 > 0; --k1) {
    for (int k2 = -kmax2_; k2 <= kmax2_; ++k2) {
      if (at(k1, k2) != Complex{} || at(-k1, k2) != Complex{}) return k1;
    }
  }
  return 0;
}

int Spectrum2D::effective_band2() const {
  for (int k2 = kmax2_; k2 > 0; --k2) {
    for (int k1 = -kmax1_; k1 <= kmax1_; ++k1) {
      if (at(k1, k2) != Complex{} || at(k1, -k2) != Complex{}) return k2;
    }
  }
  return 0;
}

double Spectrum2D::max_abs() const {
  double m = 0;
  for (const auto& z : coeffs_) m = std::max(m, std::abs(z));
  return m;
}

double Spectrum2D::hermitian_defect() const {
  double d = 0;
  for (int k2 = -kmax2_; k2 <= kmax2_; ++k2) {
    for (int k1 = -kmax1_; k1 <= kmax1_; ++k1) {
      d = std::max(d, std::abs(at(k1, k2) - std::conj(at(-k1, -k2))));
    }
  }
  return d;
}

Spectrum2D Spectrum2D::hermitian_part() const {
  Spectrum2D out(kmax1_, kmax2_);
  for (int k2 = -kmax2_; k2 <= kmax2_; ++k2) {
    for (int k1 = -kmax1_; k1 <= kmax1_; ++k1) {
      out.at(k1, k2) = 0.5 * (at(k1, k2) + std::conj(at(-k1, -k2)));
    }
  }
  return out;
}

Spectrum2D Spectrum2D::with_band(int kmax1, int kmax2) const {
  Spectrum2D out(kmax1, kmax2);
  const int c1 = std::min(kmax1, kmax1_);
  const int c2 = std::min(kmax2, kmax2_);
  for (int k2 = -c2; k2 <= c2; ++k2) {
    for (int k1 = -c1; k1 <= c1; ++k1) out.at(k1, k2) = at(k1, k2);
  }
  return out;
}

Spectrum2D& Spectrum2D::operator+=(const Spectrum2D& other) {
  if (other.kmax1_ > kmax1_ || other.kmax2_ > kmax2_) {
    *this = with_band(std::max(kmax1_, other.kmax1_), std::max(kmax2_, other.kmax2_));
  }
  for (int k2 = -other.kmax2_; k2 <= other.kmax2_; ++k2) {
    for (int k1 = -other.kmax1_; k1 <= other.kmax1_; ++k1) at(k1, k2) += other.at(k1, k2);
  }
  return *this;
}

Spectrum2D& Spectrum2D::operator-=(const Spectrum2D& other) {
  if (other.kmax1_ > kmax1_ || other.kmax2_ > kmax2_) {
    *this = with_band(std::max(kmax1_, other.kmax1_), std::max(kmax2_, other.kmax2_));
  }
  for (int k2 = -other.kmax2_; k2 <= other.kmax2_; ++k2) {
    for (int k1 = -other.kmax1_; k1 <= other.kmax1_; ++k1) at(k1, k2) -= other.at(k1, k2);
  }
  return *this;
}

Spectrum2D& Spectrum2D::operator*=(Complex scale) {
  for (auto& z : coeffs_) z *= scale;
  return *this;
}

Spectrum2D operator+(Spectrum2D a, const Spectrum2D& b) { return a += b; }
Spectrum2D operator-(Spectrum2D a, const Spectrum2D& b) { return a -= b; }
Spectrum2D operator*(Complex s, Spectrum2D a) { return a *= s; }

Spectrum2D outer_product(const Spectrum1D& u, const Spectrum1D& v) {
  Spectrum2D out(u.kmax(), v.kmax());
  for (int k2 = -v.kmax(); k2 <= v.kmax(); ++k2) {
    for (int k1 = -u.kmax(); k1 <= u.kmax(); ++k1) out.at(k1, k2) = u.at(k1) * v.at(k2);
  }
  return out;
}

}  // namespace mixsmooth
