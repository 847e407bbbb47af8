#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mixsmooth/spectrum.hpp"

namespace mixsmooth {

/// Uniform grid over [0, 2pi)^2, x_j = 2 pi j / n on each axis.
class GridSpec2D {
 public:
  GridSpec2D(std::size_t n1, std::size_t n2);

  std::size_t n1() const { return n1_; }
  std::size_t n2() const { return n2_; }
  std::size_t points() const { return n1_ * n2_; }

  double x1(std::size_t i) const;
  double x2(std::size_t j) const;

  friend bool operator==(const GridSpec2D&, const GridSpec2D&) = default;

 private:
  std::size_t n1_;
  std::size_t n2_;
};

bool is_power_of_two(std::size_t n);
/// Grid coordinate 2 pi j / n.
double grid_point(std::size_t n, std::size_t j);

/// Samples of a real periodic function on a GridSpec2D. values()[i + n1 * j]
/// holds f(x1_i, x2_j), so each x2-slice is contiguous.
class Sample2D {
 public:
  Sample2D(GridSpec2D spec, std::vector<double> values);

  static Sample2D from_function(GridSpec2D spec,
                                const std::function<double(double, double)>& f);

  const GridSpec2D& spec() const { return spec_; }
  const std::vector<double>& values() const { return values_; }
  double at(std::size_t i1, std::size_t i2) const { return values_[i1 + spec_.n1() * i2]; }

 private:
  GridSpec2D spec_;
  std::vector<double> values_;
};

/// Lebesgue exponent p in [1, inf].
class Exponent {
 public:
  Exponent(double p);  // NOLINT(google-explicit-constructor): exponents read naturally as numbers
  static Exponent infinity();
  /// Accepts a decimal number >= 1 or "inf".
  static Exponent parse(std::string_view text);

  bool is_infinite() const;
  double value() const { return value_; }
  /// 1/p, zero for infinity.
  double reciprocal() const;
  std::string str() const;

  friend bool operator==(const Exponent&, const Exponent&) = default;

 private:
  double value_;
};

struct ExponentPair {
  Exponent p1;
  Exponent p2;

  /// Parses "p1,p2".
  static ExponentPair parse(std::string_view text);
  std::string str() const;
  friend bool operator==(const ExponentPair&, const ExponentPair&) = default;
};

/// q* = q for finite q, 1 for q = infinity.
double q_star(Exponent p);

/// (2pi/n * sum |v_j|^p)^{1/p}, or max |v_j| for p = inf.
double norm_1d(std::span<const double> values, Exponent p);

/// Inner L^{p1} norm over x1 on every x2-slice, then L^{p2} norm of the
/// resulting profile.
double mixed_norm(const Sample2D& f, const ExponentPair& pp);

/// Same on a raw buffer laid out like Sample2D::values(). Skips the
/// finiteness check when `checked` is false.
double mixed_norm(std::span<const double> values, std::size_t n1, std::size_t n2,
                  const ExponentPair& pp, bool checked = true);

/// Annihilates every coefficient with k1 = 0 or k2 = 0, which places the
/// function in the zero-mean class for both variables.
Spectrum2D project_zero_mean(const Spectrum2D& s);

}  // namespace mixsmooth
