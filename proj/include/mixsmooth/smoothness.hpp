#pragma once

#include <cstddef>

#include "mixsmooth/mixed_norm.hpp"
#include "mixsmooth/spectrum.hpp"

namespace mixsmooth {

/// Generalized binomial coefficient (alpha over nu).
double binom_coeff(double alpha, std::size_t nu);

/// Truncation index for the binomial series of a fractional difference:
/// the smallest nu_max (up to `cap`) with sum_{nu > nu_max} |binom(alpha, nu)|
/// below `tolerance`. The tail is evaluated exactly from the partial sums of
/// the alternating series, which vanish in the limit.
struct BinomialTail {
  double alpha = 1.0;
  double tolerance = 1e-10;
  std::size_t nu_max = 0;
  /// Tail sum left after nu_max; above `tolerance` only when the cap was hit.
  double tail = 0.0;

  static BinomialTail make(double alpha, double tolerance, std::size_t cap = 100000);
};

/// Sum of the defining series of the fractional difference applied to e^{ikx}.
/// Terms are added directly; for slowly decaying orders the remainder is
/// summed by parts using closed-form forward differences of the binomial
/// coefficients.
Complex frac_diff_series_multiplier(int k, double h, double alpha, double tolerance = 1e-10);

enum class Axis { x1 = 1, x2 = 2 };

/// Fractional difference along one axis from the translate series, with each
/// translate f(x + (alpha - nu) h) taken spectrally.
Sample2D frac_diff_series(const Sample2D& f, Axis axis, double h, double alpha,
                          double tolerance = 1e-10);
Spectrum2D frac_diff_spectral(const Spectrum2D& s, Axis axis, double h, double alpha);
/// Delta^{alpha1}_{h1}(Delta^{alpha2}_{h2} f).
Spectrum2D mixed_difference(const Spectrum2D& s, double h1, double h2, double alpha1,
                            double alpha2);

/// Discretization of the supremum over steps and of the spatial grid.
struct SearchControls {
  /// Uniform samples of [-delta, delta] per axis (odd, >= 9).
  int steps_per_axis = 17;
  /// Overrides steps_per_axis on axis 2 when nonzero.
  int steps_axis2 = 0;
  /// Rounds of local refinement around the best cell, each halving the spacing.
  int refine_rounds = 3;
  /// Grid points per unit of band on axes with finite exponent.
  int oversample = 4;
  /// Grid points per unit of band on axes with p = inf.
  int sup_oversample = 16;

  void validate() const;
  int steps1() const { return steps_per_axis; }
  int steps2() const { return steps_axis2 != 0 ? steps_axis2 : steps_per_axis; }
};

/// Power-of-two grid size for a band on an axis measured with exponent p.
std::size_t grid_size_for(int band, Exponent p, const SearchControls& controls);

struct ModulusQuery {
  double alpha1 = 1.0;
  double alpha2 = 1.0;
  double delta1 = 1.0;
  double delta2 = 1.0;
  ExponentPair pp{2.0, 2.0};
  SearchControls controls{};

  void validate() const;
};

struct ModulusResult {
  double value = 0.0;
  /// Step pair attaining the reported maximum.
  double h1 = 0.0;
  double h2 = 0.0;
  /// Relative gain of the last refinement round.
  double last_round_change = 0.0;
  std::size_t evaluations = 0;
};

/// Mixed modulus of smoothness omega_{alpha1,alpha2}(f, delta1, delta2) in
/// L^{p1 p2}, a lower bound of the supremum from grid search plus refinement.
ModulusResult mixed_modulus_search(const Spectrum2D& s, const ModulusQuery& q);
double mixed_modulus(const Spectrum2D& s, const ModulusQuery& q);

/// Norm of Delta^{alpha1}_{h1} Delta^{alpha2}_{h2} f at one step pair, on the
/// grid mixed_modulus would use.
double difference_norm(const Spectrum2D& s, const ModulusQuery& q, double h1, double h2);

struct Modulus1DResult {
  double value = 0.0;
  double h = 0.0;
  double last_round_change = 0.0;
  std::size_t evaluations = 0;
};

Modulus1DResult modulus_1d_search(const Spectrum1D& s, double alpha, double delta, Exponent p,
                                  const SearchControls& controls = {});
double modulus_1d(const Spectrum1D& s, double alpha, double delta, Exponent p,
                  const SearchControls& controls = {});

/// f(x1, x2) = u(x1) v(x2). Moduli and norms factor exactly for such
/// functions, which keeps long lacunary series tractable.
struct SeparableFunction {
  Spectrum1D u;
  Spectrum1D v;

  Spectrum2D to_spectrum() const { return outer_product(u, v); }
};

double mixed_modulus(const SeparableFunction& f, const ModulusQuery& q);

}  // namespace mixsmooth
