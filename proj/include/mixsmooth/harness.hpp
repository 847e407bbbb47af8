#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mixsmooth/mixed_norm.hpp"
#include "mixsmooth/smoothness.hpp"
#include "mixsmooth/spectrum.hpp"

namespace mixsmooth {

// Example functions -----------------------------------------------------------

/// sin x as a one-variable spectrum.
Spectrum1D make_sine();
/// f0(x1, x2) = sin x1 sin x2.
Spectrum2D make_f0();

enum class LacunaryPhase { plain, shifted };

/// sum_{nu < terms} (nu+1)^beta 2^{-nu alpha} cos(2^nu x - phi), phi = 0 for
/// the plain family and pi alpha / 2 for the shifted one.
struct LacunaryParams {
  double alpha = 1.0;
  double beta = 0.0;
  int terms = 16;
  LacunaryPhase phase = LacunaryPhase::plain;
};

int lacunary_band(const LacunaryParams& p);
Spectrum1D make_lacunary(const LacunaryParams& p);
/// Rejects series whose top frequency a grid of `grid_n` points cannot resolve.
Spectrum1D make_lacunary(const LacunaryParams& p, std::size_t grid_n);

Spectrum2D make_product(const Spectrum1D& u, const Spectrum1D& v);

/// Real zero-mean trigonometric polynomial with random coefficients of size
/// ~ 1/(|k1| |k2|), normalized to unit L^{22} norm. Deterministic in `seed`.
Spectrum2D random_polynomial(std::uint64_t seed, int band1, int band2);
/// Real zero-mean polynomial of one variable, same conventions.
Spectrum1D random_polynomial_1d(std::uint64_t seed, int band);

struct CorpusMember {
  std::string name;
  Spectrum2D spectrum;
};

/// f0, sin x1 * g1(x2) truncated to `f1_terms` terms, and `random_count`
/// random polynomials with per-axis bands drawn from {4, 8, ..., max_band}.
std::vector<CorpusMember> standard_corpus(std::uint64_t seed, int random_count, int max_band,
                                          int f1_terms);

// Ulyanov-type inequalities ----------------------------------------------------

/// Inclusive exponent range j for dyadic deltas 2^{-j}.
struct DyadicRange {
  int jmin = 2;
  int jmax = 4;

  std::vector<double> deltas() const;
  static DyadicRange parse(std::string_view text);  // "jmin:jmax"
};

struct UlyanovQuery {
  double alpha1 = 1.0;
  double alpha2 = 1.0;
  double rho1 = 0.0;
  double rho2 = 0.0;
  ExponentPair from{2.0, 2.0};
  ExponentPair to{4.0, 4.0};
  DyadicRange range1{};
  DyadicRange range2{};
  /// Dyadic levels per axis in the discretized Hardy-type integral.
  int levels = 10;
  SearchControls controls{};

  /// Checks each axis for 1 < p < q < inf or p = 1, q = inf, and the rest.
  void validate() const;
  double theta1() const { return from.p1.reciprocal() - to.p1.reciprocal(); }
  double theta2() const { return from.p2.reciprocal() - to.p2.reciprocal(); }
  /// Orders of the modulus inside the integral: alpha_i + rho_i + theta_i.
  double inner_order1() const { return alpha1 + rho1 + theta1(); }
  double inner_order2() const { return alpha2 + rho2 + theta2(); }
};

/// Right-hand side of the Ulyanov inequality at (delta1, delta2): the double
/// integral over (0, delta1] x (0, delta2] in dt/t, discretized on the points
/// t_i = delta_i 2^{-l}, l < levels, each with log-measure ln 2.
double ulyanov_rhs(const Spectrum2D& s, const UlyanovQuery& q, double delta1, double delta2);
double ulyanov_rhs(const SeparableFunction& f, const UlyanovQuery& q, double delta1,
                   double delta2);

/// One-variable Hardy-type integral
/// (sum_l [t^{-rho-theta} omega_{alpha+rho+theta}(g, t)_p]^{q*} ln 2)^{1/q*}.
double hardy_rhs_1d(const Spectrum1D& g, double alpha, double rho, Exponent p, Exponent q,
                    double delta, int levels, const SearchControls& controls = {});

struct UlyanovRow {
  double delta1 = 0;
  double delta2 = 0;
  double lhs = 0;
  double rhs = 0;
  double ratio = 0;
};

struct UlyanovReport {
  std::vector<UlyanovRow> rows;
  double max_ratio = 0;
  double min_ratio = 0;
  double argmax_delta1 = 0;
  double argmax_delta2 = 0;
};

/// LHS = omega_{alpha}(f^{(rho)}, delta)_{q1 q2}, RHS from ulyanov_rhs, on every
/// (delta1, delta2) of the two dyadic ranges.
UlyanovReport ulyanov_report(const Spectrum2D& s, const UlyanovQuery& q);
UlyanovReport ulyanov_report(const SeparableFunction& f, const UlyanovQuery& q);

// Rate fitting -----------------------------------------------------------------

struct RatePoint {
  double delta = 0;
  double value = 0;
};

enum class RateModel {
  power_log,  ///< c delta^a (log2(2/delta))^b
  power,      ///< c delta^a, b fixed at 0
};

struct RateFitOptions {
  RateModel model = RateModel::power_log;
  /// Points with the largest delta dropped before fitting.
  int drop_coarsest = 0;
};

struct RateFit {
  double a = 0;
  double b = 0;
  double c = 0;
  /// max |model / value - 1| over fitted points.
  double residual = 0;
  std::vector<RatePoint> points;
};

RateFit rate_fit(std::span<const RatePoint> points, const RateFitOptions& options = {});

struct LacunaryRateSetup {
  LacunaryParams series{};
  Exponent p = 2.0;
  Exponent q = 4.0;
  DyadicRange range{3, 12};
  int levels = 10;
  int drop_coarsest = 2;
  SearchControls controls{};
};

struct LacunaryRates {
  RateFit modulus;  ///< omega_alpha(g, delta)_q
  RateFit rhs;      ///< Hardy-type integral of omega_{alpha+theta}(g, t)_p
};

/// Modulus and Hardy-integral rates of a lacunary series on dyadic deltas.
LacunaryRates lacunary_rates(const LacunaryRateSetup& setup);

struct SeparationSetup {
  LacunaryPhase family = LacunaryPhase::plain;
  double alpha1 = 1.0;
  double alpha2 = 1.0;
  double beta = 0.0;
  int terms = 16;
  ExponentPair from{2.0, 2.0};
  ExponentPair to{4.0, 4.0};
  double delta1 = 0.125;
  DyadicRange range2{3, 12};
  int levels = 10;
  int drop_coarsest = 2;
  SearchControls controls{};
};

struct Separation {
  RateFit lhs;
  RateFit rhs;
  double delta_a = 0;  ///< lhs.a - rhs.a
  double delta_b = 0;  ///< lhs.b - rhs.b
};

/// Both sides of the Ulyanov inequality for f = sin x1 * g(x2) at fixed
/// delta1 over a dyadic delta2 sweep, fitted in delta2.
Separation separation_experiment(const SeparationSetup& setup);
/// Compares two fitted series directly.
Separation separation_of(std::span<const RatePoint> lhs, std::span<const RatePoint> rhs,
                         const RateFitOptions& options);

}  // namespace mixsmooth
