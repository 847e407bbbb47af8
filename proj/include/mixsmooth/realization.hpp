#pragma once

#include "mixsmooth/mixed_norm.hpp"
#include "mixsmooth/smoothness.hpp"
#include "mixsmooth/spectrum.hpp"

namespace mixsmooth {

/// Per-axis degrees of the angle T_{m1,inf} + T_{inf,m2}.
struct AngleDegrees {
  int m1 = 0;
  int m2 = 0;
};

struct RealizationTerms {
  double mean_derivative = 0;  ///< n1^-a1 n2^-a2 ||V^{(a1,a2)}_{n1,n2} f||
  double axis1 = 0;            ///< n1^-a1 ||V^{(a1,0)}_{n1,inf}(f - V_{inf,n2} f)||
  double axis2 = 0;            ///< n2^-a2 ||V^{(0,a2)}_{inf,n2}(f - V_{n1,inf} f)||
  double remainder = 0;        ///< ||f - V_{n1,inf} f - V_{inf,n2} f + V_{n1,n2} f||

  double total() const { return mean_derivative + axis1 + axis2 + remainder; }
};

/// Four-term realization functional, equivalent to the mixed modulus at
/// delta_i = 1/n_i. Norms are evaluated on grids chosen by `controls`.
RealizationTerms realization_terms(const Spectrum2D& s, int n1, int n2, double alpha1,
                                   double alpha2, const ExponentPair& pp,
                                   const SearchControls& controls = {});
double realization_functional(const Spectrum2D& s, int n1, int n2, double alpha1, double alpha2,
                              const ExponentPair& pp, const SearchControls& controls = {});

struct AngleApproximation {
  Spectrum2D approximant;
  double error = 0;
};

/// Best approximation by the angle in L^{22}: orthogonal projection onto the
/// modes with |k1| <= m1 or |k2| <= m2. The error comes from Parseval.
AngleApproximation angle_best_L2(const Spectrum2D& s, AngleDegrees deg);

/// ||f - V_{m1,inf} f - V_{inf,m2} f + V_{m1,m2} f||_{p1 p2}.
double angle_near_best(const Spectrum2D& s, AngleDegrees deg, const ExponentPair& pp,
                       const SearchControls& controls = {});

}  // namespace mixsmooth
