#include "mixsmooth/realization.hpp"

#include <cmath>
#include <numbers>

#include "mixsmooth/error.hpp"
#include "mixsmooth/spectral.hpp"
#include "mixsmooth/summation.hpp"

namespace mixsmooth {
namespace {

double spectrum_norm(const Spectrum2D& s, const ExponentPair& pp, const SearchControls& controls) {
  const int b1 = s.effective_band1();
  const int b2 = s.effective_band2();
  const GridSpec2D grid(grid_size_for(b1, pp.p1, controls), grid_size_for(b2, pp.p2, controls));
  return mixed_norm(synthesize(s, grid), pp);
}

}  // namespace

RealizationTerms realization_terms(const Spectrum2D& s, int n1, int n2, double alpha1, double alpha2,
                                   const ExponentPair& pp, const SearchControls& controls) {
  if (n1 < 1 || n2 < 1) throw InvalidInput("realization: degrees must be >= 1");
  if (!(alpha1 > 0) || !(alpha2 > 0)) throw InvalidInput("realization: orders must be positive");
  controls.validate();
  const double w1 = std::pow(static_cast<double>(n1), -alpha1);
  const double w2 = std::pow(static_cast<double>(n2), -alpha2);

  const Spectrum2D v1 = vp_mean(s, n1, all_modes);
  const Spectrum2D v2 = vp_mean(s, all_modes, n2);
  const Spectrum2D v12 = vp_mean(s, n1, n2);

  RealizationTerms t;
  t.mean_derivative = w1 * w2 * spectrum_norm(weyl_derivative(v12, alpha1, alpha2), pp, controls);
  t.axis1 = w1 * spectrum_norm(vp_derivative_mean(s - v2, n1, all_modes, alpha1, 0.0), pp, controls);
  t.axis2 = w2 * spectrum_norm(vp_derivative_mean(s - v1, all_modes, n2, 0.0, alpha2), pp, controls);
  t.remainder = spectrum_norm(s - v1 - v2 + v12, pp, controls);
  return t;
}

double realization_functional(const Spectrum2D& s, int n1, int n2, double alpha1, double alpha2,
                              const ExponentPair& pp, const SearchControls& controls) {
  return realization_terms(s, n1, n2, alpha1, alpha2, pp, controls).total();
}

AngleApproximation angle_best_L2(const Spectrum2D& s, AngleDegrees deg) {
  if (deg.m1 < 0 || deg.m2 < 0) throw InvalidInput("angle degrees must be nonnegative");
  AngleApproximation out{Spectrum2D(s.kmax1(), s.kmax2()), 0.0};
  CompensatedSum<> outside;
  for (int k2 = -s.kmax2(); k2 <= s.kmax2(); ++k2) {
    for (int k1 = -s.kmax1(); k1 <= s.kmax1(); ++k1) {
      const Complex c = s.at(k1, k2);
      if (std::abs(k1) <= deg.m1 || std::abs(k2) <= deg.m2) {
        out.approximant.at(k1, k2) = c;
      } else {
        outside += std::norm(c);
      }
    }
  }
  // ||g||_{22}^2 = 4 pi^2 sum |c|^2.
  out.error = 2 * std::numbers::pi * std::sqrt(outside.value());
  return out;
}

double angle_near_best(const Spectrum2D& s, AngleDegrees deg, const ExponentPair& pp,
                       const SearchControls& controls) {
  if (deg.m1 < 0 || deg.m2 < 0) throw InvalidInput("angle degrees must be nonnegative");
  controls.validate();
  const Spectrum2D rest = s - vp_mean(s, deg.m1, all_modes) - vp_mean(s, all_modes, deg.m2) +
                          vp_mean(s, deg.m1, deg.m2);
  return spectrum_norm(rest, pp, controls);
}

}  // namespace mixsmooth
