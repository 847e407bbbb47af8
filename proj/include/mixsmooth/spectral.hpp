#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mixsmooth/mixed_norm.hpp"
#include "mixsmooth/spectrum.hpp"

namespace mixsmooth {

// Fourier analysis and synthesis. Grid sizes are powers of two; a grid of n
// points resolves the band |k| <= n/2 - 1.

/// Largest band a grid of n points represents unambiguously.
int nyquist_band(std::size_t n);

Spectrum2D analyze(const Sample2D& f, int kmax1, int kmax2);
/// Analyze with the full band of the grid.
Spectrum2D analyze(const Sample2D& f);
/// Evaluates the real part of the series at the grid points. Throws
/// InvalidInput when the grid cannot resolve the band.
Sample2D synthesize(const Spectrum2D& s, const GridSpec2D& spec);

Spectrum1D analyze(std::span<const double> values, int kmax);
std::vector<double> synthesize(const Spectrum1D& s, std::size_t n);

/// |k|^rho e^{i sign(k) rho pi / 2}, the Weyl multiplier. k = 0 maps to 1
/// for rho = 0 and 0 otherwise.
Complex weyl_multiplier(int k, double rho);

/// Weyl fractional derivative of order (rho1, rho2). A positive order on an
/// axis requires the zero-frequency line of that axis to vanish.
Spectrum2D weyl_derivative(const Spectrum2D& s, double rho1, double rho2);
Spectrum1D weyl_derivative(const Spectrum1D& s, double rho);

/// Conjugate function: c(k) -> -i sign(k) c(k).
Spectrum1D conjugate_axis(const Spectrum1D& s);

/// Multiplier of the de la Vallee-Poussin sum V_n on frequency k.
double vp_multiplier(int n, int k);

/// Dirichlet kernel D_m(t) = sin((m + 1/2) t) / (2 sin(t/2)).
double dirichlet_kernel(int m, double t);
/// V_n^{2n}(t) = (D_n + ... + D_{2n-1}) / n, with V_0^0 = D_0.
double vp_kernel(int n, double t);

/// Order of a de la Vallee-Poussin mean on one axis; nullopt leaves the axis
/// untouched.
using VpIndex = std::optional<int>;
inline constexpr std::nullopt_t all_modes = std::nullopt;

Spectrum2D vp_mean(const Spectrum2D& s, VpIndex m1, VpIndex m2);
Spectrum1D vp_mean(const Spectrum1D& s, int m);
/// Weyl derivative of order (alpha1, alpha2) of the mean V_{m1,m2}.
Spectrum2D vp_derivative_mean(const Spectrum2D& s, VpIndex m1, VpIndex m2, double alpha1,
                              double alpha2);

/// Multiplier of the fractional difference of order alpha and step h on
/// e^{ikx}: e^{ik alpha h} (1 - e^{-ikh})^alpha with the principal branch.
Complex frac_diff_multiplier(int k, double h, double alpha);

enum class KernelKind { cos, sin };

/// sum_{nu=1}^n nu^{-alpha} cos(nu x)  (or sin).
double kernel_partial_sum(int n, double alpha, double x, KernelKind kind);

/// {"kmax1", "kmax2", "re", "im"} with re/im indexed [k2 + kmax2][k1 + kmax1].
std::string spectrum_to_json(const Spectrum2D& s);
Spectrum2D spectrum_from_json(std::string_view text);

}  // namespace mixsmooth
