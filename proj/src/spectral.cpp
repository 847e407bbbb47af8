#include "mixsmooth/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fft.hpp"
#include "json.hpp"
#include "mixsmooth/error.hpp"
#include "mixsmooth/summation.hpp"

namespace mixsmooth {
namespace {

constexpr double pi = std::numbers::pi;

std::size_t wrap(int k, std::size_t n) {
  const long nn = static_cast<long>(n);
  return static_cast<std::size_t>(((k % nn) + nn) % nn);
}

int sign(int k) { return (k > 0) - (k < 0); }

// Tolerance for "this coefficient line is zero" checks on spectra that came
// out of a transform and carry rounding noise.
bool line_is_zero(double value, double scale) { return value <= 1e-12 * std::max(1.0, scale); }

}  // namespace

int nyquist_band(std::size_t n) { return static_cast<int>(n / 2) - 1; }

Spectrum2D analyze(const Sample2D& f, int kmax1, int kmax2) {
  const std::size_t n1 = f.spec().n1();
  const std::size_t n2 = f.spec().n2();
  if (kmax1 < 0 || kmax2 < 0 || kmax1 > nyquist_band(n1) || kmax2 > nyquist_band(n2)) {
    throw InvalidInput("analyze: requested band exceeds the grid's Nyquist band");
  }
  detail::FftWorkspace ws(n1, n2);
  std::copy(f.values().begin(), f.values().end(), ws.real());
  ws.to_half();
  const double scale = 1.0 / static_cast<double>(n1 * n2);
  Spectrum2D out(kmax1, kmax2);
  for (int k2 = -kmax2; k2 <= kmax2; ++k2) {
    for (int k1 = 0; k1 <= kmax1; ++k1) {
      const Complex c = ws.half()[static_cast<std::size_t>(k1) + ws.half_n1() * wrap(k2, n2)] * scale;
      out.at(k1, k2) = c;
      if (k1 > 0) out.at(-k1, -k2) = std::conj(c);
    }
  }
  return out;
}

Spectrum2D analyze(const Sample2D& f) {
  return analyze(f, nyquist_band(f.spec().n1()), nyquist_band(f.spec().n2()));
}

Sample2D synthesize(const Spectrum2D& s, const GridSpec2D& spec) {
  const int b1 = s.effective_band1();
  const int b2 = s.effective_band2();
  if (b1 > nyquist_band(spec.n1()) || b2 > nyquist_band(spec.n2())) {
    throw InvalidInput("synthesize: spectrum band exceeds the grid's Nyquist band");
  }
  detail::FftWorkspace ws(spec.n1(), spec.n2());
  std::fill(ws.half(), ws.half() + ws.half_n1() * spec.n2(), Complex{});
  for (int k2 = -b2; k2 <= b2; ++k2) {
    for (int k1 = 0; k1 <= b1; ++k1) {
      ws.half()[static_cast<std::size_t>(k1) + ws.half_n1() * wrap(k2, spec.n2())] =
          0.5 * (s.at(k1, k2) + std::conj(s.at(-k1, -k2)));
    }
  }
  ws.to_real();
  return Sample2D(spec, std::vector<double>(ws.real(), ws.real() + spec.points()));
}

Spectrum1D analyze(std::span<const double> values, int kmax) {
  const std::size_t n = values.size();
  if (!is_power_of_two(n) || kmax < 0 || kmax > nyquist_band(n)) {
    throw InvalidInput("analyze: grid must be a power of two resolving the requested band");
  }
  detail::FftWorkspace ws(n, 1);
  std::copy(values.begin(), values.end(), ws.real());
  ws.to_half();
  Spectrum1D out(kmax);
  for (int k = 0; k <= kmax; ++k) {
    const Complex c = ws.half()[k] / static_cast<double>(n);
    out.at(k) = c;
    out.at(-k) = std::conj(c);
  }
  return out;
}

std::vector<double> synthesize(const Spectrum1D& s, std::size_t n) {
  const int b = s.effective_band();
  if (!is_power_of_two(n) || n < 4 || b > nyquist_band(n)) {
    throw InvalidInput("synthesize: spectrum band exceeds the grid's Nyquist band");
  }
  detail::FftWorkspace ws(n, 1);
  std::fill(ws.half(), ws.half() + ws.half_n1(), Complex{});
  for (int k = 0; k <= b; ++k) ws.half()[k] = 0.5 * (s.at(k) + std::conj(s.at(-k)));
  ws.to_real();
  return {ws.real(), ws.real() + n};
}

// ---- multipliers ----

Complex weyl_multiplier(int k, double rho) {
  if (rho == 0.0) return 1.0;
  if (k == 0) return 0.0;
  const double mag = std::pow(std::abs(static_cast<double>(k)), rho);
  return std::polar(mag, sign(k) * rho * pi / 2);
}

Spectrum2D weyl_derivative(const Spectrum2D& s, double rho1, double rho2) {
  if (rho1 < 0 || rho2 < 0 || !std::isfinite(rho1) || !std::isfinite(rho2)) {
    throw InvalidInput("weyl_derivative: orders must be finite and nonnegative");
  }
  const double scale = s.max_abs();
  if (rho1 > 0) {
    double line = 0;
    for (int k2 = -s.kmax2(); k2 <= s.kmax2(); ++k2) line = std::max(line, std::abs(s.at(0, k2)));
    if (!line_is_zero(line, scale)) throw InvalidInput("weyl_derivative: nonzero k1 = 0 line with positive order");
  }
  if (rho2 > 0) {
    double line = 0;
    for (int k1 = -s.kmax1(); k1 <= s.kmax1(); ++k1) line = std::max(line, std::abs(s.at(k1, 0)));
    if (!line_is_zero(line, scale)) throw InvalidInput("weyl_derivative: nonzero k2 = 0 line with positive order");
  }
  Spectrum2D out(s.kmax1(), s.kmax2());
  for (int k2 = -s.kmax2(); k2 <= s.kmax2(); ++k2) {
    const Complex m2 = weyl_multiplier(k2, rho2);
    for (int k1 = -s.kmax1(); k1 <= s.kmax1(); ++k1) {
      out.at(k1, k2) = s.at(k1, k2) * weyl_multiplier(k1, rho1) * m2;
    }
  }
  return out;
}

Spectrum1D weyl_derivative(const Spectrum1D& s, double rho) {
  if (rho < 0 || !std::isfinite(rho)) throw InvalidInput("weyl_derivative: order must be finite and nonnegative");
  if (rho > 0 && !line_is_zero(std::abs(s.at(0)), s.max_abs())) {
    throw InvalidInput("weyl_derivative: nonzero mean with positive order");
  }
  Spectrum1D out(s.kmax());
  for (int k = -s.kmax(); k <= s.kmax(); ++k) out.at(k) = s.at(k) * weyl_multiplier(k, rho);
  return out;
}

Spectrum1D conjugate_axis(const Spectrum1D& s) {
  Spectrum1D out(s.kmax());
  for (int k = -s.kmax(); k <= s.kmax(); ++k) out.at(k) = Complex(0, -sign(k)) * s.at(k);
  return out;
}

double vp_multiplier(int n, int k) {
  if (n < 0) throw InvalidInput("vp_multiplier: order must be nonnegative");
  const int a = std::abs(k);
  if (n == 0) return a == 0 ? 1.0 : 0.0;
  if (a <= n) return 1.0;
  if (a < 2 * n) return static_cast<double>(2 * n - a) / n;
  return 0.0;
}

double dirichlet_kernel(int m, double t) {
  const double s = std::sin(t / 2);
  if (std::abs(s) < 1e-12) return m + 0.5;  // every cosine equals 1 at multiples of 2 pi
  return std::sin((m + 0.5) * t) / (2 * s);
}

double vp_kernel(int n, double t) {
  if (n < 0) throw InvalidInput("vp_kernel: order must be nonnegative");
  if (n == 0) return dirichlet_kernel(0, t);
  CompensatedSum<> acc;
  for (int m = n; m < 2 * n; ++m) acc += dirichlet_kernel(m, t);
  return acc.value() / n;
}

Spectrum2D vp_mean(const Spectrum2D& s, VpIndex m1, VpIndex m2) {
  if ((m1 && *m1 < 0) || (m2 && *m2 < 0)) throw InvalidInput("vp_mean: orders must be nonnegative");
  Spectrum2D out(s.kmax1(), s.kmax2());
  for (int k2 = -s.kmax2(); k2 <= s.kmax2(); ++k2) {
    const double w2 = m2 ? vp_multiplier(*m2, k2) : 1.0;
    for (int k1 = -s.kmax1(); k1 <= s.kmax1(); ++k1) {
      const double w1 = m1 ? vp_multiplier(*m1, k1) : 1.0;
      out.at(k1, k2) = s.at(k1, k2) * (w1 * w2);
    }
  }
  return out;
}

Spectrum1D vp_mean(const Spectrum1D& s, int m) {
  if (m < 0) throw InvalidInput("vp_mean: order must be nonnegative");
  Spectrum1D out(s.kmax());
  for (int k = -s.kmax(); k <= s.kmax(); ++k) out.at(k) = s.at(k) * vp_multiplier(m, k);
  return out;
}

Spectrum2D vp_derivative_mean(const Spectrum2D& s, VpIndex m1, VpIndex m2, double alpha1, double alpha2) {
  return weyl_derivative(vp_mean(s, m1, m2), alpha1, alpha2);
}

Complex frac_diff_multiplier(int k, double h, double alpha) {
  if (!(alpha > 0) || !std::isfinite(alpha) || !std::isfinite(h)) {
    throw InvalidInput("frac_diff_multiplier: order must be positive and step finite");
  }
  const double kh = static_cast<double>(k) * h;
  // 1 - e^{-i phi} = 2 sin(phi/2) e^{i(pi/2 - phi/2)} for phi in (-pi, pi], written
  // so the magnitude keeps full relative accuracy when phi is tiny.
  const double phi = std::remainder(kh, 2 * pi);
  if (phi == 0.0) return 0.0;
  const double mag = std::pow(std::abs(2 * std::sin(phi / 2)), alpha);
  const double half_turn = phi > 0 ? pi / 2 : -pi / 2;
  const double arg = alpha * (half_turn - phi / 2) + std::remainder(alpha * kh, 2 * pi);
  return std::polar(mag, arg);
}

double kernel_partial_sum(int n, double alpha, double x, KernelKind kind) {
  if (n < 1) throw InvalidInput("kernel_partial_sum: n must be >= 1");
  CompensatedSum<> acc;
  for (int nu = 1; nu <= n; ++nu) {
    const double w = std::pow(static_cast<double>(nu), -alpha);
    acc += w * (kind == KernelKind::cos ? std::cos(nu * x) : std::sin(nu * x));
  }
  return acc.value();
}

// ---- serialization ----

std::string spectrum_to_json(const Spectrum2D& s) {
  nlohmann::ordered_json j;
  j["kmax1"] = s.kmax1();
  j["kmax2"] = s.kmax2();
  auto re = nlohmann::json::array();
  auto im = nlohmann::json::array();
  for (int k2 = -s.kmax2(); k2 <= s.kmax2(); ++k2) {
    auto rr = nlohmann::json::array();
    auto ii = nlohmann::json::array();
    for (int k1 = -s.kmax1(); k1 <= s.kmax1(); ++k1) {
      rr.push_back(s.at(k1, k2).real());
      ii.push_back(s.at(k1, k2).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ii));
  }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j.dump();
}

Spectrum2D spectrum_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("spectrum JSON: ") + e.what());
  }
  try {
    const int k1 = j.at("kmax1").get<int>();
    const int k2 = j.at("kmax2").get<int>();
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (k1 < 0 || k2 < 0) throw InvalidInput("spectrum JSON: negative band");
    const auto rows = static_cast<std::size_t>(2 * k2 + 1);
    const auto cols = static_cast<std::size_t>(2 * k1 + 1);
    if (re.size() != rows || im.size() != rows) throw InvalidInput("spectrum JSON: wrong row count");
    Spectrum2D out(k1, k2);
    for (std::size_t r = 0; r < rows; ++r) {
      if (re[r].size() != cols || im[r].size() != cols) throw InvalidInput("spectrum JSON: wrong column count");
      for (std::size_t c = 0; c < cols; ++c) {
        out.at(static_cast<int>(c) - k1, static_cast<int>(r) - k2) = {re[r][c].get<double>(), im[r][c].get<double>()};
      }
    }
    return Spectrum2D(k1, k2, out.coeffs());
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("spectrum JSON: ") + e.what());
  }
}

}  // namespace mixsmooth
