#include "mixsmooth/smoothness.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "fft.hpp"
#include "mixsmooth/error.hpp"
#include "mixsmooth/parallel.hpp"
#include "mixsmooth/spectral.hpp"

namespace mixsmooth {
namespace {

constexpr double pi = std::numbers::pi;
constexpr long long series_cap = 10'000'000;
constexpr int tail_terms = 14;

bool is_integer(double a) { return a == std::floor(a); }

std::size_t wrap(int k, std::size_t n) {
  const long nn = static_cast<long>(n);
  return static_cast<std::size_t>(((k % nn) + nn) % nn);
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// j-th forward difference of a_n = (-1)^n binom(alpha, n) in n:
// Gamma(n - alpha) / (Gamma(-alpha - j) Gamma(n + j + 1)). Zero when
// -alpha - j is a pole of Gamma.
long double binom_difference(long double alpha, int j, long double n) {
  const long double g = std::tgamma(-alpha - j);
  if (!std::isfinite(g) || g == 0) return 0;
  const long double lg = std::lgamma(n - alpha) - std::lgamma(n + j + 1) - std::log(std::fabs(g));
  return (g < 0 ? -1.0L : 1.0L) * std::exp(lg);
}

// Reusable per-thread transform buffers.
detail::FftWorkspace& workspace(std::size_t n1, std::size_t n2) {
  thread_local std::unique_ptr<detail::FftWorkspace> ws;
  if (!ws || ws->n1() != n1 || ws->n2() != n2) ws = std::make_unique<detail::FftWorkspace>(n1, n2);
  return *ws;
}

struct Cell {
  double h1;
  double h2;
  double value;
};

// Grid search followed by local refinement, shared by the 1D and 2D paths.
// `eval` must be a pure function of (h1, h2).
template <typename Eval>
ModulusResult search(Eval&& eval, double delta1, double delta2, int steps1, int steps2, int rounds) {
  ModulusResult result;
  const auto s1 = static_cast<std::size_t>(steps1);
  const auto s2 = static_cast<std::size_t>(steps2);
  auto node = [](double delta, std::size_t i, std::size_t s) {
    if (s == 1) return 0.0;
    return -delta + 2.0 * delta * static_cast<double>(i) / static_cast<double>(s - 1);
  };

  std::vector<double> values(s1 * s2);
  parallel_for(s2, [&](std::size_t j) {
    const double h2 = node(delta2, j, s2);
    for (std::size_t i = 0; i < s1; ++i) values[i + s1 * j] = eval(node(delta1, i, s1), h2);
  });
  result.evaluations = values.size();

  std::size_t best = 0;
  for (std::size_t idx = 1; idx < values.size(); ++idx) {
    if (values[idx] > values[best]) best = idx;
  }
  Cell top{node(delta1, best % s1, s1), node(delta2, best / s1, s2), values[best]};

  double d1 = s1 > 1 ? 2 * delta1 / static_cast<double>(s1 - 1) : 0.0;
  double d2 = s2 > 1 ? 2 * delta2 / static_cast<double>(s2 - 1) : 0.0;
  for (int r = 0; r < rounds; ++r) {
    d1 /= 2;
    d2 /= 2;
    std::vector<Cell> cand;
    cand.reserve(25);
    for (int b = -2; b <= 2; ++b) {
      for (int a = -2; a <= 2; ++a) {
        if ((a == 0 && b == 0) || (d2 == 0 && b != 0)) continue;
        const double h1 = std::clamp(top.h1 + a * d1, -delta1, delta1);
        const double h2 = std::clamp(top.h2 + b * d2, -delta2, delta2);
        cand.push_back({h1, h2, 0.0});
      }
    }
    parallel_for(cand.size(), [&](std::size_t c) { cand[c].value = eval(cand[c].h1, cand[c].h2); });
    result.evaluations += cand.size();
    const double before = top.value;
    for (const auto& c : cand) {
      if (c.value > top.value) top = c;
    }
    result.last_round_change = before > 0 ? (top.value - before) / before : 0.0;
  }
  result.value = top.value;
  result.h1 = top.h1;
  result.h2 = top.h2;
  return result;
}

// Evaluates || Delta^{a1}_{h1} Delta^{a2}_{h2} f ||_{p1 p2} by filling the
// half spectrum with multiplied coefficients and running one inverse transform.
class DifferenceEvaluator {
 public:
  DifferenceEvaluator(const Spectrum2D& s, const ModulusQuery& q) : q_(q) {
    k1_ = s.effective_band1();
    k2_ = s.effective_band2();
    herm_ = s.with_band(k1_, k2_).hermitian_part();
    n1_ = grid_size_for(k1_, q.pp.p1, q.controls);
    n2_ = grid_size_for(k2_, q.pp.p2, q.controls);
  }

  std::size_t n1() const { return n1_; }
  std::size_t n2() const { return n2_; }

  double operator()(double h1, double h2) const {
    auto& ws = workspace(n1_, n2_);
    const std::size_t hn = ws.half_n1();
    std::fill(ws.half(), ws.half() + hn * n2_, Complex{});
    std::vector<Complex> m1(static_cast<std::size_t>(k1_) + 1);
    for (int k1 = 0; k1 <= k1_; ++k1) m1[k1] = frac_diff_multiplier(k1, h1, q_.alpha1);
    for (int k2 = -k2_; k2 <= k2_; ++k2) {
      const Complex m2 = frac_diff_multiplier(k2, h2, q_.alpha2);
      Complex* row = ws.half() + hn * wrap(k2, n2_);
      for (int k1 = 0; k1 <= k1_; ++k1) row[k1] = herm_.at(k1, k2) * m1[k1] * m2;
    }
    ws.to_real();
    return mixed_norm(std::span<const double>(ws.real(), n1_ * n2_), n1_, n2_, q_.pp, false);
  }

 private:
  ModulusQuery q_;
  int k1_ = 0;
  int k2_ = 0;
  Spectrum2D herm_;
  std::size_t n1_ = 8;
  std::size_t n2_ = 8;
};

class DifferenceEvaluator1D {
 public:
  DifferenceEvaluator1D(const Spectrum1D& s, double alpha, Exponent p, const SearchControls& controls)
      : alpha_(alpha), p_(p) {
    const int band = s.effective_band();
    const Spectrum1D herm = s.hermitian_part();
    // Sparse spectra (lacunary series) only pay for their nonzero modes.
    for (int k = 1; k <= band; ++k) {
      if (herm.at(k) != Complex{}) modes_.emplace_back(k, herm.at(k));
    }
    n_ = grid_size_for(band, p, controls);
  }

  double operator()(double h) const {
    auto& ws = workspace(n_, 1);
    std::fill(ws.half(), ws.half() + ws.half_n1(), Complex{});
    for (const auto& [k, c] : modes_) ws.half()[k] = c * frac_diff_multiplier(k, h, alpha_);
    ws.to_real();
    return norm_1d(std::span<const double>(ws.real(), n_), p_);
  }

 private:
  double alpha_;
  Exponent p_;
  std::vector<std::pair<int, Complex>> modes_;
  std::size_t n_ = 8;
};

void check_alpha(double alpha) {
  if (!(alpha > 0) || !std::isfinite(alpha)) throw InvalidInput("difference order must be positive and finite");
}

void check_delta(double delta) {
  if (!(delta >= 0) || delta > pi) throw InvalidInput("step bound must lie in [0, pi]");
}

}  // namespace

double binom_coeff(double alpha, std::size_t nu) {
  double c = 1.0;
  for (std::size_t j = 1; j <= nu; ++j) c *= (alpha - static_cast<double>(j) + 1.0) / static_cast<double>(j);
  return c;
}

BinomialTail BinomialTail::make(double alpha, double tolerance, std::size_t cap) {
  check_alpha(alpha);
  if (!(tolerance > 0)) throw InvalidInput("BinomialTail: tolerance must be positive");
  BinomialTail t;
  t.alpha = alpha;
  t.tolerance = tolerance;
  if (is_integer(alpha)) {
    t.nu_max = static_cast<std::size_t>(alpha);
    t.tail = 0.0;
    return t;
  }
  // sum_{nu <= N} (-1)^nu binom(alpha, nu) = (-1)^N binom(alpha - 1, N), and past
  // nu = ceil(alpha) all terms share one sign, so the tail is |binom(alpha - 1, N)|.
  const auto start = static_cast<std::size_t>(std::ceil(alpha));
  long double b = 1.0L;  // binom(alpha - 1, N)
  std::size_t n = 0;
  for (;;) {
    if (n >= start && std::fabs(b) < tolerance) break;
    if (n >= cap) break;
    ++n;
    b *= (static_cast<long double>(alpha) - 1 - static_cast<long double>(n) + 1) / static_cast<long double>(n);
  }
  t.nu_max = n;
  t.tail = static_cast<double>(std::fabs(b));
  return t;
}

Complex frac_diff_series_multiplier(int k, double h, double alpha, double tolerance) {
  check_alpha(alpha);
  const long double a = alpha;
  // Reduce in double exactly like the closed form, so kh = 2 pi m maps to 0 on both paths.
  const double kh = static_cast<double>(k) * h;
  const long double phi = std::remainder(kh, 2 * pi);
  const Complex shift = std::polar(1.0, std::remainder(alpha * kh, 2 * pi));
  using LC = std::complex<long double>;
  const LC z = std::polar(1.0L, -phi);

  if (is_integer(alpha)) {
    LC acc = 0;
    LC zp = 1;
    long double c = 1;
    for (long long nu = 0; nu <= static_cast<long long>(alpha); ++nu) {
      if (nu > 0) {
        c *= (nu - 1 - a) / nu;
        zp *= z;
      }
      acc += c * zp;
    }
    return Complex(static_cast<double>(acc.real()), static_cast<double>(acc.imag())) * shift;
  }
  if (phi == 0) return 0.0;

  // The remainder expansion needs N |phi| >> 1. Below that the term cap cannot
  // be met and the series is not summable in practice; use the closed form.
  if (60.0L / std::fabs(phi) > static_cast<long double>(series_cap)) return frac_diff_multiplier(k, h, alpha);

  const auto tail_info = BinomialTail::make(alpha, tolerance);
  long long n_direct = std::max<long long>(static_cast<long long>(tail_info.nu_max),
                                           static_cast<long long>(std::ceil(60.0L / std::fabs(phi))));
  n_direct = std::min(n_direct, series_cap);

  LC acc = 0;
  LC zp = 1;
  long double c = 1;  // (-1)^nu binom(alpha, nu)
  for (long long nu = 0; nu <= n_direct; ++nu) {
    if (nu > 0) {
      c *= (nu - 1 - a) / nu;
      zp *= z;
    }
    acc += c * zp;
  }
  // Remainder sum_{n > N} a_n z^n summed by parts repeatedly:
  // sum_j (z/(1-z))^j (Delta^j a)_{N+1} z^{N+1} / (1-z).
  const long double n0 = static_cast<long double>(n_direct + 1);
  const LC zn = zp * z;
  const LC ratio = z / (1.0L - z);
  LC rp = 1;
  LC tail = 0;
  for (int j = 0; j < tail_terms; ++j) {
    tail += rp * binom_difference(a, j, n0) * zn / (1.0L - z);
    rp *= ratio;
  }
  const LC total = acc + tail;
  return Complex(static_cast<double>(total.real()), static_cast<double>(total.imag())) * shift;
}

Sample2D frac_diff_series(const Sample2D& f, Axis axis, double h, double alpha, double tolerance) {
  check_alpha(alpha);
  if (!(tolerance > 0)) throw InvalidInput("frac_diff_series: tolerance must be positive");
  const Spectrum2D s = analyze(f);
  const int band = axis == Axis::x1 ? s.kmax1() : s.kmax2();
  std::vector<Complex> mult(2 * static_cast<std::size_t>(band) + 1);
  parallel_for(mult.size(), [&](std::size_t i) {
    mult[i] = frac_diff_series_multiplier(static_cast<int>(i) - band, h, alpha, tolerance);
  });
  Spectrum2D out(s.kmax1(), s.kmax2());
  for (int k2 = -s.kmax2(); k2 <= s.kmax2(); ++k2) {
    for (int k1 = -s.kmax1(); k1 <= s.kmax1(); ++k1) {
      const int k = axis == Axis::x1 ? k1 : k2;
      out.at(k1, k2) = s.at(k1, k2) * mult[static_cast<std::size_t>(k + band)];
    }
  }
  return synthesize(out, f.spec());
}

Spectrum2D frac_diff_spectral(const Spectrum2D& s, Axis axis, double h, double alpha) {
  check_alpha(alpha);
  Spectrum2D out(s.kmax1(), s.kmax2());
  for (int k2 = -s.kmax2(); k2 <= s.kmax2(); ++k2) {
    for (int k1 = -s.kmax1(); k1 <= s.kmax1(); ++k1) {
      const int k = axis == Axis::x1 ? k1 : k2;
      out.at(k1, k2) = s.at(k1, k2) * frac_diff_multiplier(k, h, alpha);
    }
  }
  return out;
}

Spectrum2D mixed_difference(const Spectrum2D& s, double h1, double h2, double alpha1, double alpha2) {
  return frac_diff_spectral(frac_diff_spectral(s, Axis::x2, h2, alpha2), Axis::x1, h1, alpha1);
}

void SearchControls::validate() const {
  auto odd_ok = [](int s) { return s >= 9 && s % 2 == 1; };
  if (!odd_ok(steps_per_axis)) throw InvalidInput("steps per axis must be odd and >= 9");
  if (steps_axis2 != 0 && !odd_ok(steps_axis2)) throw InvalidInput("steps on axis 2 must be odd and >= 9");
  if (refine_rounds < 0) throw InvalidInput("refine rounds must be >= 0");
  if (oversample < 2 || sup_oversample < 2) throw InvalidInput("oversampling factors must be >= 2");
}

std::size_t grid_size_for(int band, Exponent p, const SearchControls& controls) {
  if (band < 0) throw InvalidInput("grid_size_for: negative band");
  const int factor = p.is_infinite() ? controls.sup_oversample : controls.oversample;
  const auto b = static_cast<std::size_t>(band);
  return next_pow2(std::max<std::size_t>({8, static_cast<std::size_t>(factor) * b, 2 * b + 2}));
}

void ModulusQuery::validate() const {
  check_alpha(alpha1);
  check_alpha(alpha2);
  check_delta(delta1);
  check_delta(delta2);
  controls.validate();
}

ModulusResult mixed_modulus_search(const Spectrum2D& s, const ModulusQuery& q) {
  q.validate();
  if (q.delta1 == 0 || q.delta2 == 0) return {};
  const DifferenceEvaluator eval(s, q);
  ModulusResult r = search(eval, q.delta1, q.delta2, q.controls.steps1(), q.controls.steps2(),
                           q.controls.refine_rounds);
  if (!std::isfinite(r.value)) throw NumericalFailure("mixed modulus is not finite");
  return r;
}

double mixed_modulus(const Spectrum2D& s, const ModulusQuery& q) { return mixed_modulus_search(s, q).value; }

double difference_norm(const Spectrum2D& s, const ModulusQuery& q, double h1, double h2) {
  q.validate();
  return DifferenceEvaluator(s, q)(h1, h2);
}

Modulus1DResult modulus_1d_search(const Spectrum1D& s, double alpha, double delta, Exponent p,
                                  const SearchControls& controls) {
  check_alpha(alpha);
  check_delta(delta);
  controls.validate();
  if (delta == 0) return {};
  const DifferenceEvaluator1D eval(s, alpha, p, controls);
  // A single-row search: axis 2 collapses to h2 = 0.
  const ModulusResult r = search([&](double h, double) { return eval(h); }, delta, 0.0,
                                 controls.steps_per_axis, 1, controls.refine_rounds);
  if (!std::isfinite(r.value)) throw NumericalFailure("modulus is not finite");
  return {r.value, r.h1, r.last_round_change, r.evaluations};
}

double modulus_1d(const Spectrum1D& s, double alpha, double delta, Exponent p, const SearchControls& controls) {
  return modulus_1d_search(s, alpha, delta, p, controls).value;
}

double mixed_modulus(const SeparableFunction& f, const ModulusQuery& q) {
  q.validate();
  if (q.delta1 == 0 || q.delta2 == 0) return 0.0;
  SearchControls c2 = q.controls;
  c2.steps_per_axis = q.controls.steps2();
  c2.steps_axis2 = 0;
  return modulus_1d(f.u, q.alpha1, q.delta1, q.pp.p1, q.controls) *
         modulus_1d(f.v, q.alpha2, q.delta2, q.pp.p2, c2);
}

}  // namespace mixsmooth
