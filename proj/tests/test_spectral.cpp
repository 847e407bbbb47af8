#include "doctest.h"

#include <cmath>
#include <numbers>

#include "mixsmooth/error.hpp"
#include "mixsmooth/harness.hpp"
#include "mixsmooth/spectral.hpp"

using namespace mixsmooth;
using std::numbers::pi;

namespace {

double max_diff(const Sample2D& a, const std::function<double(double, double)>& f) {
  double d = 0;
  for (std::size_t j = 0; j < a.spec().n2(); ++j) {
    for (std::size_t i = 0; i < a.spec().n1(); ++i) {
      d = std::max(d, std::abs(a.at(i, j) - f(a.spec().x1(i), a.spec().x2(j))));
    }
  }
  return d;
}

double max_diff(const Spectrum2D& a, const Spectrum2D& b) {
  double d = 0;
  const auto diff = a - b;
  for (const auto& c : diff.coeffs()) d = std::max(d, std::abs(c));
  return d;
}

}  // namespace

TEST_CASE("analyze single modes") {
  const GridSpec2D g(16, 16);
  const auto c = analyze(Sample2D::from_function(g, [](double a, double) { return std::cos(a); }));
  for (int k2 = -c.kmax2(); k2 <= c.kmax2(); ++k2) {
    for (int k1 = -c.kmax1(); k1 <= c.kmax1(); ++k1) {
      const Complex want = (k2 == 0 && std::abs(k1) == 1) ? Complex(0.5) : Complex(0);
      CHECK(std::abs(c.at(k1, k2) - want) < 1e-13);
    }
  }
  const auto s = analyze(Sample2D::from_function(g, [](double, double b) { return std::sin(b); }));
  CHECK(std::abs(s.at(0, 1) - Complex(0, -0.5)) < 1e-13);
  CHECK(std::abs(s.at(0, -1) - Complex(0, 0.5)) < 1e-13);
}

TEST_CASE("round trip") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto s = random_polynomial(seed, 7, 5);
    const GridSpec2D g(16, 32);
    const auto f = synthesize(s, g);
    const auto back = analyze(f, 7, 5);
    CHECK(max_diff(back, s) < 1e-12);
    const auto again = synthesize(back, g);
    for (std::size_t i = 0; i < f.values().size(); ++i) CHECK(std::abs(again.values()[i] - f.values()[i]) < 1e-12);
  }
}

TEST_CASE("synthesize matches direct evaluation") {
  const auto s = random_polynomial(11, 3, 4);
  const GridSpec2D g(16, 16);
  const auto f = synthesize(s, g);
  CHECK(max_diff(f, [&](double x1, double x2) {
          Complex acc = 0;
          for (int k2 = -4; k2 <= 4; ++k2) {
            for (int k1 = -3; k1 <= 3; ++k1) acc += s.at(k1, k2) * std::polar(1.0, k1 * x1 + k2 * x2);
          }
          return acc.real();
        }) < 1e-13);
}

TEST_CASE("band overflow is rejected") {
  Spectrum2D s(8, 1);
  s.at(8, 1) = 1;
  CHECK_THROWS_AS(synthesize(s, GridSpec2D(16, 16)), InvalidInput);
  CHECK_NOTHROW(synthesize(s, GridSpec2D(32, 16)));
  CHECK_THROWS_AS(analyze(Sample2D(GridSpec2D(8, 8), std::vector<double>(64)), 4, 1), InvalidInput);
}

TEST_CASE("1D transforms") {
  const auto s = random_polynomial_1d(3, 9);
  const auto v = synthesize(s, 64);
  const auto back = analyze(v, 9);
  for (int k = -9; k <= 9; ++k) CHECK(std::abs(back.at(k) - s.at(k)) < 1e-13);
}

TEST_CASE("Weyl derivative of single modes") {
  // cos 3x1 sin x2 with order (1/2, 0) is sqrt(3) cos(3x1 + pi/4) sin x2.
  const GridSpec2D g(32, 16);
  const auto f = analyze(Sample2D::from_function(g, [](double a, double b) { return std::cos(3 * a) * std::sin(b); }));
  const auto d = synthesize(weyl_derivative(f, 0.5, 0.0), g);
  CHECK(max_diff(d, [](double a, double b) { return std::sqrt(3.0) * std::cos(3 * a + pi / 4) * std::sin(b); }) < 1e-10);

  const auto f0 = make_f0();
  CHECK(max_diff(weyl_derivative(f0, 0, 0), f0) == 0.0);
  const auto d11 = synthesize(weyl_derivative(f0, 1, 1), g);
  CHECK(max_diff(d11, [](double a, double b) { return std::cos(a) * std::cos(b); }) < 1e-12);

  for (int k : {1, 2, 5, -4}) {
    for (double rho : {0.3, 1.0, 2.6}) {
      const Complex m = weyl_multiplier(k, rho);
      CHECK(std::abs(std::abs(m) - std::pow(std::abs(k), rho)) < 1e-10 * std::pow(std::abs(k), rho));
      CHECK(std::abs(std::arg(m * std::polar(1.0, -(k > 0 ? 1 : -1) * rho * pi / 2))) < 1e-10);
    }
  }
}

TEST_CASE("Weyl derivative requires zero means") {
  Spectrum2D s(1, 1);
  s.at(0, 1) = Complex(0, -0.5);
  s.at(0, -1) = Complex(0, 0.5);
  CHECK_THROWS_AS(weyl_derivative(s, 0.5, 0.0), InvalidInput);
  CHECK_NOTHROW(weyl_derivative(s, 0.0, 0.5));
  Spectrum1D c(1);
  c.at(0) = 1;
  CHECK_THROWS_AS(weyl_derivative(c, 1.0), InvalidInput);
}

TEST_CASE("Weyl orders compose") {
  const auto s = random_polynomial(4, 6, 6);
  for (double a : {0.2, 0.5, 1.1}) {
    for (double b : {0.3, 0.9}) {
      CHECK(max_diff(weyl_derivative(weyl_derivative(s, a, 0), b, 0), weyl_derivative(s, a + b, 0)) < 1e-11);
    }
  }
}

TEST_CASE("conjugate function") {
  const std::size_t n = 64;
  for (int k : {1, 3, 7}) {
    Spectrum1D c(k), s(k);
    c.at(k) = c.at(-k) = 0.5;
    s.at(k) = Complex(0, -0.5);
    s.at(-k) = Complex(0, 0.5);
    const auto cc = synthesize(conjugate_axis(c), n);
    const auto cs = synthesize(conjugate_axis(s), n);
    for (std::size_t j = 0; j < n; ++j) {
      const double x = 2 * pi * j / n;
      CHECK(std::abs(cc[j] - std::sin(k * x)) < 1e-13);
      CHECK(std::abs(cs[j] + std::cos(k * x)) < 1e-13);
    }
  }
  CHECK(conjugate_axis(Spectrum1D(4)).max_abs() == 0.0);
}

TEST_CASE("VP multiplier table") {
  CHECK(vp_multiplier(2, 3) == 0.5);
  CHECK(vp_multiplier(2, 2) == 1.0);
  CHECK(vp_multiplier(5, 10) == 0.0);
  CHECK(vp_multiplier(0, 0) == 1.0);
  CHECK(vp_multiplier(0, 1) == 0.0);
  // Counting oracle: frequency k is present in D_m exactly when |k| <= m.
  for (int n = 1; n <= 8; ++n) {
    for (int k = -20; k <= 20; ++k) {
      int count = 0;
      for (int m = n; m < 2 * n; ++m) count += std::abs(k) <= m;
      CHECK(vp_multiplier(n, k) == doctest::Approx(static_cast<double>(count) / n).epsilon(1e-15));
    }
  }
}

TEST_CASE("VP multiplier agrees with kernel quadrature") {
  // (1/pi) int_0^{2pi} e^{ik(x - t)} V(t) dt = e^{ikx} * multiplier.
  const int nodes = 4096;
  for (int n = 0; n <= 8; ++n) {
    for (int k = 0; k <= 2 * n + 2; ++k) {
      double acc = 0;
      for (int j = 0; j < nodes; ++j) {
        const double t = 2 * pi * j / nodes;
        acc += std::cos(k * t) * vp_kernel(n, t);
      }
      const double quad = acc * (2 * pi / nodes) / pi;
      CHECK(std::abs(quad - vp_multiplier(n, k)) < 1e-8);
    }
  }
}

TEST_CASE("Dirichlet kernel") {
  CHECK(dirichlet_kernel(3, 0.0) == 3.5);
  const double t = 0.7;
  double direct = 0.5;
  for (int k = 1; k <= 3; ++k) direct += std::cos(k * t);
  CHECK(std::abs(dirichlet_kernel(3, t) - direct) < 1e-14);
}

TEST_CASE("VP means") {
  const auto f0 = make_f0();
  CHECK(vp_mean(f0, all_modes, 0).max_abs() == 0.0);
  CHECK(max_diff(vp_mean(f0, 2, 2), f0) == 0.0);
  Spectrum2D c35(3, 5);
  for (int a : {-3, 3}) {
    for (int b : {-5, 5}) c35.at(a, b) = 0.25;
  }
  CHECK(max_diff(vp_mean(c35, 2, all_modes), 0.5 * c35) < 1e-15);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto s = random_polynomial(seed, 5, 6);
    CHECK(max_diff(vp_mean(s, 5, 6), s) < 1e-12);
    CHECK(max_diff(vp_mean(s, 7, all_modes), s) < 1e-12);
  }
}

TEST_CASE("VP derivative means commute") {
  const auto s = random_polynomial(9, 8, 8);
  for (auto [m1, m2] : {std::pair{3, 2}, std::pair{1, 5}, std::pair{4, 4}}) {
    const auto a = vp_derivative_mean(s, m1, m2, 0.7, 1.3);
    const auto b = vp_mean(weyl_derivative(s, 0.7, 1.3), m1, m2);
    CHECK(max_diff(a, b) < 1e-12);
  }
  const auto f0 = make_f0();
  CHECK(max_diff(vp_derivative_mean(f0, 2, 2, 1, 1), weyl_derivative(f0, 1, 1)) < 1e-15);
  CHECK(vp_derivative_mean(f0, 0, all_modes, 1, 1).max_abs() == 0.0);
}

TEST_CASE("fractional difference multiplier") {
  CHECK(std::abs(frac_diff_multiplier(1, pi, 1.0) - Complex(-2.0)) < 1e-14);
  for (double h : {0.0, 0.3, 2.0}) CHECK(frac_diff_multiplier(0, h, 0.7) == Complex(0.0));
  CHECK(std::abs(std::abs(frac_diff_multiplier(2, 0.3, 0.5)) - 0.7687) < 1e-4);
  // Independent oracle: std::pow on the principal branch.
  for (int k : {-7, -2, -1, 1, 2, 3, 11}) {
    for (double h : {-3.0, -0.4, 1e-3, 0.3, 1.0, 2.9}) {
      for (double a : {0.4, 1.0, 1.5, 2.3}) {
        const Complex z = std::polar(1.0, -k * h);
        const Complex want = std::polar(1.0, k * a * h) * std::pow(1.0 - z, a);
        CHECK(std::abs(frac_diff_multiplier(k, h, a) - want) < 1e-12 * std::max(1.0, std::abs(want)));
        CHECK(std::abs(std::abs(frac_diff_multiplier(k, h, a)) - std::pow(std::abs(2 * std::sin(k * h / 2)), a)) <
              1e-12);
      }
    }
  }
}

TEST_CASE("kernel partial sums") {
  CHECK(kernel_partial_sum(1, 0.5, pi, KernelKind::cos) == doctest::Approx(-1.0));
  CHECK(kernel_partial_sum(2, 0.5, pi / 2, KernelKind::cos) == doctest::Approx(-std::sqrt(0.5)));
  CHECK(std::abs(kernel_partial_sum(1, 0.5, pi, KernelKind::sin)) < 1e-15);
  double exact = 0;
  for (int nu = 1; nu <= 10; ++nu) exact += std::pow(nu, -0.3);
  CHECK(kernel_partial_sum(10, 0.3, 0.0, KernelKind::cos) == doctest::Approx(exact).epsilon(1e-14));
}

TEST_CASE("spectrum JSON round trip") {
  const auto s = random_polynomial(5, 3, 2);
  const auto back = spectrum_from_json(spectrum_to_json(s));
  CHECK(back.kmax1() == 3);
  CHECK(back.kmax2() == 2);
  CHECK(max_diff(back, s) == 0.0);
  CHECK_THROWS_AS(spectrum_from_json("{\"kmax1\": 1}"), InvalidInput);
  CHECK_THROWS_AS(spectrum_from_json("not json"), InvalidInput);
}
