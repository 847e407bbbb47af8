#include "doctest.h"

#include <cmath>
#include <numbers>

#include "mixsmooth/harness.hpp"
#include "mixsmooth/realization.hpp"
#include "mixsmooth/spectral.hpp"

using namespace mixsmooth;
using std::numbers::pi;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

Spectrum2D cos_cos(int a, int b) {
  Spectrum2D s(a, b);
  for (int i : {-a, a}) {
    for (int j : {-b, b}) s.at(i, j) = 0.25;
  }
  return s;
}

}  // namespace

TEST_CASE("realization of f0") {
  for (auto [a1, a2] : {std::pair{1.0, 1.0}, std::pair{0.5, 1.7}}) {
    const auto t = realization_terms(make_f0(), 4, 4, a1, a2, {2.0, 2.0});
    CHECK(t.axis1 == doctest::Approx(0.0));
    CHECK(t.axis2 == doctest::Approx(0.0));
    CHECK(t.remainder == doctest::Approx(0.0));
    CHECK(rel(t.mean_derivative, std::pow(4.0, -a1 - a2) * pi) < 1e-12);
    CHECK(t.total() == doctest::Approx(t.mean_derivative));
  }
}

TEST_CASE("realization terms vanish inside the band") {
  const auto s = random_polynomial(5, 4, 3);
  const auto t = realization_terms(s, 4, 3, 1.2, 0.8, {3.0, Exponent::infinity()});
  CHECK(t.axis1 < 1e-12);
  CHECK(t.axis2 < 1e-12);
  CHECK(t.remainder < 1e-12);
  CHECK(t.mean_derivative > 0);
}

TEST_CASE("realization tracks the modulus") {
  const auto s = random_polynomial(8, 16, 16);
  for (int n : {2, 4, 8}) {
    const double r = realization_functional(s, n, n, 1, 1, {2.0, 2.0});
    ModulusQuery q{1, 1, 1.0 / n, 1.0 / n, {2.0, 2.0}, {}};
    const double w = mixed_modulus(s, q);
    CHECK(w / r > 0.05);
    CHECK(w / r < 20);
  }
}

TEST_CASE("best angle approximation in L2") {
  CHECK(angle_best_L2(make_f0(), {1, 1}).error == 0.0);
  CHECK(rel(angle_best_L2(cos_cos(2, 2), {1, 1}).error, pi) < 1e-14);
  CHECK(angle_best_L2(Spectrum2D(3, 3), {1, 1}).error == 0.0);
  // Parseval against a sampled norm of the complement.
  const auto s = random_polynomial(12, 6, 6);
  const auto best = angle_best_L2(s, {2, 3});
  const auto rest = synthesize(s - best.approximant, GridSpec2D(32, 32));
  CHECK(rel(best.error, mixed_norm(rest, {2.0, 2.0})) < 1e-12);
}

TEST_CASE("near-best angle approximation") {
  CHECK(angle_near_best(make_f0(), {1, 1}, {3.0, 1.0}) < 1e-15);
  CHECK(angle_near_best(cos_cos(2, 2), {3, 3}, {2.0, 2.0}) < 1e-15);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto s = random_polynomial(seed, 12, 10);
    for (int m : {1, 2, 3, 5}) {
      const double near = angle_near_best(s, {m, m}, {2.0, 2.0});
      // In L2 the VP construction sits between two exact angle errors.
      CHECK(near >= angle_best_L2(s, {2 * m - 1, 2 * m - 1}).error - 1e-10);
      CHECK(near <= angle_best_L2(s, {m, m}).error + 1e-10);
    }
  }
}
