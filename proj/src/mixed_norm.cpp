#include "mixsmooth/mixed_norm.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

#include "mixsmooth/error.hpp"
#include "mixsmooth/parallel.hpp"
#include "mixsmooth/summation.hpp"

namespace mixsmooth {

GridSpec2D::GridSpec2D(std::size_t n1, std::size_t n2) : n1_(n1), n2_(n2) {
  if (n1 < 8 || n2 < 8 || !is_power_of_two(n1) || !is_power_of_two(n2)) {
    throw InvalidInput("grid sizes must be powers of two >= 8, got " + std::to_string(n1) + "x" +
                       std::to_string(n2));
  }
}

double GridSpec2D::x1(std::size_t i) const { return grid_point(n1_, i); }
double GridSpec2D::x2(std::size_t j) const { return grid_point(n2_, j); }

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

double grid_point(std::size_t n, std::size_t j) {
  return 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
}

Sample2D::Sample2D(GridSpec2D spec, std::vector<double> values)
    : spec_(spec), values_(std::move(values)) {
  if (values_.size() != spec_.points()) throw InvalidInput("Sample2D: value count does not match grid");
  for (double v : values_) {
    if (!std::isfinite(v)) throw InvalidInput("Sample2D: non-finite sample");
  }
}

Sample2D Sample2D::from_function(GridSpec2D spec, const std::function<double(double, double)>& f) {
  std::vector<double> values(spec.points());
  for (std::size_t j = 0; j < spec.n2(); ++j) {
    for (std::size_t i = 0; i < spec.n1(); ++i) values[i + spec.n1() * j] = f(spec.x1(i), spec.x2(j));
  }
  return Sample2D(spec, std::move(values));
}

// ---- exponents ----

Exponent::Exponent(double p) : value_(p) {
  if (std::isnan(p) || p < 1.0) throw InvalidInput("exponent must lie in [1, inf], got " + std::to_string(p));
}

Exponent Exponent::infinity() { return Exponent(std::numeric_limits<double>::infinity()); }

Exponent Exponent::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text == "inf" || text == "Inf" || text == "INF" || text == "infinity") return infinity();
  double v = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
    throw InvalidInput("cannot parse exponent '" + std::string(text) + "'");
  }
  return Exponent(v);
}

bool Exponent::is_infinite() const { return std::isinf(value_); }

double Exponent::reciprocal() const { return is_infinite() ? 0.0 : 1.0 / value_; }

std::string Exponent::str() const {
  if (is_infinite()) return "inf";
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value_);
  return std::string(buf, ptr);
}

ExponentPair ExponentPair::parse(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) {
    throw InvalidInput("exponent pair must look like 'p1,p2', got '" + std::string(text) + "'");
  }
  return {Exponent::parse(text.substr(0, comma)), Exponent::parse(text.substr(comma + 1))};
}

std::string ExponentPair::str() const { return p1.str() + "," + p2.str(); }

double q_star(Exponent p) { return p.is_infinite() ? 1.0 : p.value(); }

// ---- norms ----

namespace {

double norm_unchecked(std::span<const double> values, Exponent p) {
  double peak = 0;
  for (double v : values) peak = std::max(peak, std::abs(v));
  if (p.is_infinite() || peak == 0) return peak;
  const double pv = p.value();
  CompensatedSum<> acc;
  if (pv == 1.0) {
    for (double v : values) acc += std::abs(v);
  } else if (pv == 2.0) {
    for (double v : values) {
      const double r = v / peak;
      acc += r * r;
    }
  } else {
    for (double v : values) acc += std::pow(std::abs(v) / peak, pv);
  }
  const double mean = 2.0 * std::numbers::pi / static_cast<double>(values.size()) * acc.value();
  if (pv == 1.0) return mean;
  return peak * std::pow(mean, 1.0 / pv);
}

}  // namespace

double norm_1d(std::span<const double> values, Exponent p) {
  if (values.empty()) throw InvalidInput("norm_1d: empty vector");
  for (double v : values) {
    if (!std::isfinite(v)) throw InvalidInput("norm_1d: non-finite value");
  }
  return norm_unchecked(values, p);
}

double mixed_norm(const Sample2D& f, const ExponentPair& pp) {
  return mixed_norm(f.values(), f.spec().n1(), f.spec().n2(), pp, false);
}

double mixed_norm(std::span<const double> values, std::size_t n1, std::size_t n2, const ExponentPair& pp,
                  bool checked) {
  if (values.size() != n1 * n2 || values.empty()) throw InvalidInput("mixed_norm: buffer size mismatch");
  if (checked) {
    for (double v : values) {
      if (!std::isfinite(v)) throw InvalidInput("mixed_norm: non-finite value");
    }
  }
  std::vector<double> profile(n2);
  parallel_for(n2, [&](std::size_t j) { profile[j] = norm_unchecked(values.subspan(j * n1, n1), pp.p1); });
  const double r = norm_unchecked(profile, pp.p2);
  if (!std::isfinite(r)) throw NumericalFailure("mixed_norm: result is not finite");
  return r;
}

Spectrum2D project_zero_mean(const Spectrum2D& s) {
  Spectrum2D out = s;
  for (int k2 = -s.kmax2(); k2 <= s.kmax2(); ++k2) out.at(0, k2) = Complex{};
  for (int k1 = -s.kmax1(); k1 <= s.kmax1(); ++k1) out.at(k1, 0) = Complex{};
  return out;
}

}  // namespace mixsmooth
