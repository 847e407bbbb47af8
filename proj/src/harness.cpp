#include "mixsmooth/harness.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "mixsmooth/error.hpp"
#include "mixsmooth/parallel.hpp"
#include "mixsmooth/spectral.hpp"
#include "mixsmooth/summation.hpp"

namespace mixsmooth {
namespace {

constexpr double pi = std::numbers::pi;
const double ln2 = std::log(2.0);

void check_pattern(Exponent p, Exponent q, const char* axis) {
  const bool interior = !p.is_infinite() && !q.is_infinite() && p.value() > 1 && p.value() < q.value();
  const bool endpoint = p.value() == 1 && q.is_infinite();
  if (!interior && !endpoint) {
    throw InvalidInput(std::string("exponents on axis ") + axis + " must satisfy 1 < p < q < inf or p = 1, q = inf; got " +
                       p.str() + " -> " + q.str());
  }
}

double theta(Exponent p, Exponent q) { return p.reciprocal() - q.reciprocal(); }

// Combines cached moduli into the discretized double Hardy integral.
template <typename Lookup>
double combine_rhs(const UlyanovQuery& q, double delta1, double delta2, Lookup&& omega) {
  const double q1 = q_star(q.to.p1);
  const double q2 = q_star(q.to.p2);
  const double e1 = -q.rho1 - q.theta1();
  const double e2 = -q.rho2 - q.theta2();
  CompensatedSum<> outer;
  for (int l2 = 0; l2 < q.levels; ++l2) {
    const double t2 = std::ldexp(delta2, -l2);
    CompensatedSum<> inner;
    for (int l1 = 0; l1 < q.levels; ++l1) {
      const double t1 = std::ldexp(delta1, -l1);
      const double w = std::pow(t1, e1) * std::pow(t2, e2) * omega(t1, t2);
      inner += std::pow(w, q1) * ln2;
    }
    outer += std::pow(inner.value(), q2 / q1) * ln2;
  }
  return std::pow(outer.value(), 1.0 / q2);
}

ModulusQuery inner_query(const UlyanovQuery& q, double t1, double t2) {
  ModulusQuery m;
  m.alpha1 = q.inner_order1();
  m.alpha2 = q.inner_order2();
  m.delta1 = t1;
  m.delta2 = t2;
  m.pp = q.from;
  m.controls = q.controls;
  return m;
}

void check_delta(double d) {
  if (!(d > 0) || d >= 1) throw InvalidInput("deltas must lie in (0, 1)");
}

UlyanovReport summarize(std::vector<UlyanovRow> rows) {
  UlyanovReport rep;
  rep.rows = std::move(rows);
  bool first = true;
  for (auto& r : rep.rows) {
    if (r.rhs > 0) {
      r.ratio = r.lhs / r.rhs;
    } else {
      r.ratio = r.lhs > 0 ? std::numeric_limits<double>::infinity() : 0.0;
    }
    if (first || r.ratio > rep.max_ratio) {
      rep.max_ratio = r.ratio;
      rep.argmax_delta1 = r.delta1;
      rep.argmax_delta2 = r.delta2;
    }
    if (first || r.ratio < rep.min_ratio) rep.min_ratio = r.ratio;
    first = false;
  }
  return rep;
}

std::vector<std::pair<double, double>> grid_pairs(const UlyanovQuery& q) {
  std::vector<std::pair<double, double>> out;
  for (double d2 : q.range2.deltas()) {
    for (double d1 : q.range1.deltas()) out.emplace_back(d1, d2);
  }
  return out;
}

// Moduli of one variable at every dyadic point t = delta 2^{-l} needed for the
// given deltas, computed once each.
std::map<double, double> moduli_1d(const Spectrum1D& g, double order, Exponent p, const std::vector<double>& deltas,
                                   int levels, const SearchControls& controls) {
  std::map<double, double> cache;
  for (double d : deltas) {
    for (int l = 0; l < levels; ++l) cache.emplace(std::ldexp(d, -l), 0.0);
  }
  std::vector<double> keys;
  for (const auto& kv : cache) keys.push_back(kv.first);
  std::vector<double> vals(keys.size());
  parallel_for(keys.size(), [&](std::size_t i) { vals[i] = modulus_1d(g, order, keys[i], p, controls); });
  for (std::size_t i = 0; i < keys.size(); ++i) cache[keys[i]] = vals[i];
  return cache;
}

double hardy_from_cache(const std::map<double, double>& cache, double rho, double th, Exponent q, double delta,
                        int levels) {
  const double qs = q_star(q);
  CompensatedSum<> acc;
  for (int l = 0; l < levels; ++l) {
    const double t = std::ldexp(delta, -l);
    acc += std::pow(std::pow(t, -rho - th) * cache.at(t), qs) * ln2;
  }
  return std::pow(acc.value(), 1.0 / qs);
}

}  // namespace

// ---- example functions ----

Spectrum1D make_sine() {
  Spectrum1D s(1);
  s.at(1) = Complex(0, -0.5);
  s.at(-1) = Complex(0, 0.5);
  return s;
}

Spectrum2D make_f0() { return outer_product(make_sine(), make_sine()); }

int lacunary_band(const LacunaryParams& p) {
  if (p.terms < 1 || p.terms > 30) throw InvalidInput("lacunary series needs 1 <= terms <= 30");
  return 1 << (p.terms - 1);
}

Spectrum1D make_lacunary(const LacunaryParams& p) {
  if (!(p.alpha > 0)) throw InvalidInput("lacunary series needs alpha > 0");
  const int band = lacunary_band(p);
  const double phase = p.phase == LacunaryPhase::shifted ? pi * p.alpha / 2 : 0.0;
  Spectrum1D s(band);
  for (int nu = 0; nu < p.terms; ++nu) {
    const double w = std::pow(nu + 1.0, p.beta) * std::pow(2.0, -nu * p.alpha);
    // cos(kx - phase) = (e^{-i phase} e^{ikx} + e^{i phase} e^{-ikx}) / 2
    s.at(1 << nu) = std::polar(w / 2, -phase);
    s.at(-(1 << nu)) = std::polar(w / 2, phase);
  }
  return s;
}

Spectrum1D make_lacunary(const LacunaryParams& p, std::size_t grid_n) {
  if (lacunary_band(p) > nyquist_band(grid_n)) {
    throw InvalidInput("lacunary series band exceeds the grid's Nyquist band");
  }
  return make_lacunary(p);
}

Spectrum2D make_product(const Spectrum1D& u, const Spectrum1D& v) { return outer_product(u, v); }

Spectrum2D random_polynomial(std::uint64_t seed, int band1, int band2) {
  if (band1 < 1 || band2 < 1) throw InvalidInput("random polynomial bands must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Spectrum2D s(band1, band2);
  for (int k1 = 1; k1 <= band1; ++k1) {
    for (int k2 = -band2; k2 <= band2; ++k2) {
      if (k2 == 0) continue;
      const double re = normal(rng);
      const double im = normal(rng);
      const Complex c = Complex(re, im) / static_cast<double>(k1 * std::abs(k2));
      s.at(k1, k2) = c;
      s.at(-k1, -k2) = std::conj(c);
    }
  }
  CompensatedSum<> energy;
  for (const auto& c : s.coeffs()) energy += std::norm(c);
  s *= 1.0 / (2 * pi * std::sqrt(energy.value()));
  return s;
}

Spectrum1D random_polynomial_1d(std::uint64_t seed, int band) {
  if (band < 1) throw InvalidInput("random polynomial band must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Spectrum1D s(band);
  for (int k = 1; k <= band; ++k) {
    const double re = normal(rng);
    const double im = normal(rng);
    const Complex c = Complex(re, im) / static_cast<double>(k);
    s.at(k) = c;
    s.at(-k) = std::conj(c);
  }
  CompensatedSum<> energy;
  for (const auto& c : s.coeffs()) energy += std::norm(c);
  s *= 1.0 / std::sqrt(2 * pi * energy.value());
  return s;
}

std::vector<CorpusMember> standard_corpus(std::uint64_t seed, int random_count, int max_band, int f1_terms) {
  if (random_count < 0 || max_band < 4) throw InvalidInput("corpus needs random_count >= 0 and max_band >= 4");
  std::vector<CorpusMember> corpus;
  corpus.push_back({"f0", make_f0()});
  LacunaryParams g1;
  g1.terms = f1_terms;
  corpus.push_back({"f1", make_product(make_sine(), make_lacunary(g1))});

  std::vector<int> bands;
  for (int b = 4; b <= max_band; b *= 2) bands.push_back(b);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, bands.size() - 1);
  for (int i = 0; i < random_count; ++i) {
    const int b1 = bands[pick(rng)];
    const int b2 = bands[pick(rng)];
    const std::uint64_t member_seed = rng();
    char name[32];
    std::snprintf(name, sizeof name, "random_%02d", i);
    corpus.push_back({name, random_polynomial(member_seed, b1, b2)});
  }
  return corpus;
}

// ---- Ulyanov-type inequalities ----

std::vector<double> DyadicRange::deltas() const {
  if (jmin > jmax) throw InvalidInput("dyadic range needs jmin <= jmax");
  std::vector<double> out;
  for (int j = jmin; j <= jmax; ++j) out.push_back(std::ldexp(1.0, -j));
  return out;
}

DyadicRange DyadicRange::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw InvalidInput("dyadic range must look like 'jmin:jmax'");
  auto to_int = [&](std::string_view part) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc{} || ptr != part.data() + part.size()) {
      throw InvalidInput("cannot parse dyadic range '" + std::string(text) + "'");
    }
    return v;
  };
  DyadicRange r{to_int(text.substr(0, colon)), to_int(text.substr(colon + 1))};
  if (r.jmin < 0 || r.jmin > r.jmax || r.jmax > 40) throw InvalidInput("dyadic range needs 0 <= jmin <= jmax <= 40");
  return r;
}

void UlyanovQuery::validate() const {
  if (!(alpha1 > 0) || !(alpha2 > 0)) throw InvalidInput("orders alpha must be positive");
  if (!(rho1 >= 0) || !(rho2 >= 0)) throw InvalidInput("derivative orders rho must be nonnegative");
  check_pattern(from.p1, to.p1, "1");
  check_pattern(from.p2, to.p2, "2");
  if (range1.jmin < 1 || range1.jmin > range1.jmax || range2.jmin < 1 || range2.jmin > range2.jmax) {
    throw InvalidInput("dyadic ranges need 1 <= jmin <= jmax");
  }
  if (levels < 4) throw InvalidInput("levels must be >= 4");
  controls.validate();
}

double ulyanov_rhs(const Spectrum2D& s, const UlyanovQuery& q, double delta1, double delta2) {
  q.validate();
  check_delta(delta1);
  check_delta(delta2);
  std::vector<std::pair<double, double>> pts;
  for (int l2 = 0; l2 < q.levels; ++l2) {
    for (int l1 = 0; l1 < q.levels; ++l1) pts.emplace_back(std::ldexp(delta1, -l1), std::ldexp(delta2, -l2));
  }
  std::vector<double> vals(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    vals[i] = mixed_modulus(s, inner_query(q, pts[i].first, pts[i].second));
  });
  std::map<std::pair<double, double>, double> cache;
  for (std::size_t i = 0; i < pts.size(); ++i) cache[pts[i]] = vals[i];
  return combine_rhs(q, delta1, delta2, [&](double t1, double t2) { return cache.at({t1, t2}); });
}

double hardy_rhs_1d(const Spectrum1D& g, double alpha, double rho, Exponent p, Exponent q, double delta, int levels,
                    const SearchControls& controls) {
  if (!(alpha > 0) || !(rho >= 0)) throw InvalidInput("hardy_rhs_1d: alpha > 0 and rho >= 0 required");
  check_pattern(p, q, "1");
  check_delta(delta);
  if (levels < 4) throw InvalidInput("levels must be >= 4");
  const double th = theta(p, q);
  const auto cache = moduli_1d(g, alpha + rho + th, p, {delta}, levels, controls);
  return hardy_from_cache(cache, rho, th, q, delta, levels);
}

double ulyanov_rhs(const SeparableFunction& f, const UlyanovQuery& q, double delta1, double delta2) {
  q.validate();
  SearchControls c2 = q.controls;
  c2.steps_per_axis = q.controls.steps2();
  c2.steps_axis2 = 0;
  return hardy_rhs_1d(f.u, q.alpha1, q.rho1, q.from.p1, q.to.p1, delta1, q.levels, q.controls) *
         hardy_rhs_1d(f.v, q.alpha2, q.rho2, q.from.p2, q.to.p2, delta2, q.levels, c2);
}

UlyanovReport ulyanov_report(const Spectrum2D& s, const UlyanovQuery& q) {
  q.validate();
  const auto pairs = grid_pairs(q);
  const Spectrum2D deriv = weyl_derivative(s, q.rho1, q.rho2);

  std::map<std::pair<double, double>, double> cache;
  for (const auto& [d1, d2] : pairs) {
    for (int l2 = 0; l2 < q.levels; ++l2) {
      for (int l1 = 0; l1 < q.levels; ++l1) cache.emplace(std::make_pair(std::ldexp(d1, -l1), std::ldexp(d2, -l2)), 0.0);
    }
  }
  std::vector<std::pair<double, double>> keys;
  for (const auto& kv : cache) keys.push_back(kv.first);
  std::vector<double> vals(keys.size());
  parallel_for(keys.size(), [&](std::size_t i) {
    vals[i] = mixed_modulus(s, inner_query(q, keys[i].first, keys[i].second));
  });
  for (std::size_t i = 0; i < keys.size(); ++i) cache[keys[i]] = vals[i];

  std::vector<UlyanovRow> rows(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t i) {
    const auto [d1, d2] = pairs[i];
    ModulusQuery lhs_q{q.alpha1, q.alpha2, d1, d2, q.to, q.controls};
    rows[i].delta1 = d1;
    rows[i].delta2 = d2;
    rows[i].lhs = mixed_modulus(deriv, lhs_q);
    rows[i].rhs = combine_rhs(q, d1, d2, [&](double t1, double t2) { return cache.at({t1, t2}); });
  });
  return summarize(std::move(rows));
}

UlyanovReport ulyanov_report(const SeparableFunction& f, const UlyanovQuery& q) {
  q.validate();
  SearchControls c2 = q.controls;
  c2.steps_per_axis = q.controls.steps2();
  c2.steps_axis2 = 0;
  const auto d1s = q.range1.deltas();
  const auto d2s = q.range2.deltas();
  const double th1 = q.theta1();
  const double th2 = q.theta2();
  const auto cache1 = moduli_1d(f.u, q.inner_order1(), q.from.p1, d1s, q.levels, q.controls);
  const auto cache2 = moduli_1d(f.v, q.inner_order2(), q.from.p2, d2s, q.levels, c2);
  const Spectrum1D du = weyl_derivative(f.u, q.rho1);
  const Spectrum1D dv = weyl_derivative(f.v, q.rho2);

  std::vector<double> lhs1(d1s.size());
  std::vector<double> lhs2(d2s.size());
  parallel_for(d1s.size(), [&](std::size_t i) { lhs1[i] = modulus_1d(du, q.alpha1, d1s[i], q.to.p1, q.controls); });
  parallel_for(d2s.size(), [&](std::size_t i) { lhs2[i] = modulus_1d(dv, q.alpha2, d2s[i], q.to.p2, c2); });

  std::vector<UlyanovRow> rows;
  for (std::size_t j = 0; j < d2s.size(); ++j) {
    for (std::size_t i = 0; i < d1s.size(); ++i) {
      UlyanovRow r;
      r.delta1 = d1s[i];
      r.delta2 = d2s[j];
      r.lhs = lhs1[i] * lhs2[j];
      r.rhs = hardy_from_cache(cache1, q.rho1, th1, q.to.p1, d1s[i], q.levels) *
              hardy_from_cache(cache2, q.rho2, th2, q.to.p2, d2s[j], q.levels);
      rows.push_back(r);
    }
  }
  return summarize(std::move(rows));
}

// ---- rate fitting ----

RateFit rate_fit(std::span<const RatePoint> points, const RateFitOptions& options) {
  if (points.size() < 5) throw InvalidInput("rate_fit needs at least 5 points");
  if (options.drop_coarsest < 0) throw InvalidInput("drop_coarsest must be >= 0");
  for (const auto& p : points) {
    if (!(p.value > 0) || !std::isfinite(p.value)) throw InvalidInput("rate_fit needs positive finite values");
    if (!(p.delta > 0) || !(p.delta < 2)) throw InvalidInput("rate_fit needs deltas in (0, 2)");
  }
  std::vector<RatePoint> pts(points.begin(), points.end());
  std::stable_sort(pts.begin(), pts.end(), [](const RatePoint& a, const RatePoint& b) { return a.delta > b.delta; });
  const auto drop = std::min<std::size_t>(static_cast<std::size_t>(options.drop_coarsest), pts.size());
  pts.erase(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(drop));
  const int params = options.model == RateModel::power_log ? 3 : 2;
  if (pts.size() < static_cast<std::size_t>(params) + 1) throw InvalidInput("too few points left to fit");

  Eigen::MatrixXd x(pts.size(), params);
  Eigen::VectorXd y(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    x(r, 0) = 1.0;
    x(r, 1) = std::log(pts[i].delta);
    if (params == 3) x(r, 2) = std::log(std::log2(2.0 / pts[i].delta));
    y(r) = std::log(pts[i].value);
  }
  const Eigen::VectorXd beta = x.colPivHouseholderQr().solve(y);
  RateFit fit;
  fit.c = std::exp(beta(0));
  fit.a = beta(1);
  fit.b = params == 3 ? beta(2) : 0.0;
  if (!std::isfinite(fit.a) || !std::isfinite(fit.b) || !std::isfinite(fit.c)) {
    throw NumericalFailure("rate fit did not produce finite parameters");
  }
  for (const auto& p : pts) {
    const double model = fit.c * std::pow(p.delta, fit.a) * std::pow(std::log2(2.0 / p.delta), fit.b);
    fit.residual = std::max(fit.residual, std::abs(model / p.value - 1.0));
  }
  fit.points = std::move(pts);
  return fit;
}

LacunaryRates lacunary_rates(const LacunaryRateSetup& setup) {
  check_pattern(setup.p, setup.q, "1");
  setup.controls.validate();
  const Spectrum1D g = make_lacunary(setup.series);
  const auto deltas = setup.range.deltas();
  const double alpha = setup.series.alpha;
  const double th = theta(setup.p, setup.q);
  const auto cache = moduli_1d(g, alpha + th, setup.p, deltas, setup.levels, setup.controls);

  std::vector<RatePoint> lhs(deltas.size());
  std::vector<RatePoint> rhs(deltas.size());
  parallel_for(deltas.size(), [&](std::size_t i) {
    lhs[i] = {deltas[i], modulus_1d(g, alpha, deltas[i], setup.q, setup.controls)};
  });
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    rhs[i] = {deltas[i], hardy_from_cache(cache, 0.0, th, setup.q, deltas[i], setup.levels)};
  }
  const RateFitOptions opt{RateModel::power_log, setup.drop_coarsest};
  return {rate_fit(lhs, opt), rate_fit(rhs, opt)};
}

Separation separation_of(std::span<const RatePoint> lhs, std::span<const RatePoint> rhs, const RateFitOptions& options) {
  Separation s;
  s.lhs = rate_fit(lhs, options);
  s.rhs = rate_fit(rhs, options);
  s.delta_a = s.lhs.a - s.rhs.a;
  s.delta_b = s.lhs.b - s.rhs.b;
  return s;
}

Separation separation_experiment(const SeparationSetup& setup) {
  LacunaryParams gp;
  gp.alpha = setup.alpha2;
  gp.beta = setup.beta;
  gp.terms = setup.terms;
  gp.phase = setup.family;
  const SeparableFunction f{make_sine(), make_lacunary(gp)};

  UlyanovQuery q;
  q.alpha1 = setup.alpha1;
  q.alpha2 = setup.alpha2;
  q.from = setup.from;
  q.to = setup.to;
  q.range2 = setup.range2;
  q.levels = setup.levels;
  q.controls = setup.controls;
  // range1 is a single point; the fixed delta1 need not be dyadic.
  check_delta(setup.delta1);
  q.validate();

  SearchControls c2 = q.controls;
  c2.steps_per_axis = q.controls.steps2();
  c2.steps_axis2 = 0;
  const auto d2s = q.range2.deltas();
  const double lhs1 = modulus_1d(f.u, q.alpha1, setup.delta1, q.to.p1, q.controls);
  const double rhs1 = hardy_rhs_1d(f.u, q.alpha1, 0.0, q.from.p1, q.to.p1, setup.delta1, q.levels, q.controls);
  const auto cache2 = moduli_1d(f.v, q.inner_order2(), q.from.p2, d2s, q.levels, c2);

  std::vector<RatePoint> lhs(d2s.size());
  std::vector<RatePoint> rhs(d2s.size());
  parallel_for(d2s.size(), [&](std::size_t i) {
    lhs[i] = {d2s[i], lhs1 * modulus_1d(f.v, q.alpha2, d2s[i], q.to.p2, c2)};
  });
  for (std::size_t i = 0; i < d2s.size(); ++i) {
    rhs[i] = {d2s[i], rhs1 * hardy_from_cache(cache2, 0.0, q.theta2(), q.to.p2, d2s[i], q.levels)};
  }
  return separation_of(lhs, rhs, {RateModel::power_log, setup.drop_coarsest});
}

}  // namespace mixsmooth
