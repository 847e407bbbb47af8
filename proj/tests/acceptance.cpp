// Acceptance run: one PASS/FAIL line per criterion, details indented below.
// Arguments select criteria by number; no arguments runs all of them.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "mixsmooth/harness.hpp"
#include "mixsmooth/parallel.hpp"
#include "mixsmooth/properties.hpp"
#include "mixsmooth/realization.hpp"
#include "mixsmooth/report.hpp"
#include "mixsmooth/smoothness.hpp"
#include "mixsmooth/spectral.hpp"

using namespace mixsmooth;
using std::numbers::pi;

namespace {

struct Outcome {
  bool passed = true;
  std::vector<std::string> lines;

  void check(bool ok, const char* fmt, ...) __attribute__((format(printf, 3, 4)));
};

void Outcome::check(bool ok, const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  lines.push_back(std::string(ok ? "ok   " : "FAIL ") + buf);
  passed = passed && ok;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// 1 --------------------------------------------------------------------------

Outcome oracles() {
  Outcome out;

  // Weyl derivative of cos(k x1) is k^rho cos(k x1 + rho pi / 2).
  double weyl_err = 0;
  const GridSpec2D g(64, 8);
  for (int k : {1, 2, 3, 7, 13}) {
    for (double rho : {0.25, 0.5, 1.0, 1.7, 3.0}) {
      Spectrum2D s(k, 0);
      s.at(k, 0) = 0.5;
      s.at(-k, 0) = 0.5;
      const auto d = synthesize(weyl_derivative(s, rho, 0.0), g);
      const double scale = std::pow(k, rho);
      for (std::size_t j = 0; j < g.n2(); ++j) {
        for (std::size_t i = 0; i < g.n1(); ++i) {
          const double want = scale * std::cos(k * g.x1(i) + rho * pi / 2);
          weyl_err = std::max(weyl_err, std::abs(d.at(i, j) - want) / scale);
        }
      }
    }
  }
  out.check(weyl_err < 1e-10, "Weyl derivative on single modes: max relative error %.3g", weyl_err);

  // (1/pi) int V_n(t) cos(kt) dt by the trapezoidal rule, exact for these
  // trigonometric polynomials once the node count exceeds the degree.
  double vp_err = 0;
  const int nodes = 4096;
  for (int n = 1; n <= 8; ++n) {
    for (int k = 0; k <= 2 * n + 2; ++k) {
      double acc = 0;
      for (int j = 0; j < nodes; ++j) {
        const double t = 2 * pi * j / nodes;
        acc += std::cos(k * t) * vp_kernel(n, t);
      }
      vp_err = std::max(vp_err, std::abs(acc * 2.0 / nodes - vp_multiplier(n, k)));
    }
  }
  out.check(vp_err < 1e-8, "VP multiplier against kernel quadrature, n <= 8: max error %.3g", vp_err);

  double diff_err = 0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto s = random_polynomial(seed, 6, 5);
    const GridSpec2D grid(32, 32);
    const auto f = synthesize(s, grid);
    for (double a : {0.4, 1.0, 1.5, 2.3}) {
      for (double h : {-2.5, -0.1, 0.3, 1.0, pi}) {
        for (Axis axis : {Axis::x1, Axis::x2}) {
          const auto series = frac_diff_series(f, axis, h, a);
          const auto spectral = synthesize(frac_diff_spectral(s, axis, h, a), grid);
          double scale = 0;
          double d = 0;
          for (std::size_t i = 0; i < series.values().size(); ++i) {
            scale = std::max(scale, std::abs(spectral.values()[i]));
            d = std::max(d, std::abs(series.values()[i] - spectral.values()[i]));
          }
          diff_err = std::max(diff_err, d / scale);
        }
      }
    }
  }
  out.check(diff_err < 1e-8, "fractional difference, spectral against series, alpha in {0.4,1,1.5,2.3}: %.3g",
            diff_err);
  return out;
}

// 2 --------------------------------------------------------------------------

Outcome closed_forms() {
  Outcome out;
  const double w1 = modulus_1d(make_sine(), 1.0, pi / 2, 2.0);
  out.check(rel(w1, std::sqrt(2 * pi)) < 1e-4, "omega_1(sin, pi/2)_2 = %.12g, want sqrt(2 pi) = %.12g", w1,
            std::sqrt(2 * pi));
  const double w2 = mixed_modulus(make_f0(), ModulusQuery{1, 1, 1, 1, {2.0, 2.0}, {}});
  const double want = 4 * std::pow(std::sin(0.5), 2) * pi;
  out.check(rel(w2, want) < 1e-4, "omega_{1,1}(f0, 1, 1)_{22} = %.12g, want 4 sin^2(1/2) pi = %.12g", w2, want);
  return out;
}

// 3 --------------------------------------------------------------------------

Outcome lacunary() {
  Outcome out;
  for (double beta : {0.0, 1.0}) {
    LacunaryRateSetup setup;
    setup.series.alpha = 1.0;
    setup.series.beta = beta;
    setup.series.terms = 16;
    setup.p = 2.0;
    setup.q = 4.0;
    setup.range = {3, 12};
    const std::size_t n = grid_size_for(lacunary_band(setup.series), setup.q, setup.controls);
    const auto r = lacunary_rates(setup);
    out.check(n == (1u << 17), "beta=%g: spatial grid %zu points", beta, n);
    out.check(std::abs(r.modulus.a - 1.0) <= 0.05 && std::abs(r.modulus.b - (beta + 0.5)) <= 0.15,
              "beta=%g: modulus fit a=%.4f (want 1 +- 0.05) b=%.4f (want %.1f +- 0.15), residual %.2g", beta,
              r.modulus.a, r.modulus.b, beta + 0.5, r.modulus.residual);
    out.check(std::abs(r.rhs.b - beta) <= 0.15, "beta=%g: integral fit a=%.4f b=%.4f (want %.1f +- 0.15), residual %.2g",
              beta, r.rhs.a, r.rhs.b, beta, r.rhs.residual);
  }
  return out;
}

// 4 --------------------------------------------------------------------------

Outcome f0_sharpness() {
  Outcome out;
  UlyanovQuery q;
  q.from = {2.0, 2.0};
  q.to = {4.0, 4.0};
  q.range1 = q.range2 = {2, 8};
  q.levels = 10;
  const SeparableFunction f0{make_sine(), make_sine()};
  const auto base = ulyanov_report(f0, q);
  out.check(base.max_ratio / base.min_ratio < 3, "ratio range [%.6g, %.6g] over j = 2..8, spread %.4f (want < 3)",
            base.min_ratio, base.max_ratio, base.max_ratio / base.min_ratio);

  auto worst_change = [&](const UlyanovReport& r) {
    double w = 0;
    for (std::size_t i = 0; i < r.rows.size(); ++i) w = std::max(w, rel(r.rows[i].ratio, base.rows[i].ratio));
    return w;
  };
  auto qj = q;
  qj.levels = 2 * q.levels;
  const double dj = worst_change(ulyanov_report(f0, qj));
  out.check(dj < 0.05, "doubling the integral levels %d -> %d: worst ratio change %.3g", q.levels, qj.levels, dj);
  auto qh = q;
  qh.controls.steps_per_axis = 2 * q.controls.steps_per_axis - 1;
  const double dh = worst_change(ulyanov_report(f0, qh));
  out.check(dh < 0.05, "doubling the step grid %d -> %d: worst ratio change %.3g", q.controls.steps_per_axis,
            qh.controls.steps_per_axis, dh);
  // The separable path must agree with the full two-variable evaluation.
  auto q2 = q;
  q2.range1 = q2.range2 = {2, 4};
  q2.levels = 6;
  const auto sep = ulyanov_report(f0, q2);
  const auto full = ulyanov_report(make_f0(), q2);
  double d2 = 0;
  for (std::size_t i = 0; i < sep.rows.size(); ++i) d2 = std::max(d2, rel(full.rows[i].ratio, sep.rows[i].ratio));
  out.check(d2 < 1e-6, "separable and two-variable evaluations agree to %.3g", d2);
  return out;
}

// 5 --------------------------------------------------------------------------

Outcome separation() {
  Outcome out;
  SeparationSetup plain;
  plain.family = LacunaryPhase::plain;
  plain.alpha1 = 1;
  plain.alpha2 = 1;
  plain.beta = 0;
  plain.from = {2.0, 2.0};
  plain.to = {4.0, 4.0};
  plain.delta1 = 0.125;
  const auto p = separation_experiment(plain);
  out.check(std::abs(p.delta_a - 0.25) <= 0.05, "plain: delta_a = %.4f (want 0.25 +- 0.05)", p.delta_a);
  out.check(std::abs(p.delta_b - 0.5) <= 0.15, "plain: delta_b = %.4f (want 0.5 +- 0.15)", p.delta_b);
  out.lines.push_back("     plain: lhs a=" + format_number(p.lhs.a) + " b=" + format_number(p.lhs.b) +
                      ", rhs a=" + format_number(p.rhs.a) + " b=" + format_number(p.rhs.b));

  SeparationSetup shifted = plain;
  shifted.family = LacunaryPhase::shifted;
  shifted.alpha2 = 2;
  shifted.from = {2.0, 1.0};
  shifted.to = {4.0, Exponent::infinity()};
  const auto s = separation_experiment(shifted);
  out.check(std::abs(s.delta_a - 1.0) <= 0.1, "shifted: delta_a = %.4f (want 1 +- 0.1)", s.delta_a);
  out.check(std::abs(s.delta_b) <= 0.15, "shifted: delta_b = %.4f (want 0 +- 0.15)", s.delta_b);
  out.lines.push_back("     shifted: lhs a=" + format_number(s.lhs.a) + " b=" + format_number(s.lhs.b) +
                      ", rhs a=" + format_number(s.rhs.a) + " b=" + format_number(s.rhs.b));
  return out;
}

// 6 --------------------------------------------------------------------------

struct Pattern {
  const char* from;
  const char* to;
};

Outcome uniform_constant() {
  Outcome out;
  const auto corpus = standard_corpus(20240601, 20, 8, 5);
  int max_band = 0;
  for (const auto& m : corpus) max_band = std::max({max_band, m.spectrum.kmax1(), m.spectrum.kmax2()});
  out.check(corpus.size() == 22 && max_band <= 32, "corpus of %zu members, largest band %d", corpus.size(),
            max_band);

  const Pattern patterns[] = {{"2,2", "4,4"}, {"1,2", "inf,4"}, {"2,1", "4,inf"}, {"1,1", "inf,inf"}};
  const std::pair<double, double> rhos[] = {{0, 0}, {0.5, 0}, {0, 0.5}, {0.5, 0.5}};

  auto query = [](const Pattern& p, std::pair<double, double> rho) {
    UlyanovQuery q;
    q.from = ExponentPair::parse(p.from);
    q.to = ExponentPair::parse(p.to);
    q.rho1 = rho.first;
    q.rho2 = rho.second;
    q.range1 = q.range2 = {2, 4};
    q.levels = 8;
    return q;
  };

  for (const auto& pat : patterns) {
    // (ratio, member, rho) for every combination, largest first.
    std::vector<std::tuple<double, std::size_t, std::size_t>> all;
    bool finite = true;
    for (std::size_t m = 0; m < corpus.size(); ++m) {
      for (std::size_t r = 0; r < 4; ++r) {
        const double v = ulyanov_report(corpus[m].spectrum, query(pat, rhos[r])).max_ratio;
        finite = finite && std::isfinite(v) && v > 0;
        all.emplace_back(v, m, r);
      }
    }
    std::sort(all.begin(), all.end(), std::greater<>());
    const double c = std::get<0>(all.front());
    out.check(finite, "%s -> %s: max ratio %.6g (%s, rho=(%g,%g))", pat.from, pat.to, c,
              corpus[std::get<1>(all.front())].name.c_str(), rhos[std::get<2>(all.front())].first,
              rhos[std::get<2>(all.front())].second);

    // Refinements are re-evaluated on the leading candidates; the rest keep
    // their base values, which lie below the constant by a clear margin.
    const std::size_t top = std::min<std::size_t>(3, all.size());
    const double runner_up = all.size() > top ? std::get<0>(all[top]) : 0.0;
    const std::map<std::string, std::function<void(UlyanovQuery&)>> refinements = {
        {"integral levels 8 -> 12", [](UlyanovQuery& q) { q.levels = 12; }},
        {"step grid 17 -> 33", [](UlyanovQuery& q) { q.controls.steps_per_axis = 33; }},
        {"spatial grid x2",
         [](UlyanovQuery& q) {
           q.controls.oversample *= 2;
           q.controls.sup_oversample *= 2;
         }},
    };
    for (const auto& [label, apply] : refinements) {
      double refined = runner_up;
      for (std::size_t i = 0; i < top; ++i) {
        auto q = query(pat, rhos[std::get<2>(all[i])]);
        apply(q);
        refined = std::max(refined, ulyanov_report(corpus[std::get<1>(all[i])].spectrum, q).max_ratio);
      }
      out.check(rel(refined, c) < 0.05, "%s -> %s: %s changes the constant by %.3g", pat.from, pat.to,
                label.c_str(), rel(refined, c));
    }
  }
  return out;
}

// 7 --------------------------------------------------------------------------

Outcome property_suite() {
  Outcome out;
  PropertySuiteConfig cfg;
  cfg.names = all_property_names();
  cfg.corpus_size = 50;
  for (const auto& o : run_properties(cfg)) {
    out.check(o.passed, "%s: worst %.3g against %.3g (%s)", o.name.c_str(), o.worst, o.threshold,
              o.witness.c_str());
  }
  return out;
}

// 8 --------------------------------------------------------------------------

Outcome realization() {
  Outcome out;
  std::vector<Spectrum2D> corpus = {make_f0()};
  for (std::uint64_t seed = 1; seed <= 8; ++seed) corpus.push_back(random_polynomial(seed, 4 << (seed % 3), 8));
  const std::vector<int> ns = {2, 4, 8, 16, 32, 64};

  for (const ExponentPair pp : {ExponentPair{2.0, 2.0}, ExponentPair{4.0, 1.5}}) {
    for (const auto& [a1, a2] : {std::pair{1.0, 1.0}, std::pair{0.5, 1.5}}) {
      // ratios[i] holds omega / realization for n = ns[i] over the corpus.
      std::vector<std::vector<double>> ratios(ns.size());
      for (std::size_t i = 0; i < ns.size(); ++i) {
        const int n = ns[i];
        for (const auto& s : corpus) {
          const double w = mixed_modulus(s, ModulusQuery{a1, a2, 1.0 / n, 1.0 / n, pp, {}});
          const double r = realization_functional(s, n, n, a1, a2, pp);
          ratios[i].push_back(w / r);
        }
      }
      double lo = INFINITY, hi = 0;
      double lo_prev = 0, hi_prev = 0;
      double drift = 0;
      for (std::size_t i = 0; i < ns.size(); ++i) {
        for (double v : ratios[i]) {
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
        if (i >= 3) drift = std::max({drift, rel(lo_prev, lo), rel(hi_prev, hi)});
        lo_prev = lo;
        hi_prev = hi;
      }
      // drift: largest change of either endpoint when the n range is extended
      // from {2..8} upwards.
      out.check(hi / lo < 50 && drift <= 0.10, "(p1,p2)=(%s,%s) alpha=(%g,%g): [c, C] = [%.4g, %.4g], C/c = %.3g, endpoint drift %.3g",
                format_number(pp.p1.value()).c_str(), format_number(pp.p2.value()).c_str(), a1, a2, lo, hi, hi / lo,
                drift);
    }
  }
  return out;
}

// 9 --------------------------------------------------------------------------

Outcome determinism() {
  Outcome out;
  auto reports = [] {
    std::string text;
    UlyanovQuery q;
    q.from = {1.0, 2.0};
    q.to = {Exponent::infinity(), 4.0};
    q.rho1 = 0.5;
    q.range1 = q.range2 = {2, 3};
    q.levels = 4;
    text += ulyanov_json(ulyanov_report(random_polynomial(9, 8, 4), q));
    std::vector<ModulusRow> rows;
    const auto s = random_polynomial(4, 6, 6);
    for (double d : {1.0, 0.5, 0.25}) rows.push_back({d, d, mixed_modulus(s, {0.7, 1.3, d, d, {3.0, 1.5}, {}}), -1});
    text += modulus_csv(rows);
    PropertySuiteConfig cfg;
    cfg.corpus_size = 6;
    cfg.names = {"subadditive", "monotone_in_delta", "conjugate_phase_identity"};
    text += properties_csv(run_properties(cfg));
    return text;
  };
  const unsigned before = thread_count();
  std::vector<std::string> runs;
  for (unsigned t : {1u, 4u, 1u, 3u}) {
    set_thread_count(t);
    runs.push_back(reports());
  }
  set_thread_count(before);
  const bool same = std::all_of(runs.begin(), runs.end(), [&](const std::string& r) { return r == runs.front(); });
  out.check(same, "reports with 1, 4, 1 and 3 threads are %s (%zu bytes)", same ? "byte-identical" : "different",
            runs.front().size());
  return out;
}

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  Outcome (*run)();
};

}  // namespace

int main(int argc, char** argv) {
  const Criterion criteria[] = {
      {1, "closed-form oracles", 10, oracles},
      {2, "closed-form moduli", 30, closed_forms},
      {3, "lacunary rate recovery", 120, lacunary},
      {4, "f0 ratio is two-sided and stable", 600, f0_sharpness},
      {5, "lacunary separation gaps", 600, separation},
      {6, "uniform constant over the corpus", 600, uniform_constant},
      {7, "property suite", 600, property_suite},
      {8, "realization equivalence", 600, realization},
      {9, "thread-count determinism", 600, determinism},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : criteria) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.check(false, "exception: %s", e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.check(secs < c.budget_s, "runtime %.1f s (budget %.0f s)", secs, c.budget_s);
    std::printf("%s criterion %d: %s\n", o.passed ? "PASS" : "FAIL", c.id, c.title);
    for (const auto& l : o.lines) std::printf("    %s\n", l.c_str());
    std::fflush(stdout);
    failures += o.passed ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
