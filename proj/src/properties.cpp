#include "mixsmooth/properties.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>

#include "mixsmooth/error.hpp"
#include "mixsmooth/harness.hpp"
#include "mixsmooth/parallel.hpp"
#include "mixsmooth/realization.hpp"
#include "mixsmooth/smoothness.hpp"
#include "mixsmooth/spectral.hpp"

namespace mixsmooth {
namespace {

constexpr double pi = std::numbers::pi;

struct Member {
  std::string name;
  Spectrum2D s;
  ExponentPair pp;
  int band1;
  int band2;
  std::uint64_t seed;
};

std::vector<Member> property_corpus(std::uint64_t seed, int count) {
  static const ExponentPair pairs[] = {
      {2.0, 2.0}, {4.0, 2.0}, {1.0, 3.0}, {Exponent::infinity(), 2.0}, {2.0, Exponent::infinity()}, {3.0, 1.5},
  };
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> band(2, 8);
  std::vector<Member> out;
  for (int i = 0; i < count; ++i) {
    const int b1 = band(rng);
    const int b2 = band(rng);
    const std::uint64_t ms = rng();
    char name[32];
    std::snprintf(name, sizeof name, "poly_%02d", i);
    out.push_back({name, random_polynomial(ms, b1, b2), pairs[static_cast<std::size_t>(i) % std::size(pairs)], b1, b2, ms});
  }
  return out;
}

std::string fmt(const char* pattern, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, pattern, a);
  return buf;
}

std::string fmt(const char* pattern, double a, double b) {
  char buf[96];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

// Running worst case with its witness.
struct Worst {
  double value = -std::numeric_limits<double>::infinity();
  std::string witness;

  void offer(double v, const std::string& where) {
    if (v > value || std::isnan(v)) {
      value = v;
      witness = where;
    }
  }
};

SearchControls literal_grid(int steps = 17) {
  SearchControls c;
  c.steps_per_axis = steps;
  c.refine_rounds = 0;
  return c;
}

SearchControls refined_controls() {
  SearchControls c;
  c.steps_per_axis = 25;
  c.refine_rounds = 4;
  return c;
}

double omega(const Spectrum2D& s, double a1, double a2, double d1, double d2, const ExponentPair& pp,
             const SearchControls& c) {
  return mixed_modulus(s, ModulusQuery{a1, a2, d1, d2, pp, c});
}

// Evaluates fn on every member in parallel and keeps the worst case, reduced
// in member order so the witness does not depend on scheduling.
Worst over_members(const std::vector<Member>& corpus, const std::function<Worst(const Member&)>& fn) {
  std::vector<Worst> per(corpus.size());
  parallel_for(corpus.size(), [&](std::size_t i) { per[i] = fn(corpus[i]); });
  Worst w;
  for (const auto& p : per) w.offer(p.value, p.witness);
  return w;
}

PropertyOutcome finish(std::string name, const Worst& w, double threshold, bool inclusive = true) {
  PropertyOutcome o;
  o.name = std::move(name);
  o.worst = w.value;
  o.threshold = threshold;
  o.witness = w.witness;
  o.passed = std::isfinite(w.value) && (inclusive ? w.value <= threshold : w.value < threshold);
  return o;
}

// ---- individual properties ----

PropertyOutcome vanishes_at_zero_step(const std::vector<Member>& corpus) {
  const auto w = over_members(corpus, [](const Member& m) {
    Worst w;
    const auto c = literal_grid();
    w.offer(omega(m.s, 1.3, 0.6, 0.0, 0.5, m.pp, c), m.name + " delta1=0");
    w.offer(omega(m.s, 0.6, 1.3, 0.5, 0.0, m.pp, c), m.name + " delta2=0");
    ModulusQuery q{0.8, 1.7, 0.5, 0.5, m.pp, c};
    w.offer(difference_norm(m.s, q, 0.0, 0.37), m.name + " h1=0");
    w.offer(difference_norm(m.s, q, 0.29, 0.0), m.name + " h2=0");
    return w;
  });
  return finish("vanishes_at_zero_step", w, 0.0);
}

PropertyOutcome subadditive(const std::vector<Member>& corpus) {
  const auto w = over_members(corpus, [](const Member& m) {
    Worst w;
    // Same bands keep all three functions on one spatial grid.
    const Spectrum2D g = random_polynomial(m.seed ^ 0x9e3779b97f4a7c15ULL, m.band1, m.band2);
    const auto c = literal_grid();
    for (const auto& [d1, d2] : {std::pair{0.5, 0.3}, std::pair{1.2, 2.0}}) {
      const double sum = omega(m.s + g, 0.7, 1.3, d1, d2, m.pp, c);
      const double parts = omega(m.s, 0.7, 1.3, d1, d2, m.pp, c) + omega(g, 0.7, 1.3, d1, d2, m.pp, c);
      w.offer(sum - parts, m.name + fmt(" delta=(%g,%g)", d1, d2));
    }
    return w;
  });
  return finish("subadditive", w, 1e-9);
}

PropertyOutcome monotone_in_delta(const std::vector<Member>& corpus) {
  const auto w = over_members(corpus, [](const Member& m) {
    Worst w;
    constexpr int s = 9;
    for (double d : {0.2, 0.7, 1.5}) {
      auto small = literal_grid(s);
      auto big1 = small;
      big1.steps_per_axis = 2 * s - 1;
      big1.steps_axis2 = s;
      auto big2 = small;
      big2.steps_axis2 = 2 * s - 1;
      const double base = omega(m.s, 1.2, 0.9, d, d, m.pp, small);
      const double up1 = omega(m.s, 1.2, 0.9, 2 * d, d, m.pp, big1);
      const double up2 = omega(m.s, 1.2, 0.9, d, 2 * d, m.pp, big2);
      // Relative decrease; nested grids make the inequality literal.
      w.offer((base - up1) / base, m.name + fmt(" axis=1 delta=%g", d));
      w.offer((base - up2) / base, m.name + fmt(" axis=2 delta=%g", d));
    }
    return w;
  });
  return finish("monotone_in_delta", w, 1e-12);
}

PropertyOutcome dyadic_doubling(const std::vector<Member>& corpus) {
  const auto w = over_members(corpus, [](const Member& m) {
    Worst w;
    const ExponentPair l2{2.0, 2.0};
    const auto c = literal_grid();
    for (const auto& [a1, a2] : {std::pair{1.0, 1.0}, std::pair{2.0, 1.0}, std::pair{0.5, 1.5}, std::pair{0.7, 0.7}}) {
      for (int j = 1; j <= 5; ++j) {
        const double d = std::ldexp(1.0, -j);
        const double r = omega(m.s, a1, a2, 2 * d, 2 * d, l2, c) / omega(m.s, a1, a2, d, d, l2, c);
        w.offer(r / std::pow(2.0, a1 + a2), m.name + fmt(" alpha=(%g,%g)", a1, a2) + fmt(" delta=%g", d));
      }
    }
    return w;
  });
  return finish("dyadic_doubling", w, 1.0 + 1e-6);
}

PropertyOutcome dilation_bound(const std::vector<Member>& corpus) {
  const auto w = over_members(corpus, [](const Member& m) {
    Worst w;
    const auto c = literal_grid();
    for (double a : {0.75, 1.0, 1.5, 2.0}) {
      for (double d : {0.1, 0.4, 1.2}) {
        const double base = omega(m.s, a, a, d, d, m.pp, c);
        const double r1 = omega(m.s, a, a, 2 * d, d, m.pp, c) / base;
        const double r2 = omega(m.s, a, a, d, 2 * d, m.pp, c) / base;
        const double bound = std::pow(3.0, a);
        w.offer(r1 / bound, m.name + fmt(" axis=1 alpha=%g delta=%g", a, d));
        w.offer(r2 / bound, m.name + fmt(" axis=2 alpha=%g delta=%g", a, d));
      }
    }
    return w;
  });
  return finish("dilation_bound", w, 1.0 + 1e-6);
}

// Largest ratio num/den over a sweep, under two discretizations; reports the
// relative change between them. An empirical constant is accepted when it is
// finite and insensitive to refinement.
template <typename Ratio>
PropertyOutcome stable_constant(const std::string& name, const std::vector<Member>& corpus, Ratio&& ratio) {
  struct Pair {
    double coarse = 0;
    double fine = 0;
    std::string where;
  };
  std::vector<Pair> per(corpus.size());
  parallel_for(corpus.size(), [&](std::size_t i) {
    double best = -1;
    ratio(corpus[i], literal_grid(), [&](double r, const std::string& where) {
      if (r > best) {
        best = r;
        per[i].where = where;
      }
    });
    per[i].coarse = best;
    best = -1;
    ratio(corpus[i], refined_controls(), [&](double r, const std::string&) { best = std::max(best, r); });
    per[i].fine = best;
  });
  double coarse = -1;
  double fine = -1;
  std::string where;
  for (const auto& p : per) {
    if (p.coarse > coarse) {
      coarse = p.coarse;
      where = p.where;
    }
    fine = std::max(fine, p.fine);
  }
  Worst w;
  const double change = std::abs(fine / coarse - 1.0);
  w.offer(std::isfinite(coarse) && std::isfinite(fine) && coarse > 0 ? change : std::numeric_limits<double>::infinity(),
          where + fmt(" constant=%.6g refined=%.6g", coarse, fine));
  return finish(name, w, 0.05);
}

using Sink = std::function<void(double, const std::string&)>;

PropertyOutcome angle_approximation_chain(const std::vector<Member>& corpus) {
  return stable_constant("angle_approximation_chain", corpus, [](const Member& m, const SearchControls& c, const Sink& sink) {
    const ExponentPair l2{2.0, 2.0};
    for (int n = 2; n <= 64; n *= 2) {
      const double y = angle_best_L2(m.s, {n - 1, n - 1}).error;
      const double w = omega(m.s, 1.0, 1.0, 1.0 / n, 1.0 / n, l2, c);
      sink(y / w, m.name + fmt(" n=%g", n));
    }
  });
}

PropertyOutcome order_comparison(const std::vector<Member>& corpus) {
  return stable_constant("order_comparison", corpus, [](const Member& m, const SearchControls& c, const Sink& sink) {
    for (int j = 1; j <= 4; ++j) {
      const double d = std::ldexp(1.0, -j);
      const double hi = omega(m.s, 1.5, 1.25, d, d, m.pp, c);
      const double lo = omega(m.s, 0.5, 0.75, d, d, m.pp, c);
      sink(hi / lo, m.name + fmt(" delta=%g", d));
    }
  });
}

PropertyOutcome normalized_order_comparison(const std::vector<Member>& corpus) {
  return stable_constant("normalized_order_comparison", corpus,
                         [](const Member& m, const SearchControls& c, const Sink& sink) {
                           for (int j = 1; j <= 4; ++j) {
                             const double d = std::ldexp(1.0, -j);
                             const double lo = std::pow(d, -1.25) * omega(m.s, 0.5, 0.75, d, d, m.pp, c);
                             const double hi = std::pow(d, -2.75) * omega(m.s, 1.5, 1.25, d, d, m.pp, c);
                             sink(lo / hi, m.name + fmt(" delta=%g", d));
                           }
                         });
}

PropertyOutcome derivative_transfer(const std::vector<Member>& corpus) {
  return stable_constant("derivative_transfer", corpus, [](const Member& m, const SearchControls& c, const Sink& sink) {
    for (double r : {0.5, 1.0}) {
      const Spectrum2D deriv = weyl_derivative(m.s, r, 0.0);
      for (int j = 1; j <= 4; ++j) {
        const double d = std::ldexp(1.0, -j);
        const double lhs = std::pow(d, -r) * omega(m.s, 0.8 + r, 1.0, d, d, m.pp, c);
        const double rhs = omega(deriv, 0.8, 1.0, d, d, m.pp, c);
        sink(lhs / rhs, m.name + fmt(" r=%g delta=%g", r, d));
      }
    }
  });
}

PropertyOutcome conjugate_phase_identity(std::uint64_t seed, int count, bool flip) {
  std::mt19937_64 rng(seed ^ 0x5bd1e995ULL);
  std::uniform_int_distribution<int> band(4, 32);
  std::vector<std::pair<int, std::uint64_t>> draws;
  for (int i = 0; i < count; ++i) {
    const int b = band(rng);
    draws.emplace_back(b, rng());
  }
  std::vector<Worst> per(draws.size());
  parallel_for(draws.size(), [&](std::size_t i) {
    const auto [b, s] = draws[i];
    const Spectrum1D f = random_polynomial_1d(s, b);
    const std::size_t n = 128;
    for (double a : {0.3, 1.0, 1.7}) {
      Spectrum1D direct(f.kmax());
      for (int k = -f.kmax(); k <= f.kmax(); ++k) direct.at(k) = std::pow(std::abs(k), a) * f.at(k);
      Spectrum1D d1 = weyl_derivative(f, a);
      Spectrum1D d2 = weyl_derivative(conjugate_axis(f), a);
      if (flip) {
        for (auto* sp : {&d1, &d2}) {
          for (int k = -sp->kmax(); k <= sp->kmax(); ++k) {
            if (k != 0) sp->at(k) *= std::polar(1.0, -2.0 * (k > 0 ? 1 : -1) * a * pi / 2);
          }
        }
      }
      const auto lhs = synthesize(direct, n);
      const auto x = synthesize(d1, n);
      const auto y = synthesize(d2, n);
      double scale = 1.0;
      double err = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        scale = std::max(scale, std::abs(lhs[j]));
        err = std::max(err, std::abs(lhs[j] - (std::cos(pi * a / 2) * x[j] + std::sin(pi * a / 2) * y[j])));
      }
      char where[64];
      std::snprintf(where, sizeof where, "draw=%zu band=%d alpha=%g", i, b, a);
      per[i].offer(err / scale, where);
    }
  });
  Worst w;
  for (const auto& p : per) w.offer(p.value, p.witness);
  return finish("conjugate_phase_identity", w, 1e-9);
}

PropertyOutcome kernel_partial_sum_stabilization() {
  std::vector<double> xs;
  for (int i = 0; i <= 400; ++i) xs.push_back(std::exp(std::log(1e-5) + (std::log(pi) - std::log(1e-5)) * i / 400.0));
  for (int i = 1; i <= 1000; ++i) xs.push_back(pi * i / 1000.0);

  struct Job {
    double alpha;
    KernelKind kind;
  };
  std::vector<Job> jobs;
  for (double a : {0.25, 0.5, 0.75}) {
    jobs.push_back({a, KernelKind::cos});
    jobs.push_back({a, KernelKind::sin});
  }
  std::vector<Worst> per(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) {
    const auto [a, kind] = jobs[i];
    double all = 0;
    double late = 0;
    for (int e = 4; e <= 12; ++e) {
      const int n = 1 << e;
      double m = 0;
      // Running partial sums in n would be cheaper, but each n is evaluated
      // on its own to exercise the public routine.
      for (double x : xs) m = std::max(m, std::abs(kernel_partial_sum(n, a, x, kind)) * std::pow(x, 1 - a));
      all = std::max(all, m);
      if (e >= 6) late = std::max(late, m);
    }
    char where[64];
    std::snprintf(where, sizeof where, "alpha=%g kind=%s", a, kind == KernelKind::cos ? "cos" : "sin");
    per[i].offer(1.0 - late / all, where);
  });
  Worst w;
  for (const auto& p : per) w.offer(p.value, p.witness);
  return finish("kernel_partial_sum_stabilization", w, 0.10);
}

}  // namespace

std::vector<std::string> all_property_names() {
  return {"vanishes_at_zero_step", "subadditive",         "monotone_in_delta",
          "dyadic_doubling",       "dilation_bound",      "angle_approximation_chain",
          "order_comparison",      "normalized_order_comparison", "derivative_transfer",
          "conjugate_phase_identity", "kernel_partial_sum_stabilization"};
}

std::vector<PropertyOutcome> run_properties(const PropertySuiteConfig& config) {
  const auto known = all_property_names();
  for (const auto& n : config.names) {
    if (std::find(known.begin(), known.end(), n) == known.end()) throw InvalidInput("unknown property '" + n + "'");
  }
  if (config.corpus_size < 1) throw InvalidInput("property corpus needs at least one member");
  std::vector<PropertyOutcome> out;
  if (config.names.empty()) return out;
  const auto corpus = property_corpus(config.seed, config.corpus_size);
  for (const auto& n : config.names) {
    if (n == "vanishes_at_zero_step") out.push_back(vanishes_at_zero_step(corpus));
    else if (n == "subadditive") out.push_back(subadditive(corpus));
    else if (n == "monotone_in_delta") out.push_back(monotone_in_delta(corpus));
    else if (n == "dyadic_doubling") out.push_back(dyadic_doubling(corpus));
    else if (n == "dilation_bound") out.push_back(dilation_bound(corpus));
    else if (n == "angle_approximation_chain") out.push_back(angle_approximation_chain(corpus));
    else if (n == "order_comparison") out.push_back(order_comparison(corpus));
    else if (n == "normalized_order_comparison") out.push_back(normalized_order_comparison(corpus));
    else if (n == "derivative_transfer") out.push_back(derivative_transfer(corpus));
    else if (n == "conjugate_phase_identity")
      out.push_back(conjugate_phase_identity(config.seed, config.corpus_size, config.inject_sign_flip));
    else if (n == "kernel_partial_sum_stabilization") out.push_back(kernel_partial_sum_stabilization());
  }
  return out;
}

}  // namespace mixsmooth
