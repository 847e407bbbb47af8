// Command line front end: moduli tables, inequality reports, rate fits and the
// property suite.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "mixsmooth/error.hpp"
#include "mixsmooth/harness.hpp"
#include "mixsmooth/parallel.hpp"
#include "mixsmooth/properties.hpp"
#include "mixsmooth/report.hpp"
#include "mixsmooth/spectral.hpp"

using namespace mixsmooth;

namespace {

struct Common {
  std::string out;
  std::string format = "csv";
  unsigned threads = 1;
};

struct FunctionArgs {
  std::string preset = "f0";
  std::string spectrum_file;
  int band = 8;
  int terms = 16;
  std::uint64_t seed = 20240601;
};

struct Numerics {
  int steps = 17;
  int refine = 3;
  int grid = 4;
  int sup_grid = 16;
  int levels = 10;

  SearchControls controls() const {
    SearchControls c;
    c.steps_per_axis = steps;
    c.refine_rounds = refine;
    c.oversample = grid;
    c.sup_oversample = sup_grid;
    c.validate();
    return c;
  }
};

std::pair<double, double> parse_pair(const std::string& text, const char* what) {
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) {
      const double v = std::stod(text);
      return {v, v};
    }
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw InvalidInput(std::string("cannot parse ") + what + " '" + text + "'");
  }
}

Spectrum2D load_function(const FunctionArgs& f) {
  if (!f.spectrum_file.empty()) {
    std::ifstream in(f.spectrum_file);
    if (!in) throw InvalidInput("cannot open spectrum file " + f.spectrum_file);
    std::stringstream buf;
    buf << in.rdbuf();
    return spectrum_from_json(buf.str());
  }
  if (f.preset == "f0") return make_f0();
  if (f.preset == "zero") return Spectrum2D(1, 1);
  if (f.preset == "f1") {
    LacunaryParams p;
    p.terms = f.terms;
    return make_product(make_sine(), make_lacunary(p));
  }
  if (f.preset == "random") return random_polynomial(f.seed, f.band, f.band);
  throw InvalidInput("unknown preset '" + f.preset + "' (f0, f1, zero, random)");
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.out, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + c.out);
  out << text;
}

void add_common(CLI::App* app, Common& c) {
  app->add_option("--out", c.out, "Output file (stdout when omitted)");
  app->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--threads", c.threads, "Worker threads (0 = all cores)");
}

void add_function(CLI::App* app, FunctionArgs& f) {
  app->add_option("--preset", f.preset, "f0, f1, zero or random");
  app->add_option("--spectrum", f.spectrum_file, "Spectrum JSON {kmax1, kmax2, re, im}");
  app->add_option("--band", f.band, "Band per axis of the random preset");
  app->add_option("--terms", f.terms, "Lacunary terms of the f1 preset");
  app->add_option("--seed", f.seed, "Seed of the random preset");
}

void add_numerics(CLI::App* app, Numerics& n) {
  app->add_option("--steps", n.steps, "Step samples per axis (odd, >= 9)");
  app->add_option("--refine", n.refine, "Local refinement rounds");
  app->add_option("--grid", n.grid, "Spatial grid points per unit of band, finite exponents");
  app->add_option("--sup-grid", n.sup_grid, "Spatial grid points per unit of band, p = inf");
  app->add_option("--levels", n.levels, "Dyadic levels in the integral");
}

int cmd_modulus(const Common& c, const FunctionArgs& f, const Numerics& n, const std::string& alpha,
                const std::string& norm, const std::string& range, bool refine_check) {
  const auto s = load_function(f);
  const auto [a1, a2] = parse_pair(alpha, "--alpha");
  const auto pp = ExponentPair::parse(norm);
  const auto deltas = DyadicRange::parse(range).deltas();
  ModulusQuery base{a1, a2, 1.0, 1.0, pp, n.controls()};
  std::vector<ModulusRow> rows;
  for (double d2 : deltas) {
    for (double d1 : deltas) {
      ModulusQuery q = base;
      q.delta1 = d1;
      q.delta2 = d2;
      ModulusRow row{d1, d2, mixed_modulus(s, q), -1};
      if (refine_check) {
        q.controls.steps_per_axis = 2 * q.controls.steps_per_axis - 1;
        const double fine = mixed_modulus(s, q);
        row.refinement_change = row.omega > 0 ? std::abs(fine / row.omega - 1) : std::abs(fine);
      }
      rows.push_back(row);
    }
  }
  emit(c, c.format == "json" ? modulus_json(rows) : modulus_csv(rows));
  return 0;
}

int cmd_ulyanov(const Common& c, const FunctionArgs& f, const Numerics& n, const std::string& alpha,
                const std::string& rho, const std::string& from, const std::string& to, const std::string& range) {
  UlyanovQuery q;
  std::tie(q.alpha1, q.alpha2) = parse_pair(alpha, "--alpha");
  std::tie(q.rho1, q.rho2) = parse_pair(rho, "--rho");
  q.from = ExponentPair::parse(from);
  q.to = ExponentPair::parse(to);
  q.range1 = q.range2 = DyadicRange::parse(range);
  q.levels = n.levels;
  q.controls = n.controls();
  q.validate();
  UlyanovReport rep;
  if (f.preset == "f1" && f.spectrum_file.empty()) {
    LacunaryParams p;
    p.terms = f.terms;
    rep = ulyanov_report(SeparableFunction{make_sine(), make_lacunary(p)}, q);
  } else {
    rep = ulyanov_report(load_function(f), q);
  }
  emit(c, c.format == "json" ? ulyanov_json(rep) : ulyanov_csv(rep));
  return std::isfinite(rep.max_ratio) ? 0 : 1;
}

std::string fit_csv(const RateFit& f, const std::string& label) {
  std::ostringstream out;
  out << label << ',' << format_number(f.a) << ',' << format_number(f.b) << ',' << format_number(f.c) << ','
      << format_number(f.residual) << "\n";
  return out.str();
}

int cmd_ratefit(const Common& c, const Numerics& n, const std::string& mode, const std::string& alpha, double beta,
                int terms, const std::string& from, const std::string& to, const std::string& range,
                const std::string& points_file, int drop) {
  const std::string header = "series,a,b,c,residual\n";
  if (mode == "points") {
    std::ifstream in(points_file);
    if (!in) throw InvalidInput("cannot open points file '" + points_file + "'");
    std::vector<RatePoint> pts;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line.find_first_not_of("0123456789.eE+-, \t") != std::string::npos) continue;
      const auto [d, v] = parse_pair(line, "point");
      pts.push_back({d, v});
    }
    const auto fit = rate_fit(pts, {RateModel::power_log, drop});
    emit(c, c.format == "json" ? rate_fit_json(fit) : header + fit_csv(fit, "points"));
    return 0;
  }
  const auto [a1, a2] = parse_pair(alpha, "--alpha");
  if (mode == "lacunary") {
    LacunaryRateSetup setup;
    setup.series.alpha = a1;
    setup.series.beta = beta;
    setup.series.terms = terms;
    setup.p = Exponent::parse(from);
    setup.q = Exponent::parse(to);
    setup.range = DyadicRange::parse(range);
    setup.levels = n.levels;
    setup.drop_coarsest = drop;
    setup.controls = n.controls();
    const auto r = lacunary_rates(setup);
    if (c.format == "json") {
      Separation both{r.modulus, r.rhs, r.modulus.a - r.rhs.a, r.modulus.b - r.rhs.b};
      emit(c, separation_json(both));
    } else {
      emit(c, header + fit_csv(r.modulus, "modulus") + fit_csv(r.rhs, "integral"));
    }
    return 0;
  }
  if (mode == "plain" || mode == "shifted") {
    SeparationSetup setup;
    setup.family = mode == "plain" ? LacunaryPhase::plain : LacunaryPhase::shifted;
    setup.alpha1 = a1;
    setup.alpha2 = a2;
    setup.beta = beta;
    setup.terms = terms;
    setup.from = ExponentPair::parse(from);
    setup.to = ExponentPair::parse(to);
    setup.range2 = DyadicRange::parse(range);
    setup.levels = n.levels;
    setup.drop_coarsest = drop;
    setup.controls = n.controls();
    const auto s = separation_experiment(setup);
    if (c.format == "json") {
      emit(c, separation_json(s));
    } else {
      emit(c, header + fit_csv(s.lhs, "lhs") + fit_csv(s.rhs, "rhs"));
    }
    return 0;
  }
  throw InvalidInput("unknown ratefit mode '" + mode + "' (lacunary, plain, shifted, points)");
}

int cmd_properties(const Common& c, std::uint64_t seed, int corpus, const std::string& names, bool fault) {
  PropertySuiteConfig cfg;
  cfg.seed = seed;
  cfg.corpus_size = corpus;
  cfg.inject_sign_flip = fault;
  if (names == "all") {
    cfg.names = all_property_names();
  } else {
    std::stringstream ss(names);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) cfg.names.push_back(item);
    }
  }
  const auto out = run_properties(cfg);
  emit(c, c.format == "json" ? properties_json(out) : properties_csv(out));
  for (const auto& o : out) {
    if (!o.passed) return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mixed moduli of smoothness and Ulyanov-type inequalities"};
  app.require_subcommand(1);

  Common common;
  FunctionArgs fn;
  Numerics num;
  std::string alpha = "1,1";
  std::string rho = "0,0";
  std::string norm = "2,2";
  std::string from = "2,2";
  std::string to = "4,4";
  std::string range = "2:4";
  bool refine_check = false;

  auto* modulus = app.add_subcommand("modulus", "Mixed modulus table over dyadic deltas");
  add_common(modulus, common);
  add_function(modulus, fn);
  add_numerics(modulus, num);
  modulus->add_option("--alpha", alpha, "Orders a1,a2");
  modulus->add_option("--norm", norm, "Exponent pair p1,p2 of the norm");
  modulus->add_option("--from", norm, "Alias of --norm");
  modulus->add_option("--delta-range", range, "Dyadic exponents jmin:jmax, delta = 2^-j");
  modulus->add_flag("--refine-check", refine_check, "Recompute with a doubled step grid and report the change");

  auto* ulyanov = app.add_subcommand("ulyanov", "Both sides of the inequality over dyadic deltas");
  add_common(ulyanov, common);
  add_function(ulyanov, fn);
  add_numerics(ulyanov, num);
  ulyanov->add_option("--alpha", alpha, "Orders a1,a2");
  ulyanov->add_option("--rho", rho, "Derivative orders r1,r2");
  ulyanov->add_option("--from", from, "Exponents p1,p2 (inf accepted)");
  ulyanov->add_option("--to", to, "Exponents q1,q2 (inf accepted)");
  ulyanov->add_option("--delta-range", range, "Dyadic exponents jmin:jmax");

  std::string mode = "lacunary";
  std::string points_file;
  double beta = 0;
  int terms = 16;
  int drop = 2;
  std::string rf_alpha = "1,1";
  std::string rf_from = "2";
  std::string rf_to = "4";
  std::string rf_range = "3:12";
  auto* ratefit = app.add_subcommand("ratefit", "Fit delta^a log2(2/delta)^b to moduli or to given points");
  add_common(ratefit, common);
  add_numerics(ratefit, num);
  ratefit->add_option("--mode", mode, "lacunary, plain, shifted or points")
      ->check(CLI::IsMember({"lacunary", "plain", "shifted", "points"}));
  ratefit->add_option("--points", points_file, "CSV of delta,value rows for --mode points");
  ratefit->add_option("--alpha", rf_alpha, "Series order (lacunary) or a1,a2 (plain, shifted)");
  ratefit->add_option("--beta", beta, "Log weight exponent of the series");
  ratefit->add_option("--terms", terms, "Lacunary terms");
  ratefit->add_option("--from", rf_from, "p (lacunary) or p1,p2");
  ratefit->add_option("--to", rf_to, "q (lacunary) or q1,q2");
  ratefit->add_option("--delta-range", rf_range, "Dyadic exponents jmin:jmax");
  ratefit->add_option("--drop", drop, "Coarsest points left out of the fit");

  std::uint64_t seed = 20240601;
  int corpus = 50;
  std::string names = "all";
  bool fault = false;
  auto* props = app.add_subcommand("properties", "Run the seeded property suite");
  add_common(props, common);
  props->add_option("--seed", seed, "Corpus seed");
  props->add_option("--corpus-size", corpus, "Random polynomials in the corpus");
  props->add_option("--properties", names, "Comma separated names, 'all', or empty for none");
  props->add_flag("--inject-fault", fault, "Flip a multiplier sign so the suite must fail");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    set_thread_count(common.threads);
    if (*modulus) return cmd_modulus(common, fn, num, alpha, norm, range, refine_check);
    if (*ulyanov) return cmd_ulyanov(common, fn, num, alpha, rho, from, to, range);
    if (*ratefit) {
      if (mode == "plain" || mode == "shifted") {
        if (rf_from == "2") rf_from = "2,2";
        if (rf_to == "4") rf_to = "4,4";
      }
      if (mode == "lacunary" && rf_alpha == "1,1") rf_alpha = "1";
      return cmd_ratefit(common, num, mode, rf_alpha, beta, terms, rf_from, rf_to, rf_range, points_file, drop);
    }
    if (*props) return cmd_properties(common, seed, corpus, names, fault);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
