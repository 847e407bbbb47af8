#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mixsmooth/error.hpp"
#include "mixsmooth/harness.hpp"
#include "mixsmooth/parallel.hpp"
#include "mixsmooth/properties.hpp"
#include "mixsmooth/realization.hpp"
#include "mixsmooth/report.hpp"
#include "mixsmooth/smoothness.hpp"
#include "mixsmooth/spectral.hpp"

namespace py = pybind11;
using namespace mixsmooth;

namespace {

// Exponents arrive as numbers or as strings such as "inf".
Exponent to_exponent(const py::handle& h) {
  if (py::isinstance<py::str>(h)) return Exponent::parse(h.cast<std::string>());
  return Exponent(h.cast<double>());
}

ExponentPair to_pair(const py::object& o) {
  if (py::isinstance<py::str>(o)) return ExponentPair::parse(o.cast<std::string>());
  auto t = o.cast<py::sequence>();
  if (t.size() != 2) throw InvalidInput("exponent pair needs two entries");
  return {to_exponent(t[0]), to_exponent(t[1])};
}

SearchControls controls(int steps, int refine, int grid, int sup_grid) {
  SearchControls c;
  c.steps_per_axis = steps;
  c.refine_rounds = refine;
  c.oversample = grid;
  c.sup_oversample = sup_grid;
  c.validate();
  return c;
}

// Rows index k2 = -kmax2..kmax2, columns k1 = -kmax1..kmax1.
Spectrum2D from_array(py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast> a) {
  if (a.ndim() != 2 || a.shape(0) % 2 == 0 || a.shape(1) % 2 == 0)
    throw InvalidInput("coefficient array needs odd shape (2*kmax2+1, 2*kmax1+1)");
  Spectrum2D s(static_cast<int>(a.shape(1) / 2), static_cast<int>(a.shape(0) / 2));
  std::copy(a.data(), a.data() + a.size(), s.coeffs().begin());
  return s;
}

py::array_t<std::complex<double>> to_array(const Spectrum2D& s) {
  py::array_t<std::complex<double>> a({2 * s.kmax2() + 1, 2 * s.kmax1() + 1});
  std::copy(s.coeffs().begin(), s.coeffs().end(), a.mutable_data());
  return a;
}

py::dict fit_dict(const RateFit& f) {
  py::dict d;
  d["a"] = f.a;
  d["b"] = f.b;
  d["c"] = f.c;
  d["residual"] = f.residual;
  return d;
}

}  // namespace

PYBIND11_MODULE(_mixsmooth, m) {
  m.doc() = "Mixed moduli of smoothness of periodic functions of two variables";

  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<NumericalFailure>(m, "NumericalFailure", PyExc_ArithmeticError);

  py::class_<Spectrum2D>(m, "Spectrum")
      .def(py::init(&from_array), py::arg("coefficients"))
      .def_property_readonly("kmax1", &Spectrum2D::kmax1)
      .def_property_readonly("kmax2", &Spectrum2D::kmax2)
      .def_property_readonly("coefficients", &to_array)
      .def("to_json", [](const Spectrum2D& s) { return spectrum_to_json(s); })
      .def_static("from_json", [](const std::string& t) { return spectrum_from_json(t); })
      .def("__repr__", [](const Spectrum2D& s) {
        return "Spectrum(kmax1=" + std::to_string(s.kmax1()) + ", kmax2=" + std::to_string(s.kmax2()) + ")";
      });

  m.def("f0", &make_f0, "sin x1 sin x2");
  m.def(
      "f1",
      [](int terms, double alpha, double beta) {
        LacunaryParams p;
        p.terms = terms;
        p.alpha = alpha;
        p.beta = beta;
        return make_product(make_sine(), make_lacunary(p));
      },
      py::arg("terms") = 8, py::arg("alpha") = 1.0, py::arg("beta") = 0.0, "sin x1 times a lacunary series in x2");
  m.def("random_polynomial", &random_polynomial, py::arg("seed"), py::arg("band1"), py::arg("band2"));

  m.def(
      "mixed_norm",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> v, const py::object& norm) {
        if (v.ndim() != 2) throw InvalidInput("samples must be a 2D array indexed [x2, x1]");
        const GridSpec2D g(v.shape(1), v.shape(0));
        return mixed_norm(Sample2D(g, std::vector<double>(v.data(), v.data() + v.size())), to_pair(norm));
      },
      py::arg("samples"), py::arg("norm") = py::make_tuple(2.0, 2.0),
      "Mixed norm of samples on the uniform grid; rows are x2-slices");

  m.def(
      "synthesize",
      [](const Spectrum2D& s, std::size_t n1, std::size_t n2) {
        const auto f = synthesize(s, GridSpec2D(n1, n2));
        py::array_t<double> a({n2, n1});
        std::copy(f.values().begin(), f.values().end(), a.mutable_data());
        return a;
      },
      py::arg("spectrum"), py::arg("n1"), py::arg("n2"));

  m.def("weyl_derivative", py::overload_cast<const Spectrum2D&, double, double>(&weyl_derivative),
        py::arg("spectrum"), py::arg("rho1"), py::arg("rho2"));

  m.def(
      "mixed_modulus",
      [](const Spectrum2D& s, std::pair<double, double> alpha, std::pair<double, double> delta,
         const py::object& norm, int steps, int refine, int grid, int sup_grid) {
        ModulusQuery q{alpha.first, alpha.second, delta.first, delta.second, to_pair(norm),
                       controls(steps, refine, grid, sup_grid)};
        return mixed_modulus(s, q);
      },
      py::arg("spectrum"), py::arg("alpha") = std::pair{1.0, 1.0}, py::arg("delta") = std::pair{1.0, 1.0},
      py::arg("norm") = py::make_tuple(2.0, 2.0), py::arg("steps") = 17, py::arg("refine") = 3,
      py::arg("grid") = 4, py::arg("sup_grid") = 16);

  m.def(
      "realization",
      [](const Spectrum2D& s, int n1, int n2, std::pair<double, double> alpha, const py::object& norm) {
        return realization_functional(s, n1, n2, alpha.first, alpha.second, to_pair(norm));
      },
      py::arg("spectrum"), py::arg("n1"), py::arg("n2"), py::arg("alpha") = std::pair{1.0, 1.0},
      py::arg("norm") = py::make_tuple(2.0, 2.0));

  m.def(
      "ulyanov",
      [](const Spectrum2D& s, std::pair<double, double> alpha, std::pair<double, double> rho,
         const py::object& from, const py::object& to, const std::string& delta_range, int levels) {
        UlyanovQuery q;
        q.alpha1 = alpha.first;
        q.alpha2 = alpha.second;
        q.rho1 = rho.first;
        q.rho2 = rho.second;
        q.from = to_pair(from);
        q.to = to_pair(to);
        q.range1 = q.range2 = DyadicRange::parse(delta_range);
        q.levels = levels;
        q.validate();
        const auto r = ulyanov_report(s, q);
        py::list rows;
        for (const auto& row : r.rows) {
          py::dict d;
          d["delta1"] = row.delta1;
          d["delta2"] = row.delta2;
          d["lhs"] = row.lhs;
          d["rhs"] = row.rhs;
          d["ratio"] = row.ratio;
          rows.append(d);
        }
        py::dict out;
        out["max_ratio"] = r.max_ratio;
        out["min_ratio"] = r.min_ratio;
        out["rows"] = rows;
        return out;
      },
      py::arg("spectrum"), py::arg("alpha") = std::pair{1.0, 1.0}, py::arg("rho") = std::pair{0.0, 0.0},
      py::arg("from_") = py::make_tuple(2.0, 2.0), py::arg("to") = py::make_tuple(4.0, 4.0),
      py::arg("delta_range") = "2:4", py::arg("levels") = 10);

  m.def(
      "rate_fit",
      [](const std::vector<double>& deltas, const std::vector<double>& values, int drop_coarsest) {
        if (deltas.size() != values.size()) throw InvalidInput("deltas and values differ in length");
        std::vector<RatePoint> pts;
        for (std::size_t i = 0; i < deltas.size(); ++i) pts.push_back({deltas[i], values[i]});
        return fit_dict(rate_fit(pts, {RateModel::power_log, drop_coarsest}));
      },
      py::arg("deltas"), py::arg("values"), py::arg("drop_coarsest") = 0,
      "Fit c delta^a log2(2/delta)^b");

  m.def("property_names", &all_property_names);
  m.def(
      "run_properties",
      [](std::optional<std::vector<std::string>> names, int corpus_size, std::uint64_t seed) {
        PropertySuiteConfig cfg;
        cfg.names = names ? *names : all_property_names();
        cfg.corpus_size = corpus_size;
        cfg.seed = seed;
        py::list out;
        for (const auto& o : run_properties(cfg)) {
          py::dict d;
          d["name"] = o.name;
          d["passed"] = o.passed;
          d["worst"] = o.worst;
          d["threshold"] = o.threshold;
          d["witness"] = o.witness;
          out.append(d);
        }
        return out;
      },
      py::arg("names") = py::none(), py::arg("corpus_size") = 50, py::arg("seed") = 20240601);

  m.def("set_threads", &set_thread_count, py::arg("count"));
  m.def("threads", &thread_count);
}
