#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>

#include "quadanchor/cpoly.hpp"
#include "quadanchor/errors.hpp"
#include "quadanchor/examples.hpp"
#include "quadanchor/geometry.hpp"
#include "quadanchor/report_io.hpp"
#include "quadanchor/solver.hpp"
#include "quadanchor/sysbuild.hpp"

namespace py = pybind11;
using namespace quadanchor;

namespace {

// Exact scalar intake: int, "p/q" / decimal string, or anything with integer
// numerator/denominator attributes (fractions.Fraction). Floats are refused
// so no value sneaks through double rounding.
Rat rat_from_object(const py::handle& o, const std::string& where) {
  if (py::isinstance<py::str>(o)) {
    try {
      return rat_from_text(o.cast<std::string>());
    } catch (const input_error& e) {
      throw input_error(where + ": " + e.what());
    }
  }
  if (py::isinstance<py::bool_>(o))
    throw input_error(where + ": expected a number, got a bool");
  if (py::isinstance<py::int_>(o))
    return Rat(mpz_class(py::str(o).cast<std::string>(), 10));
  if (py::isinstance<py::float_>(o))
    throw input_error(where +
                      ": floating-point values are ambiguous; pass the exact "
                      "value as a string like \"1.1\" or \"11/10\"");
  if (py::hasattr(o, "numerator") && py::hasattr(o, "denominator")) {
    const mpz_class num(py::str(o.attr("numerator")).cast<std::string>(), 10);
    const mpz_class den(py::str(o.attr("denominator")).cast<std::string>(), 10);
    if (den == 0) throw input_error(where + ": zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
  }
  throw input_error(where + ": expected an int, a string, or a Fraction");
}

Configuration make_config(const py::sequence& anchors, const py::sequence& k) {
  if (py::len(anchors) != 4)
    throw input_error("anchors: expected four points, one per label A..D");
  if (py::len(k) != 4)
    throw input_error("k: expected four constants, one per label A..D");
  Configuration c;
  for (int i = 0; i < 4; ++i) {
    const std::string name = label_name(kLabels[size_t(i)]);
    const py::sequence pt = anchors[i].cast<py::sequence>();
    if (py::len(pt) != 2)
      throw input_error("anchors." + name + ": expected an (x, y) pair");
    c.anchors[size_t(i)].x = rat_from_object(pt[0], "anchors." + name + ".x");
    c.anchors[size_t(i)].y = rat_from_object(pt[1], "anchors." + name + ".y");
    c.constants[size_t(i)] = rat_from_object(k[i], "k." + name);
  }
  c.check_basic();
  return c;
}

py::list exact_anchors(const Configuration& c) {
  py::list out;
  for (const Point2& p : c.anchors)
    out.append(py::make_tuple(rat_to_text(p.x), rat_to_text(p.y)));
  return out;
}

py::list exact_constants(const Configuration& c) {
  py::list out;
  for (const Rat& r : c.constants) out.append(rat_to_text(r));
  return out;
}

CPoint2 cpoint_from(const py::sequence& s, const char* where) {
  if (py::len(s) != 2)
    throw input_error(std::string(where) + ": expected two complex coordinates");
  return CPoint2{s[0].cast<Cx>(), s[1].cast<Cx>()};
}

py::object witness_terms(const SolveReport& rep) {
  if (rep.classification != Classification::PositiveDimensional)
    return py::none();
  py::list terms;
  rep.witness_curve.for_each_term([&](const std::vector<int>& e, const Rat& co) {
    terms.append(py::make_tuple(py::cast(e), co.get_str()));
  });
  py::dict d;
  d["vars"] = py::cast(rep.witness_curve.vars());
  d["terms"] = terms;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Solver for the planar four-anchor inverse-square system";
  m.attr("__version__") = kToolVersion;

  py::register_exception<input_error>(m, "InputError", PyExc_ValueError);

  py::class_<Configuration>(m, "Configuration")
      .def(py::init(&make_config), py::arg("anchors"), py::arg("k"),
           "Exact configuration: four (x, y) anchor pairs and four non-zero "
           "constants. Scalars are ints, exact strings (\"11/10\", \"1.1\", "
           "\"-2\"), or Fractions.")
      .def_property_readonly("anchors", &exact_anchors,
                             "Anchor coordinates as exact strings, label order")
      .def_property_readonly("k", &exact_constants,
                             "Constants as exact strings, label order")
      .def("__repr__", [](const Configuration& c) {
        std::ostringstream s;
        s << "Configuration(anchors=" << py::str(exact_anchors(c)).cast<std::string>()
          << ", k=" << py::str(exact_constants(c)).cast<std::string>() << ")";
        return s.str();
      });

  py::class_<ValidationReport>(m, "ValidationReport")
      .def_readonly("condition_i_ok", &ValidationReport::condition_i_ok)
      .def_readonly("condition_ii_ok", &ValidationReport::condition_ii_ok)
      .def_property_readonly("violating_triples",
                             [](const ValidationReport& r) {
                               py::list out;
                               for (const auto& t : r.violating_triples)
                                 out.append(py::make_tuple(label_name(t[0]),
                                                           label_name(t[1]),
                                                           label_name(t[2])));
                               return out;
                             })
      .def_readonly("details", &ValidationReport::details)
      .def_property_readonly("ok", &ValidationReport::ok);

  py::class_<SolutionPair>(m, "SolutionPair")
      .def_readonly("X", &SolutionPair::X)
      .def_readonly("Y", &SolutionPair::Y)
      .def_readonly("residual", &SolutionPair::residual)
      .def_readonly("is_real", &SolutionPair::is_real)
      .def_readonly("multiplicity", &SolutionPair::multiplicity);

  py::class_<SolveReport>(m, "SolveReport")
      .def_property_readonly("classification",
                             [](const SolveReport& r) {
                               return classification_name(r.classification);
                             })
      .def_readonly("solutions", &SolveReport::solutions)
      .def_readonly("validation", &SolveReport::validation)
      .def_readonly("bezout_ceiling", &SolveReport::bezout_ceiling)
      .def_readonly("diagnostics", &SolveReport::diagnostics)
      .def_property_readonly("witness_curve", &witness_terms,
                             "None unless positive-dimensional; then a dict "
                             "with 'vars' and exact 'terms'");

  m.def("validate", &validate, py::arg("config"),
        "Check the two genericity conditions: no collinear anchor triple, no "
        "concurrent constraint-circle triple.");

  m.def(
      "solve",
      [](const Configuration& c, double tol_accept, double tol_real,
         double dedupe, unsigned seed) {
        ToleranceSettings tol;
        tol.tol_accept = tol_accept;
        tol.tol_real = tol_real;
        tol.dedupe = dedupe;
        tol.seed = seed;
        return solve(c, tol);
      },
      py::arg("config"), py::arg("tol_accept") = ToleranceSettings{}.tol_accept,
      py::arg("tol_real") = ToleranceSettings{}.tol_real,
      py::arg("dedupe") = ToleranceSettings{}.dedupe,
      py::arg("seed") = ToleranceSettings{}.seed,
      "Classify the configuration and enumerate all solution pairs when the "
      "set is finite.");

  m.def(
      "quartic_residual",
      [](const Configuration& c, const py::sequence& X, const py::sequence& Y) {
        return quartic_residual(c, cpoint_from(X, "X"), cpoint_from(Y, "Y"));
      },
      py::arg("config"), py::arg("X"), py::arg("Y"),
      "Max absolute value of the four cleared equations at a candidate pair.");

  m.def(
      "example",
      [](const std::string& name) {
        if (name == "square") return example_square();
        if (name == "collinear") return example_collinear();
        throw input_error("unknown example \"" + name +
                          "\"; choices: square, collinear");
      },
      py::arg("name"), "Built-in configurations: 'square' or 'collinear'.");

  m.def(
      "config_from_json",
      [](const std::string& text) { return parse_config_text(text).config; },
      py::arg("text"),
      "Parse the JSON input document (points/k keyed by A..D, exact scalars).");

  m.def(
      "report_to_json",
      [](const SolveReport& rep, const Configuration& c, double timing_ms) {
        ReportDocument doc;
        doc.report = rep;
        doc.input = c;
        doc.timing_ms = timing_ms;
        return report_to_json(doc);
      },
      py::arg("report"), py::arg("config"), py::arg("timing_ms") = 0.0,
      "Serialize a solve report with its echoed input, matching the CLI "
      "output format.");
}
