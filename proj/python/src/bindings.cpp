#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "toeplitz_bounds/cli.hpp"
#include "toeplitz_bounds/errors.hpp"
#include "toeplitz_bounds/json_io.hpp"
#include "toeplitz_bounds/omega.hpp"
#include "toeplitz_bounds/pick.hpp"
#include "toeplitz_bounds/toeplitz.hpp"

namespace py = pybind11;
using namespace tb;

namespace {

py::object to_python(const json& j) {
  switch (j.type()) {
    case json::value_t::null:
      return py::none();
    case json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case json::value_t::number_integer:
    case json::value_t::number_unsigned:
      return py::int_(j.get<long long>());
    case json::value_t::number_float:
      return py::float_(j.get<double>());
    case json::value_t::string:
      return py::str(j.get<std::string>());
    case json::value_t::array: {
      py::list out;
      for (const auto& e : j) out.append(to_python(e));
      return out;
    }
    case json::value_t::object: {
      py::dict out;
      for (const auto& [k, v] : j.items()) out[py::str(k)] = to_python(v);
      return out;
    }
    default:
      return py::none();
  }
}

QuadratureSpec lambda_spec(double tol) {
  QuadratureSpec s = lambda_quadrature_spec();
  s.abs_tol = tol;
  s.validate();
  return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Certified bounds for Toeplitz operators with finite Blaschke product symbols";

  // Later registrations are tried first, so the most derived types come last.
  // Each Python class also derives from the matching builtin.
  const auto base = py::register_exception<Error>(m, "ToeplitzBoundsError", PyExc_RuntimeError);
  py::register_exception<InvalidInput>(m, "InvalidInput",
                                       py::make_tuple(base, py::handle(PyExc_ValueError)));
  py::register_exception<NumericalBreakdown>(
      m, "NumericalBreakdown", py::make_tuple(base, py::handle(PyExc_ArithmeticError)));
  py::register_exception<ToleranceNotMet>(m, "ToleranceNotMet",
                                          py::make_tuple(base, py::handle(PyExc_ArithmeticError)));

  py::class_<BlaschkeProduct>(m, "BlaschkeProduct")
      .def(py::init([](const std::vector<Complex>& zeros) { return BlaschkeProduct(zeros); }),
           py::arg("zeros"))
      .def("__call__", [](const BlaschkeProduct& b, Complex z) { return eval_blaschke(b, z); })
      .def("derivative", &eval_blaschke_derivative)
      .def_property_readonly("degree", &BlaschkeProduct::degree)
      .def_property_readonly("zeros", &BlaschkeProduct::zeros)
      .def("__repr__", [](const BlaschkeProduct& b) {
        return "BlaschkeProduct(" + write_zeros(b.zeros()) + ")";
      });

  m.def(
      "lambda_functional",
      [](const std::vector<Complex>& zeros, double tol, int rotation_grid) {
        return to_python(json(lambda_functional(BlaschkeProduct(zeros), lambda_spec(tol),
                                                rotation_grid)));
      },
      py::arg("zeros"), py::arg("tol") = 1e-8, py::arg("rotation_grid") = 256,
      "sup over rotations of the Lambda integral; returns value, eta, error");

  m.def(
      "apply_toeplitz",
      [](const std::vector<Complex>& zeros, const std::vector<Complex>& numerator,
         const std::vector<Complex>& denominator, Complex z, const std::string& method,
         double tol) {
        const BlaschkeProduct b(zeros);
        const RationalFunction h(numerator, denominator);
        if (method == "residue") return apply_toeplitz_residue(b, h, UnitDiskPoint(z));
        if (method == "contour") {
          QuadratureSpec s;
          s.abs_tol = tol;
          return apply_toeplitz_contour(b, h, UnitDiskPoint(z), s).value;
        }
        throw InvalidInput("method must be 'residue' or 'contour'");
      },
      py::arg("zeros"), py::arg("numerator"), py::arg("denominator") = std::vector<Complex>{1.0},
      py::arg("z"), py::arg("method") = "residue", py::arg("tol") = 1e-9,
      "(T_B h)(z) for h = numerator/denominator, ascending coefficients");

  m.def(
      "minimal_level",
      [](const std::vector<Complex>& nodes, const std::vector<Complex>& targets) {
        return minimal_level(InterpolationProblem{nodes, targets});
      },
      py::arg("nodes"), py::arg("targets"));

  m.def(
      "construct_interpolant",
      [](const std::vector<Complex>& nodes, const std::vector<Complex>& targets, double level) {
        return to_python(json(construct_interpolant(InterpolationProblem{nodes, targets}, level)));
      },
      py::arg("nodes"), py::arg("targets"), py::arg("level"));

  m.def(
      "certify_lower_bound",
      [](int n, double q, int m_index, Complex xi) {
        return to_python(
            json(certify_lower_bound(make_ray_configuration(CirclePoint(xi), q, n, m_index))));
      },
      py::arg("n"), py::arg("q"), py::arg("m"), py::arg("xi") = Complex(1.0, 0.0));

  m.def(
      "ideal_limit", &ideal_limit, py::arg("n"), py::arg("q"));

  m.def(
      "lemma1_upper_bound",
      [](const std::vector<Complex>& zeros, double tol) {
        return lemma1_upper_bound(BlaschkeProduct(zeros), lambda_spec(tol)).value;
      },
      py::arg("zeros"), py::arg("tol") = 1e-8);

  m.def(
      "omega_study",
      [](int n, std::vector<double> q, std::vector<int> m_offsets, Complex xi, int threads) {
        StudyOptions o;
        o.degree = n;
        o.direction = CirclePoint(xi);
        o.q_schedule = std::move(q);
        o.m_offsets = std::move(m_offsets);
        o.threads = threads;
        StudyTable t;
        {
          py::gil_scoped_release release;
          t = omega_convergence_study(o);
        }
        py::dict out = to_python(json(t));
        out["csv"] = study_csv(t);
        return out;
      },
      py::arg("n"), py::arg("q") = std::vector<double>{0.3, 0.2, 0.1, 0.05},
      py::arg("m_offsets") = std::vector<int>{2, 4, 8, 16}, py::arg("xi") = Complex(1.0, 0.0),
      py::arg("threads") = 0);

  m.def(
      "direct_norm_estimate",
      [](const std::vector<Complex>& zeros, Complex z, int restarts, std::uint64_t seed) {
        return direct_norm_estimate(BlaschkeProduct(zeros), UnitDiskPoint(z), restarts, seed);
      },
      py::arg("zeros"), py::arg("z"), py::arg("restarts") = 32, py::arg("seed") = 1);

  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "toeplitz-bounds");
        std::vector<char*> argv;
        for (auto& a : args) argv.push_back(a.data());
        std::ostringstream out;
        std::ostringstream err;
        const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "run the command-line interface; returns (exit code, stdout, stderr)");
}
