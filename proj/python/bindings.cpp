#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rittlab/bessel.hpp"
#include "rittlab/cli.hpp"
#include "rittlab/zeros.hpp"

namespace py = pybind11;
using namespace rittlab;

namespace {

std::vector<std::string> strings(const std::vector<Rational>& v) {
  std::vector<std::string> out;
  for (const auto& q : v) out.push_back(q.get_str());
  return out;
}

}  // namespace

PYBIND11_MODULE(_rittlab, m) {
  m.doc() = "Exponential polynomials over number fields";

  static py::exception<Error> error(m, "RittlabError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<Session>(m, "Session")
      .def(py::init([](const std::string& field) {
             return field.empty() ? Session() : Session(parse_field_declaration(field));
           }),
           py::arg("field") = "")
      .def("set_field", [](Session& s, const std::string& decl) { s.set_field(parse_field_declaration(decl)); })
      .def("set_option", &Session::set_option)
      .def("let",
           [](Session& s, const std::string& name, const std::string& src) {
             s.bindings.insert_or_assign(name, parse_value(src, s));
           })
      .def("parse", [](const Session& s, const std::string& src) { return parse_expression(src, s).str(); })
      .def("run",
           [](Session& s, const std::string& verb, const std::vector<std::string>& args) {
             CommandResult r;
             {
               py::gil_scoped_release release;
               r = run_command(verb, args, s);
             }
             return py::make_tuple(r.doc.dump(), r.exit_code);
           })
      .def_property_readonly("field", [](const Session& s) { return s.field->declaration(); });

  m.def("bessel_series", [](int n, int order) { return strings(bessel_series(n, order)); }, py::arg("n"),
        py::arg("order"));
  m.def(
      "leibniz_constants",
      [](int mm) {
        auto c = leibniz_constants(mm);
        return py::make_tuple(c.c_mm.get_str(), c.c_m1m.get_str(), c.structure_ok);
      },
      py::arg("m"));
  m.def(
      "winding_count",
      [](const std::string& expr, const std::vector<std::string>& rect, const std::string& field) {
        Session s = field.empty() ? Session() : Session(parse_field_declaration(field));
        if (rect.size() != 4) throw Error(ErrorKind::InvalidArgument, "rect needs four bounds");
        Rectangle box(parse_rational_literal(rect[0]), parse_rational_literal(rect[1]),
                      parse_rational_literal(rect[2]), parse_rational_literal(rect[3]));
        ExpPoly f = parse_expression(expr, s);
        py::gil_scoped_release release;
        return winding_count(f, box, s.options.precision);
      },
      py::arg("expr"), py::arg("rect"), py::arg("field") = "");
}
