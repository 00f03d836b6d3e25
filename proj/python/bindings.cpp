#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "../src/cli/json_io.hpp"
#include "ultranorm/adelic.hpp"
#include "ultranorm/cli.hpp"
#include "ultranorm/lattice.hpp"
#include "ultranorm/normed_space.hpp"
#include "ultranorm/rational.hpp"

namespace py = pybind11;
using namespace ultranorm;
using cli::json;

namespace {

// Rationals cross the boundary as "num/den" strings; the Python layer wraps them in Fraction.
using Text = std::string;
using TextVector = std::vector<Text>;

Vector<Rational> to_vector(const TextVector& v) {
  Vector<Rational> out;
  out.reserve(v.size());
  for (const auto& s : v) out.push_back(parse_rational(s));
  return out;
}

TextVector to_text(const Vector<Rational>& v) {
  TextVector out;
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

std::vector<TextVector> to_text(const std::vector<Vector<Rational>>& vs) {
  std::vector<TextVector> out;
  for (const auto& v : vs) out.push_back(to_text(v));
  return out;
}

Matrix<Rational> to_matrix(const std::vector<TextVector>& rows) {
  if (rows.empty()) fail("dimension_mismatch", "matrix has no rows");
  std::vector<Vector<Rational>> rs;
  for (const auto& r : rows) rs.push_back(to_vector(r));
  for (const auto& r : rs)
    if (r.size() != rs.front().size()) fail("dimension_mismatch", "ragged matrix");
  return Matrix<Rational>::from_rows(std::span<const Vector<Rational>>(rs), rs.front().size());
}

json parse_doc(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw cli::SchemaError("", e.what());
  }
}

ValuedField field_of(const std::optional<unsigned long>& p) {
  return p ? ValuedField::padic(*p) : ValuedField::trivial();
}

class PyNormedSpace {
 public:
  explicit PyNormedSpace(NormedSpace s) : space_(std::move(s)) {}

  static PyNormedSpace from_json(const std::string& field_text, const std::string& norm_text) {
    json f = parse_doc(field_text), n = parse_doc(norm_text);
    auto field = cli::parse_field(cli::Node(f, "/field"));
    return PyNormedSpace(cli::parse_norm(cli::Node(n, "/norm"), field));
  }

  std::size_t dim() const { return space_.dim(); }
  Text norm(const TextVector& v) const { return to_string(space_.norm(to_vector(v)).value()); }
  TextVector weights() const {
    TextVector out;
    for (const auto& w : space_.weights()) out.push_back(to_string(w.value()));
    return out;
  }
  std::vector<TextVector> basis() const {
    std::vector<TextVector> out;
    for (std::size_t i = 0; i < space_.dim(); ++i) out.push_back(to_text(space_.basis_vector(i)));
    return out;
  }
  PyNormedSpace dual() const { return PyNormedSpace(dual_norm(space_)); }
  PyNormedSpace quotient(const std::vector<TextVector>& map) const {
    return PyNormedSpace(quotient_norm(space_, to_matrix(map)).target);
  }
  std::pair<std::vector<TextVector>, TextVector> orthogonalize(const std::vector<TextVector>& flag) const {
    std::vector<Vector<Rational>> vs;
    for (const auto& v : flag) vs.push_back(to_vector(v));
    auto fam = orthogonalize_flag(space_, std::span<const Vector<Rational>>(vs));
    TextVector w;
    for (const auto& m : fam.weights) w.push_back(to_string(m.value()));
    return {to_text(fam.vectors), w};
  }
  std::string to_json() const { return cli::to_json(space_).dump(); }

 private:
  NormedSpace space_;
};

py::dict lambda_of(const std::vector<TextVector>& generators, const std::string& norm_text, unsigned jobs) {
  std::vector<Vector<Rational>> gens;
  for (const auto& g : generators) gens.push_back(to_vector(g));
  if (gens.empty()) fail("dimension_mismatch", "no generators");
  const std::size_t dim = gens.front().size();
  json n = parse_doc(norm_text);
  NormedLattice nl{ZLattice::from_generators(std::span<const Vector<Rational>>(gens), dim),
                   cli::parse_polyhedral(cli::Node(n, "/norm"), dim)};
  LambdaOptions opts;
  opts.jobs = jobs;
  LambdaResult r;
  {
    py::gil_scoped_release release;
    r = compute_lambda(nl, opts);
  }
  py::dict out;
  out["rank"] = r.rank;
  out["lambda_q"] = to_string(r.lambda_q);
  out["lambda_z"] = to_string(r.lambda_z);
  out["q_basis"] = to_text(r.q_basis);
  out["z_basis"] = to_text(r.z_basis);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  static py::exception<PreconditionError> precondition(m, "PreconditionError", PyExc_ValueError);
  static py::exception<cli::SchemaError> schema(m, "SchemaError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const PreconditionError& e) {
      py::object err = py::handle(precondition.ptr())(e.what());
      err.attr("code") = e.code();
      PyErr_SetObject(precondition.ptr(), err.ptr());
    } catch (const cli::SchemaError& e) {
      py::object err = py::handle(schema.ptr())(e.what());
      err.attr("pointer") = e.pointer();
      PyErr_SetObject(schema.ptr(), err.ptr());
    }
  });

  m.def(
      "run",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = cli::run(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));

  m.def(
      "abs_value",
      [](const Text& x, std::optional<unsigned long> p) { return to_string(field_of(p).abs(parse_rational(x)).value()); },
      py::arg("x"), py::arg("p") = py::none());
  m.def(
      "valuation", [](const Text& x, unsigned long p) { return valuation(parse_rational(x), p); }, py::arg("x"),
      py::arg("p"));

  py::class_<PyNormedSpace>(m, "NormedSpace")
      .def_static("from_json", &PyNormedSpace::from_json, py::arg("field"), py::arg("norm"))
      .def_property_readonly("dim", &PyNormedSpace::dim)
      .def("norm", &PyNormedSpace::norm, py::arg("v"))
      .def("weights", &PyNormedSpace::weights)
      .def("basis", &PyNormedSpace::basis)
      .def("dual", &PyNormedSpace::dual)
      .def("quotient", &PyNormedSpace::quotient, py::arg("map"))
      .def("orthogonalize", &PyNormedSpace::orthogonalize, py::arg("flag"))
      .def("to_json", &PyNormedSpace::to_json);

  m.def("compute_lambda", &lambda_of, py::arg("generators"), py::arg("norm"), py::arg("jobs") = 1);
}
