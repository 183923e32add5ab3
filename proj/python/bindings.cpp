// Python bindings: numpy matrices in and out, results as plain dicts.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "c0model/corona.hpp"
#include "c0model/equivalence.hpp"
#include "c0model/io.hpp"
#include "c0model/verify.hpp"

namespace py = pybind11;
using namespace c0;

namespace {

using ZeroList = std::vector<std::pair<Complex, int>>;

py::object to_py(const io::Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

BlaschkeProduct make_product(const ZeroList& zeros, Complex constant) {
  std::vector<Zero> z;
  for (const auto& [loc, mult] : zeros) z.push_back({loc, mult});
  return BlaschkeProduct(std::move(z), constant);
}

ZeroList zero_list(const BlaschkeProduct& b) {
  ZeroList out;
  for (const Zero& z : b.zeros()) out.emplace_back(z.location, z.multiplicity);
  return out;
}

RationalFunction rational(const std::vector<Complex>& num, const std::vector<Complex>& den) {
  return RationalFunction(num, den.empty() ? poly::Poly{1.0} : den);
}

}  // namespace

PYBIND11_MODULE(_c0model, m) {
  m.doc() = "Finite-dimensional model operators for class C0 contractions";

  static py::exception<Error> error(m, "C0Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, (std::string(to_string(e.code())) + ": " + e.what()).c_str());
    }
  });

  py::class_<BlaschkeProduct>(m, "BlaschkeProduct")
      .def(py::init(&make_product), py::arg("zeros") = ZeroList{}, py::arg("constant") = Complex(1.0),
           "zeros: list of (location, multiplicity)")
      .def_static("from_roots", [](const std::vector<Complex>& r) { return BlaschkeProduct::from_roots(r); })
      .def_property_readonly("zeros", &zero_list)
      .def_property_readonly("constant", &BlaschkeProduct::constant)
      .def_property_readonly("degree", &BlaschkeProduct::degree)
      .def("flattened", &BlaschkeProduct::flattened)
      .def("__call__", [](const BlaschkeProduct& b, Complex z) { return b(z); })
      .def("__mul__", [](const BlaschkeProduct& a, const BlaschkeProduct& b) { return a * b; })
      .def("to_json", [](const BlaschkeProduct& b) { return to_py(io::to_json(b)); })
      .def("__repr__", [](const BlaschkeProduct& b) { return "BlaschkeProduct(" + io::to_json(b).dump() + ")"; });

  m.def("jordan_block", [](const BlaschkeProduct& theta) { return jordan_block(theta); });
  m.def("model_kernel", [](const BlaschkeProduct& theta, Complex lambda) { return model_kernel(theta, lambda); });
  m.def("apply", [](const BlaschkeProduct& theta, const Matrix& t) { return apply_function(theta, t); },
        py::arg("theta"), py::arg("T"));
  m.def("apply_rational",
        [](const std::vector<Complex>& num, const std::vector<Complex>& den, const Matrix& t) {
          return apply_function(rational(num, den), t);
        },
        py::arg("num"), py::arg("den"), py::arg("T"), "coefficients in increasing degree");
  m.def("minimal_function", [](const Matrix& t) { return minimal_function(t); });
  m.def("jordan_model", [](const Matrix& t) { return jordan_model(t).blocks(); });
  m.def("jordan_operator",
        [](const std::vector<BlaschkeProduct>& blocks) { return jordan_operator(JordanModel(blocks)); });
  m.def("enumerate_divisors", &enumerate_divisors);
  m.def("kernel_of_divisor", [](const Matrix& t, const BlaschkeProduct& phi) { return kernel_of_divisor(t, phi); });
  m.def("find_cyclic_vector", &find_cyclic_vector, py::arg("T"), py::arg("seed") = 0);
  m.def("is_cyclic", [](const Matrix& t, const Vector& xi) { return is_cyclic(t, xi); });

  m.def("sarason_norm",
        [](const std::vector<Complex>& num, const std::vector<Complex>& den, const BlaschkeProduct& theta) {
          return sarason_norm(rational(num, den), theta);
        },
        py::arg("num"), py::arg("den"), py::arg("theta"));
  m.def("hankel_distance",
        [](const std::vector<Complex>& num, const std::vector<Complex>& den, const BlaschkeProduct& theta) {
          return hankel_distance(rational(num, den), theta).value;
        },
        py::arg("num"), py::arg("den"), py::arg("theta"));

  m.def("bezout_solve",
        [](const BlaschkeProduct& a, const BlaschkeProduct& b) { return to_py(io::to_json(bezout_solve(a, b))); });
  m.def("cluster_split",
        [](const std::vector<Complex>& zeros, double eps) { return to_py(io::to_json(cluster_split(zeros, eps))); });
  m.def("separation_lower_bound", [](const std::vector<Complex>& e, const std::vector<Complex>& f) {
    return separation_lower_bound(e, f);
  });

  m.def("commutant_basis", &commutant_basis, py::arg("T"), py::arg("with_adjoints") = false);
  m.def("irreducibility_check",
        [](const Matrix& t, std::uint64_t seed) { return to_py(io::to_json(irreducibility_check(t, seed))); },
        py::arg("T"), py::arg("seed") = 0);
  m.def("maximality_report",
        [](const Matrix& t) { return to_py(io::to_json(maximality_report(ContractionOperator(t)))); });
  m.def("unitary_from_maximality", [](const Matrix& t) {
    const UnitaryRecovery rec = unitary_from_maximality(ContractionOperator(t));
    py::dict d = to_py(io::to_json(rec));
    d["W"] = rec.w;
    return d;
  });
  m.def("similarity_synthesize",
        [](const Matrix& t1, const Matrix& t2, double beta, double beta_prime, bool enforce, std::uint64_t seed) {
          SimilarityOptions options;
          options.enforce_hypotheses = enforce;
          options.seed = seed;
          const SimilarityCertificate cert =
              similarity_synthesize(ContractionOperator(t1), ContractionOperator(t2), beta, beta_prime, options);
          py::dict d = to_py(io::to_json(cert));
          d["X"] = cert.x;
          return d;
        },
        py::arg("T1"), py::arg("T2"), py::arg("beta"), py::arg("beta_prime"), py::arg("enforce_hypotheses") = true,
        py::arg("seed") = 0);
  m.def("hypothesis_value", [](const Matrix& t) { return hypothesis_value(ContractionOperator(t)); });
  m.def("beta_floor", &beta_floor);

  m.def("verify",
        [](std::uint64_t seed, int trials, int max_degree, const std::vector<std::string>& ids,
           const std::map<std::string, double>& tolerances) {
          verify::ExperimentConfig config;
          config.seed = seed;
          config.trials = trials;
          config.max_degree = max_degree;
          config.tolerances = tolerances;
          config.threads = verify::threads_from_env();
          verify::SuiteReport report;
          {
            py::gil_scoped_release release;
            report = verify::run_suite(config, ids);
          }
          return to_py(verify::report_json(report));
        },
        py::arg("seed") = 42, py::arg("trials") = 100, py::arg("max_degree") = 12,
        py::arg("ids") = std::vector<std::string>{}, py::arg("tolerances") = std::map<std::string, double>{});
}
