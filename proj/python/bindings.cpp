#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "psdeig/bounds.hpp"
#include "psdeig/dense.hpp"
#include "psdeig/errors.hpp"
#include "psdeig/extract.hpp"
#include "psdeig/io.hpp"
#include "psdeig/model.hpp"
#include "psdeig/subspaces.hpp"
#include "psdeig/verify.hpp"

namespace py = pybind11;
using namespace psdeig;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Subspace eigenpair extraction for PSD matrices";

  py::register_exception<NotPsdError>(m, "NotPsdError");
  py::register_exception<RankError>(m, "RankError");

  py::enum_<SpectrumKind>(m, "SpectrumKind")
      .value("exponential", SpectrumKind::exponential)
      .value("algebraic", SpectrumKind::algebraic)
      .value("linear", SpectrumKind::linear)
      .value("explicit_list", SpectrumKind::explicit_list);

  py::class_<SpectrumSpec>(m, "SpectrumSpec")
      .def(py::init<>())
      .def_readwrite("n", &SpectrumSpec::n)
      .def_readwrite("kind", &SpectrumSpec::kind)
      .def_readwrite("lambda_max", &SpectrumSpec::lambda_max)
      .def_readwrite("lambda_min", &SpectrumSpec::lambda_min)
      .def_readwrite("values", &SpectrumSpec::values);

  m.def("spectrum", &spectrum, py::arg("spec"));

  py::class_<PsdOperator>(m, "PsdOperator")
      .def(py::init<Matrix, Vector, std::uint64_t>(), py::arg("u"), py::arg("lambda_"),
           py::arg("seed"))
      .def_property_readonly("dim", &PsdOperator::dim)
      .def_property_readonly("seed", &PsdOperator::seed)
      .def("eigenvalues", &PsdOperator::eigenvalues, py::return_value_policy::copy)
      .def("eigenvectors", &PsdOperator::eigenvectors, py::return_value_policy::copy)
      .def("apply", py::overload_cast<const Matrix&>(&PsdOperator::apply, py::const_),
           py::arg("x"))
      .def("dense", &PsdOperator::dense, py::arg("max_dim") = 2000)
      .def("power", &PsdOperator::power, py::arg("p"))
      .def("leading_eigenvectors", &PsdOperator::leading_eigenvectors, py::arg("k"))
      .def("trailing_eigenvectors", &PsdOperator::trailing_eigenvectors, py::arg("k"));

  m.def("make_psd", &make_psd, py::arg("spec"), py::arg("seed"));
  m.def("make_shifted", &make_shifted, py::arg("a"), py::arg("gamma"));

  py::enum_<BasisKind>(m, "BasisKind")
      .value("rangefinder", BasisKind::rangefinder)
      .value("epsilon_aligned", BasisKind::epsilon_aligned)
      .value("perturbed_trailing", BasisKind::perturbed_trailing)
      .value("canonical", BasisKind::canonical)
      .value("external", BasisKind::external);

  py::class_<OrthonormalBasis>(m, "OrthonormalBasis")
      .def_readonly("q", &OrthonormalBasis::q)
      .def_readonly("provenance", &OrthonormalBasis::provenance)
      .def_readonly("seed", &OrthonormalBasis::seed)
      .def_readonly("eps", &OrthonormalBasis::eps)
      .def_readonly("m_norm", &OrthonormalBasis::m_norm)
      .def_readonly("n_norm", &OrthonormalBasis::n_norm);

  m.def("randomized_rangefinder", &randomized_rangefinder, py::arg("a"), py::arg("k"),
        py::arg("seed"), py::arg("power_iters") = 0);
  m.def("epsilon_aligned_basis", &epsilon_aligned_basis, py::arg("a"), py::arg("k"),
        py::arg("eps"), py::arg("seed"));
  m.def("perturbed_trailing_basis", &perturbed_trailing_basis, py::arg("a"), py::arg("k"),
        py::arg("eps"), py::arg("seed"));
  m.def("canonical_basis", &canonical_basis, py::arg("n"), py::arg("k"));
  m.def("external_basis", &external_basis, py::arg("q"));
  m.def("principal_angle_sines", &principal_angle_sines, py::arg("x"), py::arg("y"));

  py::enum_<Method>(m, "Method")
      .value("rr", Method::rr)
      .value("svd_qv", Method::svd_qv)
      .value("svd_u", Method::svd_u)
      .value("nys", Method::nys)
      .value("rr_shifted", Method::rr_shifted)
      .value("svd_shifted", Method::svd_shifted)
      .value("nys_shifted", Method::nys_shifted);

  py::class_<EigenpairApprox>(m, "EigenpairApprox")
      .def_readonly("method", &EigenpairApprox::method)
      .def_readonly("values", &EigenpairApprox::values)
      .def_readonly("vectors", &EigenpairApprox::vectors)
      .def_readonly("residual_norm", &EigenpairApprox::residual_norm)
      .def_readonly("core_rank", &EigenpairApprox::core_rank)
      .def_readonly("shift_gamma", &EigenpairApprox::shift_gamma)
      .def_readonly("values_preclamp", &EigenpairApprox::values_preclamp)
      .def_readonly("negative_backconversion", &EigenpairApprox::negative_backconversion);

  m.def("rayleigh_ritz", &rayleigh_ritz, py::arg("a"), py::arg("q"));
  m.def("svd_extract", &svd_extract, py::arg("a"), py::arg("q"),
        py::arg("variant") = Method::svd_qv);
  m.def("nystrom_extract", &nystrom_extract, py::arg("a"), py::arg("q"),
        py::arg("chol_tol") = std::optional<double>{});
  m.def("default_chol_tol", &default_chol_tol, py::arg("n"));
  m.def("nystrom_approximation_dense", &nystrom_approximation_dense, py::arg("a"),
        py::arg("q"));

  py::class_<PowerEstimate>(m, "PowerEstimate")
      .def_readonly("gamma", &PowerEstimate::gamma)
      .def_readonly("residual", &PowerEstimate::residual)
      .def_readonly("rayleigh", &PowerEstimate::rayleigh);

  m.def("estimate_lambda_max_upper",
        py::overload_cast<const PsdOperator&, int, std::uint64_t>(&estimate_lambda_max_upper),
        py::arg("a"), py::arg("iters"), py::arg("seed"));
  m.def("estimate_lambda_max_upper",
        py::overload_cast<const PsdOperator&, int, Vector>(&estimate_lambda_max_upper),
        py::arg("a"), py::arg("iters"), py::arg("start"));

  m.def("shifted_trailing_extract", &shifted_trailing_extract, py::arg("a"), py::arg("q"),
        py::arg("method"), py::arg("gamma") = std::optional<double>{},
        py::arg("chol_tol") = std::optional<double>{});
  m.def("shifted_trailing_extract_dense", &shifted_trailing_extract_dense, py::arg("a"),
        py::arg("q"), py::arg("method"), py::arg("gamma"),
        py::arg("chol_tol") = std::optional<double>{});

  py::class_<TriangularFactor>(m, "TriangularFactor")
      .def_readonly("l", &TriangularFactor::l)
      .def_readonly("rank", &TriangularFactor::rank);

  m.def("chol_trunc", &chol_trunc, py::arg("w"), py::arg("tol") = 2.220446049250313e-16);

  py::enum_<IndexMode>(m, "IndexMode")
      .value("leading", IndexMode::leading)
      .value("trailing", IndexMode::trailing);

  py::class_<RrBound>(m, "RrBound")
      .def_readonly("c_rr", &RrBound::c_rr)
      .def_readonly("bound", &RrBound::bound);
  py::class_<NysBound>(m, "NysBound")
      .def_readonly("alpha", &NysBound::alpha)
      .def_readonly("c_nys", &NysBound::c_nys)
      .def_readonly("bound", &NysBound::bound);
  py::class_<BoundSet>(m, "BoundSet")
      .def_readonly("eps", &BoundSet::eps)
      .def_readonly("k", &BoundSet::k)
      .def_readonly("c_rr", &BoundSet::c_rr)
      .def_readonly("bound_rr", &BoundSet::bound_rr)
      .def_readonly("alpha", &BoundSet::alpha)
      .def_readonly("c_nys", &BoundSet::c_nys)
      .def_readonly("bound_nys", &BoundSet::bound_nys)
      .def_readonly("bound_svd", &BoundSet::bound_svd);

  m.def("rr_bound", &rr_bound, py::arg("lambda_"), py::arg("k"), py::arg("eps"));
  m.def("nystrom_bound", &nystrom_bound, py::arg("lambda_"), py::arg("k"), py::arg("eps"),
        py::arg("index"));
  m.def("svd_bound", &svd_bound, py::arg("lambda_"), py::arg("k"), py::arg("eps"),
        py::arg("index"));
  m.def("bound_set", &bound_set, py::arg("lambda_"), py::arg("k"), py::arg("eps"));
  m.def("eigen_errors", &eigen_errors, py::arg("exact"), py::arg("approx"), py::arg("mode"));
  m.def("vector_angle_errors", &vector_angle_errors, py::arg("exact_vectors"),
        py::arg("approx"), py::arg("mode"));

  m.def("save_operator", &save_operator, py::arg("path"), py::arg("a"), py::arg("kind"));
  m.def(
      "load_operator",
      [](const std::string& path) {
        LoadedOperator lo = load_operator(path);
        return py::make_tuple(std::move(lo.op), lo.kind);
      },
      py::arg("path"));
  m.def("save_matrix", &save_matrix, py::arg("path"), py::arg("m"));
  m.def("load_matrix", &load_matrix, py::arg("path"));

  py::class_<verify::PropertyResult>(m, "PropertyResult")
      .def_readonly("name", &verify::PropertyResult::name)
      .def_readonly("trials", &verify::PropertyResult::trials)
      .def_readonly("tolerance", &verify::PropertyResult::tolerance)
      .def_readonly("max_violation", &verify::PropertyResult::max_violation)
      .def_readonly("passed", &verify::PropertyResult::passed)
      .def_readonly("worst", &verify::PropertyResult::worst);
  py::class_<verify::SuiteResult>(m, "SuiteResult")
      .def_readonly("suite", &verify::SuiteResult::suite)
      .def_readonly("properties", &verify::SuiteResult::properties)
      .def("passed", &verify::SuiteResult::passed);
  m.def("run_suite", &verify::run_suite, py::arg("name"), py::arg("seed"));
}
