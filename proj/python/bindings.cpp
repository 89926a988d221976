#include "sketchkit/core/errors.hpp"
#include "sketchkit/diagnostics/osi.hpp"
#include "sketchkit/nla/algorithms.hpp"
#include "sketchkit/sketch/test_matrix.hpp"
#include "sketchkit/trace/estimators.hpp"
#include "sketchkit/trace/tfim.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

namespace py = pybind11;
using namespace sketchkit;

namespace {

SketchSpec make_spec(const std::string& family, double zeta, index_t xi, std::optional<std::string> transform,
                     std::optional<std::string> dist, index_t d0, index_t ell) {
    SketchSpec s;
    s.family = parse_family(family);
    s.zeta = zeta;
    s.xi = xi;
    if (transform) s.transform = int(parse_transform(*transform));
    if (dist) s.dist = int(parse_entry_dist(*dist));
    s.d0 = d0;
    s.ell = ell;
    return s;
}

template <Scalar T>
void bind_field(py::module_& m, const char* cls) {
    using TM = TestMatrix<T>;
    py::class_<TM>(m, cls)
        .def_property_readonly("shape", [](const TM& t) { return py::make_tuple(t.rows(), t.cols()); })
        .def_property_readonly("seed", &TM::seed)
        .def_property_readonly("family", [](const TM& t) { return std::string(to_string(t.family())); })
        .def("describe", &TM::describe)
        .def("apply_right", py::overload_cast<const Matrix<T>&>(&TM::apply_right, py::const_), py::arg("A"))
        .def("apply_adjoint", &TM::apply_adjoint, py::arg("B"))
        .def("materialize", &TM::materialize)
        .def("__repr__", [](const TM& t) { return "<TestMatrix " + t.describe() + ">"; });

    m.def(
        "rsvd",
        [](const Matrix<T>& A, const TM& om) {
            auto f = rsvd(A, om);
            return py::make_tuple(f.U, f.sigma, f.V);
        },
        py::arg("A"), py::arg("omega"));
    m.def(
        "nystrom_psd",
        [](const Matrix<T>& A, const TM& om, bool check_psd) {
            NystromOptions o;
            o.check_psd = check_psd;
            auto f = nystrom_psd(A, om, o);
            return py::make_tuple(f.U, f.lambda);
        },
        py::arg("A"), py::arg("omega"), py::arg("check_psd") = true);
    m.def(
        "gen_nystrom",
        [](const Matrix<T>& A, const TM& om, const TM& psi, const std::string& form) -> py::tuple {
            if (form == "outer") {
                auto f = gen_nystrom_outer(A, om, psi);
                return py::make_tuple(f.F, f.G);
            }
            if (form == "svd") {
                auto f = gen_nystrom_svd(A, om, psi);
                return py::make_tuple(f.U, f.sigma, f.V);
            }
            throw PreconditionError("form must be 'outer' or 'svd'");
        },
        py::arg("A"), py::arg("omega"), py::arg("psi"), py::arg("form") = "outer");
    m.def(
        "sketch_and_solve",
        [](const Matrix<T>& A, const Matrix<T>& B, const TM& psi) { return sketch_and_solve(A, B, psi); },
        py::arg("A"), py::arg("B"), py::arg("psi"));
    m.def(
        "injectivity_dilation",
        [](const TM& om, const Matrix<T>& Q) {
            auto r = injectivity_dilation(om, Q);
            return py::make_tuple(r.alpha, r.beta);
        },
        py::arg("omega"), py::arg("Q"));
    m.def(
        "girard_hutchinson",
        [](const Matrix<T>& A, index_t t, const SketchSpec& spec, std::uint64_t seed) {
            return girard_hutchinson<T>(DenseOracle<T>(A), t, factory_for<T>(spec), seed);
        },
        py::arg("A"), py::arg("t"), py::arg("spec"), py::arg("seed") = 0);
    m.def(
        "na_hutch_pp",
        [](const Matrix<T>& A, index_t t, const SketchSpec& spec, std::uint64_t seed) {
            return na_hutch_pp<T>(DenseOracle<T>(A), t, factory_for<T>(spec), seed);
        },
        py::arg("A"), py::arg("t"), py::arg("spec"), py::arg("seed") = 0);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Randomized sketching test matrices and the algorithms built on them.";

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
    py::register_exception<PositiveDefinitenessError>(m, "PositiveDefinitenessError", base.ptr());
    py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
    py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

    py::class_<SketchSpec>(m, "SketchSpec")
        .def(py::init(&make_spec), py::arg("family") = "gaussian", py::arg("zeta") = 4.0, py::arg("xi") = 0,
             py::arg("transform") = py::none(), py::arg("dist") = py::none(), py::arg("d0") = 2, py::arg("ell") = 0)
        .def("describe", &SketchSpec::describe)
        .def("__repr__", [](const SketchSpec& s) { return "<SketchSpec " + s.describe() + ">"; });

    // Real overloads are registered first so that untyped input converts to float64.
    bind_field<double>(m, "RealTestMatrix");
    bind_field<cplx>(m, "ComplexTestMatrix");

    m.def(
        "test_matrix",
        [](const SketchSpec& spec, index_t d, index_t k, std::uint64_t seed, const std::string& field) -> py::object {
            if (field == "real") return py::cast(make_test_matrix<double>(spec, d, k, seed));
            if (field == "complex") return py::cast(make_test_matrix<cplx>(spec, d, k, seed));
            throw PreconditionError("field must be 'real' or 'complex'");
        },
        py::arg("spec"), py::arg("d"), py::arg("k"), py::arg("seed") = 0, py::arg("field") = "real");

    m.def("tfim_shifted_trace", &tfim_shifted_trace, py::arg("ell"), py::arg("h"), py::arg("beta"),
          "tr exp(-beta (H + b I)) for the transverse-field Ising chain, from its full spectrum.");
    m.def("tfim_shift", &tfim_shift, py::arg("ell"), py::arg("h"));
}
