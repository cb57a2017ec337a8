#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "expmbt/expm_blocktri.hpp"
#include "expmbt/kenney_laub.hpp"
#include "expmbt/kernels.hpp"
#include "expmbt/oracle.hpp"

namespace py = pybind11;
using namespace expmbt;

namespace {

Matrix to_matrix(const py::array_t<double, py::array::c_style | py::array::forcecast>& arr) {
    if (arr.ndim() != 2) throw DimensionError("expected a 2-d array");
    const Index r = static_cast<Index>(arr.shape(0));
    const Index c = static_cast<Index>(arr.shape(1));
    Matrix m(r, c);
    auto a = arr.unchecked<2>();
    for (Index i = 0; i < r; ++i)
        for (Index j = 0; j < c; ++j) m.real_at(i, j) = a(i, j);
    return m;
}

py::array_t<double> to_array(const Matrix& m) {
    if (!m.is_real()) throw Error("complex result not representable");
    py::array_t<double> arr({m.rows(), m.cols()});
    auto a = arr.mutable_unchecked<2>();
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) a(i, j) = m.real_at(i, j);
    return arr;
}

SchurMode parse_schur(const std::string& mode) {
    if (mode == "auto") return SchurMode::Auto;
    if (mode == "always") return SchurMode::Always;
    if (mode == "never") return SchurMode::Never;
    throw Error("schur mode must be auto, always or never");
}

} // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "Simultaneous block-triangular matrix exponentials";

    py::register_exception<Error>(mod, "ExpmError");

    mod.def(
        "expm",
        [](py::array_t<double, py::array::c_style | py::array::forcecast> a,
           const std::string& schur) {
            ExpmOptions opts;
            opts.schur = parse_schur(schur);
            return to_array(expm(to_matrix(a), opts));
        },
        py::arg("a"), py::arg("schur") = "auto",
        "Matrix exponential by scaling and squaring with diagonal Pade "
        "approximants.");

    mod.def(
        "expm_block_tri",
        [](py::array_t<double, py::array::c_style | py::array::forcecast> a,
           py::array_t<double, py::array::c_style | py::array::forcecast> b,
           py::array_t<double, py::array::c_style | py::array::forcecast> e,
           const std::string& schur) {
            ExpmOptions opts;
            opts.schur = parse_schur(schur);
            ExpmResult r = expm_block_tri(to_matrix(a), to_matrix(b),
                                          to_matrix(e), opts);
            py::dict diag;
            diag["m"] = r.m;
            diag["s"] = r.s;
            diag["matmuls"] = r.matmuls;
            diag["used_schur"] = r.used_schur;
            diag["overflowed"] = r.overflowed;
            return py::make_tuple(to_array(r.x), to_array(r.y), to_array(r.d),
                                  diag);
        },
        py::arg("a"), py::arg("b"), py::arg("e"), py::arg("schur") = "auto",
        "Simultaneously computes e^A, e^B and the off-diagonal block of "
        "exp([[A, E], [0, B]]). Returns (X, Y, D, diagnostics).");

    mod.def(
        "kl_frechet",
        [](py::array_t<double, py::array::c_style | py::array::forcecast> a,
           py::array_t<double, py::array::c_style | py::array::forcecast> b,
           py::array_t<double, py::array::c_style | py::array::forcecast> e) {
            KLResult r = kl_frechet(to_matrix(a), to_matrix(b), to_matrix(e));
            py::dict diag;
            diag["s"] = r.s;
            diag["imag_residue"] = r.imag_residue;
            return py::make_tuple(to_array(r.d), diag);
        },
        py::arg("a"), py::arg("b"), py::arg("e"),
        "Kenney-Laub Schur-Frechet baseline for the off-diagonal block.");

    mod.def(
        "phi_combination",
        [](py::array_t<double, py::array::c_style | py::array::forcecast> a,
           const std::vector<std::vector<double>>& w) {
            PhiProblem prob;
            prob.a = to_matrix(a);
            prob.w = w;
            return phi_combination(prob);
        },
        py::arg("a"), py::arg("w"),
        "phi_0(A) w[0] + phi_1(A) w[1] + ... with one block exponential.");

    mod.def(
        "expm_oracle",
        [](py::array_t<double, py::array::c_style | py::array::forcecast> a,
           unsigned digits) {
            return to_array(oracle::expm_ref(to_matrix(a), digits).to_double());
        },
        py::arg("a"), py::arg("digits") = 100,
        "Arbitrary-precision reference exponential, rounded to double.");

    mod.def(
        "lexp_oracle",
        [](py::array_t<double, py::array::c_style | py::array::forcecast> a,
           py::array_t<double, py::array::c_style | py::array::forcecast> b,
           py::array_t<double, py::array::c_style | py::array::forcecast> e,
           unsigned digits) {
            return to_array(
                oracle::Lexp_ref(to_matrix(a), to_matrix(b), to_matrix(e), digits)
                    .to_double());
        },
        py::arg("a"), py::arg("b"), py::arg("e"), py::arg("digits") = 100,
        "Arbitrary-precision reference off-diagonal block, rounded to double.");

    mod.def("derive_thresholds", [] {
        py::dict out;
        for (int m : {3, 5, 7, 9, 13}) {
            auto [ell, theta] = derive_ell_theta(m);
            out[py::int_(m)] = py::make_tuple(ell, theta);
        }
        return out;
    }, "Recomputes the per-degree backward-error thresholds (ell, theta).");
}
