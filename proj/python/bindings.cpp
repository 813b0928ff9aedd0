#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "royalgamma/serialize.hpp"

namespace py = pybind11;
using namespace royal;

namespace {

std::vector<cplx> coeffs(const Poly& p) { return p.coeffs(); }
Poly poly(const std::vector<cplx>& c) { return Poly(c); }

py::dict report_dict(const VerificationReport& r) {
    py::dict d;
    d["residuals"] = r.residuals;
    d["flags"] = r.flags;
    d["pass"] = r.pass;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Royal-node Gamma-inner function construction";

    static py::exception<Error> royal_error(m, "RoyalError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object exc = py::reinterpret_borrow<py::object>(royal_error.ptr())(e.what());
            exc.attr("kind") = to_string(e.kind());
            PyErr_SetObject(royal_error.ptr(), exc.ptr());
        }
    });

    py::class_<Tolerance>(m, "Tolerance")
        .def(py::init<>())
        .def_readwrite("trim_tol", &Tolerance::trim_tol)
        .def_readwrite("root_cluster_tol", &Tolerance::root_cluster_tol)
        .def_readwrite("residual_tol", &Tolerance::residual_tol)
        .def_readwrite("pd_tol", &Tolerance::pd_tol);

    m.def(
        "poly_roots",
        [](const std::vector<cplx>& c, const Tolerance& tol) {
            std::vector<std::pair<cplx, int>> out;
            for (const auto& r : poly_roots(poly(c), tol)) out.emplace_back(r.value, r.multiplicity);
            return out;
        },
        py::arg("coeffs"), py::arg("tol") = Tolerance{}, "Roots with multiplicity, ascending coefficient input.");

    py::class_<BlaschkeData>(m, "BlaschkeData")
        .def(py::init<std::vector<cplx>, std::vector<cplx>, std::vector<double>>(), py::arg("sigma"),
             py::arg("eta"), py::arg("rho") = std::vector<double>{})
        .def_property_readonly("n", &BlaschkeData::n)
        .def_property_readonly("k", &BlaschkeData::k)
        .def_property_readonly("sigma", &BlaschkeData::sigma)
        .def_property_readonly("eta", &BlaschkeData::eta)
        .def_property_readonly("rho", &BlaschkeData::rho)
        .def("to_json", [](const BlaschkeData& d) { return to_json(d).dump(); })
        .def_static("from_json", [](const std::string& s) { return data_from_json(parse_json_text(s)); });

    m.def(
        "pick_matrix", [](const BlaschkeData& d, const Tolerance& tol) { return build_pick_matrix(d, tol).entries; },
        py::arg("data"), py::arg("tol") = Tolerance{});
    m.def(
        "check_positive_definite",
        [](const BlaschkeData& d, const Tolerance& tol) {
            const PdCheck c = check_positive_definite(build_pick_matrix(d, tol), tol);
            const char* kind = c.kind == Definiteness::Definite       ? "definite"
                               : c.kind == Definiteness::Semidefinite ? "semidefinite"
                                                                      : "indefinite";
            return py::make_tuple(kind, c.rank, c.min_eigenvalue);
        },
        py::arg("data"), py::arg("tol") = Tolerance{});
    m.def(
        "choose_tau",
        [](const BlaschkeData& d, const Tolerance& tol, int start) {
            return choose_tau(build_pick_matrix(d, tol), d, tol, start);
        },
        py::arg("data"), py::arg("tol") = Tolerance{}, py::arg("start") = 1);

    py::class_<Parametrization>(m, "Parametrization")
        .def_property_readonly("a", [](const Parametrization& p) { return coeffs(p.a); })
        .def_property_readonly("b", [](const Parametrization& p) { return coeffs(p.b); })
        .def_property_readonly("c", [](const Parametrization& p) { return coeffs(p.c); })
        .def_property_readonly("d", [](const Parametrization& p) { return coeffs(p.d); })
        .def_readonly("tau", &Parametrization::tau)
        .def_readonly("data_hash", &Parametrization::data_hash)
        .def_property_readonly("exceptional_points", [](const Parametrization& p) { return p.exceptional.points; })
        .def("to_json", [](const Parametrization& p) { return to_json(p).dump(); });

    m.def(
        "build_parametrization",
        [](const BlaschkeData& d, std::optional<cplx> tau, const Tolerance& tol) {
            const PickMatrix pm = build_pick_matrix(d, tol);
            return build_parametrization(pm, d, tau ? *tau : choose_tau(pm, d, tol), tol);
        },
        py::arg("data"), py::arg("tau") = std::nullopt, py::arg("tol") = Tolerance{});

    m.def(
        "solve_blaschke",
        [](const Parametrization& p, cplx zeta, const Tolerance& tol) {
            const RationalFn f = solve_blaschke(p, zeta, tol);
            return py::make_tuple(coeffs(f.num()), coeffs(f.den()));
        },
        py::arg("param"), py::arg("zeta"), py::arg("tol") = Tolerance{}, "Returns (num, den) coefficient lists.");

    m.def(
        "phasar_derivative",
        [](const std::vector<cplx>& num, const std::vector<cplx>& den, cplx z) {
            return phasar_derivative(RationalFn(poly(num), poly(den)), z).value;
        },
        py::arg("num"), py::arg("den"), py::arg("z"));

    py::class_<S0P0Candidate>(m, "S0P0Candidate")
        .def_readonly("omega", &S0P0Candidate::omega)
        .def_readonly("t", &S0P0Candidate::t)
        .def_readonly("s0", &S0P0Candidate::s0)
        .def_readonly("p0", &S0P0Candidate::p0)
        .def_readonly("residual", &S0P0Candidate::residual);

    py::class_<S0P0Solution>(m, "S0P0Solution")
        .def_property_readonly("kind", [](const S0P0Solution& s) { return std::string(to_string(s.kind)); })
        .def_readonly("rank", &S0P0Solution::rank)
        .def_readonly("degenerate", &S0P0Solution::degenerate)
        .def_readonly("singular_values", &S0P0Solution::singular_values)
        .def_readonly("residual", &S0P0Solution::residual)
        .def("at", &S0P0Solution::at, py::arg("omega"), py::arg("real_tol") = 1e-8)
        .def("members", &S0P0Solution::members, py::arg("grid") = 256);

    m.def(
        "solve_s0_p0",
        [](const Parametrization& p, const BlaschkeData& d, const Tolerance& tol) { return solve_s0_p0(p, d, tol); },
        py::arg("param"), py::arg("data"), py::arg("tol") = Tolerance{});

    py::class_<GammaInnerFn>(m, "GammaInnerFn")
        .def(py::init([](const std::vector<cplx>& s, const std::vector<cplx>& p, const std::vector<cplx>& d) {
                 return GammaInnerFn(poly(s), poly(p), poly(d));
             }),
             py::arg("s_num"), py::arg("p_num"), py::arg("den"))
        .def_property_readonly("s_num", [](const GammaInnerFn& h) { return coeffs(h.s_num()); })
        .def_property_readonly("p_num", [](const GammaInnerFn& h) { return coeffs(h.p_num()); })
        .def_property_readonly("den", [](const GammaInnerFn& h) { return coeffs(h.den()); })
        .def_property_readonly("degree", [](const GammaInnerFn& h) { return h.degree(); })
        .def("__call__",
             [](const GammaInnerFn& h, cplx z) {
                 const GammaPoint g = h(z);
                 return py::make_tuple(g.s, g.p);
             })
        .def("to_json", [](const GammaInnerFn& h) { return to_json(h).dump(); })
        .def_static("from_json", [](const std::string& s) { return gamma_from_json(parse_json_text(s)); });

    m.def(
        "construct_h",
        [](const Parametrization& p, cplx s0, cplx p0, const Tolerance& tol) { return construct_h(p, s0, p0, tol); },
        py::arg("param"), py::arg("s0"), py::arg("p0"), py::arg("tol") = Tolerance{});
    m.def(
        "extract_royal_data", [](const GammaInnerFn& h, const Tolerance& tol) { return extract_royal_data(h, tol); },
        py::arg("h"), py::arg("tol") = Tolerance{});
    m.def(
        "royal_nodes",
        [](const GammaInnerFn& h, const Tolerance& tol) { return to_json(royal_nodes(h, tol)).dump(); },
        py::arg("h"), py::arg("tol") = Tolerance{}, "Royal nodes as a JSON string.");
    m.def(
        "verify_royal_solution",
        [](const GammaInnerFn& h, std::optional<BlaschkeData> d, const Tolerance& tol) {
            return report_dict(verify_royal_solution(h, d, tol));
        },
        py::arg("h"), py::arg("data") = std::nullopt, py::arg("tol") = Tolerance{});
    m.def("generate_h_nu", &generate_h_nu, py::arg("nu"), py::arg("r"));

    m.def(
        "classify_point",
        [](cplx s, cplx p, const Tolerance& tol) { return std::string(to_string(classify_point({s, p}, tol))); },
        py::arg("s"), py::arg("p"), py::arg("tol") = Tolerance{});
    m.def(
        "phi_omega", [](cplx omega, cplx s, cplx p) { return phi_omega(omega, {s, p}); }, py::arg("omega"),
        py::arg("s"), py::arg("p"));
}
