#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "eofbounds/bounds.hpp"
#include "eofbounds/errors.hpp"
#include "eofbounds/io.hpp"
#include "eofbounds/oracles.hpp"
#include "eofbounds/shotsim.hpp"

namespace py = pybind11;
using namespace eofb;

namespace {

using CArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

ComplexMatrix to_matrix(const CArray& a) {
    if (a.ndim() != 2) throw DimensionError("expected a 2-d array");
    const auto r = static_cast<std::size_t>(a.shape(0));
    const auto c = static_cast<std::size_t>(a.shape(1));
    return ComplexMatrix(r, c, std::vector<cplx>(a.data(), a.data() + r * c));
}

CArray to_array(const ComplexMatrix& m) {
    CArray out({m.rows(), m.cols()});
    std::copy(m.entries().begin(), m.entries().end(), out.mutable_data());
    return out;
}

BipartiteState to_state(const CArray& rho, std::size_t m, std::size_t n) {
    return BipartiteState::from_matrix(to_matrix(rho), {m, n});
}

py::object to_py(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

} // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "Entanglement-of-formation bounds from purity measurements";

    py::register_exception<InvariantError>(mod, "InvariantError", PyExc_ValueError);
    py::register_exception<DimensionError>(mod, "DimensionError", PyExc_ValueError);
    py::register_exception<ParseError>(mod, "ParseError", PyExc_ValueError);

    py::class_<EnvelopeSet>(mod, "Envelopes")
        .def_readonly("m", &EnvelopeSet::m)
        .def_property_readonly("mode", [](const EnvelopeSet& e) { return to_string(e.mode); })
        .def_property_readonly("domain_max", &EnvelopeSet::domain_max)
        .def("eta", [](const EnvelopeSet& e, double x) { return e.eta(x); })
        .def("epsilon", [](const EnvelopeSet& e, double x) { return e.epsilon(x); });

    mod.def(
        "build_envelopes",
        [](int m, const std::string& mode, std::size_t grid) { return build_envelopes(m, parse_mode(mode), grid); },
        py::arg("m"), py::arg("mode") = "oracle", py::arg("grid") = kDefaultGrid);

    mod.def("partial_transpose",
            [](const CArray& rho, std::size_t m, std::size_t n) { return to_array(partial_transpose(to_matrix(rho), {m, n})); },
            py::arg("rho"), py::arg("m"), py::arg("n"));
    mod.def("realign",
            [](const CArray& rho, std::size_t m, std::size_t n) { return to_array(realign(to_matrix(rho), {m, n})); },
            py::arg("rho"), py::arg("m"), py::arg("n"));
    mod.def(
        "partial_trace",
        [](const CArray& rho, std::size_t m, std::size_t n, const std::string& keep) {
            if (keep != "A" && keep != "B") throw py::value_error("keep must be 'A' or 'B'");
            return to_array(partial_trace(to_matrix(rho), {m, n}, keep == "A" ? Subsystem::A : Subsystem::B));
        },
        py::arg("rho"), py::arg("m"), py::arg("n"), py::arg("keep") = "A");

    mod.def(
        "bounds",
        [](const CArray& rho, std::size_t m, std::size_t n, const std::string& mode, const std::string& units) {
            const auto state = to_state(rho, m, n);
            const auto env = build_envelopes(static_cast<int>(state.dims().envelope_dim()), parse_mode(mode));
            return to_py(to_json(make_report(state, env, parse_units(units))));
        },
        py::arg("rho"), py::arg("m"), py::arg("n"), py::arg("mode") = "oracle", py::arg("units") = "nats");

    mod.def(
        "eof_bounds_from_lambdas",
        [](const EnvelopeSet& env, double lam_a, double lam_b, double lam_prime_a, double lam_prime_b) {
            const auto b = eof_bounds(LambdaQuantities{lam_a, lam_b, lam_prime_a, lam_prime_b}, env);
            return std::make_pair(b.lower, b.upper);
        },
        py::arg("envelopes"), py::arg("lam_a"), py::arg("lam_b"), py::arg("lam_prime_a"), py::arg("lam_prime_b"));

    mod.def(
        "caf_from_omega", [](double omega, int m) { return caf_from_omega(omega, m).value_bits; }, py::arg("omega"),
        py::arg("m"));

    mod.def(
        "example_state", [](double x, double a) { return to_array(example_state(x, a).matrix()); }, py::arg("x"),
        py::arg("a"));

    mod.def(
        "wootters_eof", [](const CArray& rho) { return oracle::wootters_2qubit(to_state(rho, 2, 2)); }, py::arg("rho"));

    mod.def(
        "convex_roof_upper",
        [](const CArray& rho, std::size_t m, std::size_t n, std::size_t ensemble, std::size_t restarts,
           std::size_t iters, std::uint64_t seed) {
            return oracle::convex_roof_upper(to_state(rho, m, n), {ensemble, restarts, iters, RandomSeed{seed}});
        },
        py::arg("rho"), py::arg("m"), py::arg("n"), py::arg("ensemble") = 0, py::arg("restarts") = 4,
        py::arg("iters") = 100, py::arg("seed") = 0);

    mod.def(
        "estimated_bounds",
        [](const CArray& rho, std::size_t m, std::size_t n, std::size_t shots, double confidence, std::uint64_t seed) {
            const auto state = to_state(rho, m, n);
            const auto env = build_envelopes(static_cast<int>(state.dims().envelope_dim()), EnvelopeMode::oracle);
            return to_py(to_json(estimated_bounds(state, shots, confidence, env, RandomSeed{seed})));
        },
        py::arg("rho"), py::arg("m"), py::arg("n"), py::arg("shots"), py::arg("confidence") = 0.95,
        py::arg("seed") = 0);
}
