#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "superlin/errors.hpp"
#include "superlin/fixtures.hpp"
#include "superlin/jsonio.hpp"
#include "superlin/linearizer.hpp"
#include "superlin/numerics.hpp"
#include "superlin/parse.hpp"
#include "superlin/render.hpp"
#include "superlin/transport.hpp"
#include "superlin/wdg.hpp"

namespace py = pybind11;
using namespace superlin;

namespace {

// The bindings speak the same textual formats as the command line: systems
// and coordinate changes as their file syntax, lifts and reports as JSON.
// Exact arithmetic stays on the C++ side.

struct PySystem {
    ParsedSystem inner;

    static PySystem parse(const std::string& text) { return {parse_system(text)}; }
    std::string render() const { return render_system(inner.field, inner.names); }
    int n() const { return inner.field.n(); }
    std::vector<std::string> names() const { return inner.names; }
};

struct PyAutomorphism {
    ParsedAutomorphism inner;

    static PyAutomorphism parse(const std::string& text) { return {parse_automorphism(text)}; }
    int n() const { return inner.phi.n(); }
    std::size_t generator_count() const { return inner.phi.generators().size(); }
    PyAutomorphism inverted() const { return {{inner.names, inner.phi.inverted()}}; }
};

struct PyLift {
    Lift lift;
    std::vector<std::string> names;

    static PyLift from_json(const std::string& text) {
        NamedLift named = lift_from_json(text);
        return {std::move(named.lift), std::move(named.names)};
    }
    std::string to_json() const { return lift_to_json(lift, names); }
    int n() const { return lift.n; }
    int k() const { return lift.k; }
    int total_dimension() const { return lift.total_dimension(); }
    std::vector<std::string> provenance() const { return lift.provenance; }
};

struct PyClosureResult {
    bool stabilized;
    std::optional<PyLift> lift;
    std::vector<int> dims;
    int max_degree_seen;
};

PyClosureResult py_lift_system(const PySystem& sys, std::size_t max_generators,
                               std::size_t max_degree, std::size_t max_iterations) {
    Budget budget;
    budget.max_generators = max_generators;
    budget.max_degree = max_degree;
    budget.max_iterations = max_iterations;
    ClosureOutcome out = scalar_closure(sys.inner.field, budget);
    PyClosureResult res{out.stabilized(), std::nullopt, out.dims, out.max_degree_seen};
    if (out.lift)
        res.lift = PyLift{*out.lift, sys.inner.names};
    return res;
}

} // namespace

PYBIND11_MODULE(_superlin, m) {
    m.doc() = "exact linear realizations of polynomial dynamics";

    // translators run most-recently-registered first, so the subclass goes last
    auto base = py::register_exception<error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<parse_error>(m, "ParseError", base.ptr());

    py::class_<PySystem>(m, "System")
        .def_static("parse", &PySystem::parse, py::arg("text"))
        .def("render", &PySystem::render)
        .def_property_readonly("n", &PySystem::n)
        .def_property_readonly("names", &PySystem::names)
        .def("__repr__", [](const PySystem& s) {
            return "<System n=" + std::to_string(s.n()) + ">";
        });

    py::class_<PyAutomorphism>(m, "Automorphism")
        .def_static("parse", &PyAutomorphism::parse, py::arg("text"))
        .def_property_readonly("n", &PyAutomorphism::n)
        .def_property_readonly("generator_count", &PyAutomorphism::generator_count)
        .def("inverted", &PyAutomorphism::inverted);

    py::class_<PyLift>(m, "Lift")
        .def_static("from_json", &PyLift::from_json, py::arg("text"))
        .def("to_json", &PyLift::to_json)
        .def_property_readonly("n", &PyLift::n)
        .def_property_readonly("k", &PyLift::k)
        .def_property_readonly("total_dimension", &PyLift::total_dimension)
        .def_property_readonly("provenance", &PyLift::provenance)
        .def("__repr__", [](const PyLift& l) {
            return "<Lift n=" + std::to_string(l.n()) + " k=" + std::to_string(l.k()) + ">";
        });

    py::class_<PyClosureResult>(m, "ClosureResult")
        .def_readonly("stabilized", &PyClosureResult::stabilized)
        .def_readonly("lift", &PyClosureResult::lift)
        .def_readonly("dims", &PyClosureResult::dims)
        .def_readonly("max_degree_seen", &PyClosureResult::max_degree_seen);

    m.def("lift_system", &py_lift_system, py::arg("system"), py::arg("max_generators") = 64,
          py::arg("max_degree") = 24, py::arg("max_iterations") = 64,
          "search for a finite linear realization of the system");

    m.def(
        "check_lift",
        [](const PySystem& sys, const PyLift& lift) {
            return check_lift_symbolic(sys.inner.field, lift.lift);
        },
        py::arg("system"), py::arg("lift"), "exact symbolic check of the lift identity");

    m.def(
        "check_wdg_json",
        [](const PySystem& sys) {
            WdgReport report = check_wdg(sys.inner.field);
            return wdg_report_to_json(report, sys.inner.names);
        },
        py::arg("system"), "constant-cycle condition report as JSON");

    m.def(
        "pushforward_system",
        [](const PySystem& sys, const PyAutomorphism& map) {
            return PySystem{{sys.inner.names, pushforward(sys.inner.field, map.inner.phi)}};
        },
        py::arg("system"), py::arg("map"), "change coordinates of the system");

    m.def(
        "transport_lift",
        [](const PyLift& lift, const PyAutomorphism& map) {
            return PyLift{tame_transport(lift.lift, map.inner.phi), lift.names};
        },
        py::arg("lift"), py::arg("map"), "move a lift through a tame coordinate change");

    m.def(
        "stably_transport_lift",
        [](const PyLift& lift, const PyAutomorphism& map, const std::string& stabilizer,
           const std::optional<std::string>& psi_inverse) {
            std::optional<PolyMap> inv;
            if (psi_inverse)
                inv = parse_polymap(*psi_inverse).map;
            StablyTameWitness witness =
                make_stably_tame(map.inner.phi, parse_polymap(stabilizer).map, std::move(inv));
            return PyLift{stably_tame_transport(lift.lift, witness), lift.names};
        },
        py::arg("lift"), py::arg("map"), py::arg("stabilizer"),
        py::arg("psi_inverse") = std::nullopt,
        "move a lift through a coordinate change that is tame only upstairs");

    m.def(
        "verify_lift_json",
        [](const PySystem& sys, const PyLift& lift,
           const std::vector<std::vector<double>>& x0_set, double t_end, int steps,
           double tol) {
            VerificationReport report =
                verify_lift_numeric(sys.inner.field, lift.lift, x0_set, t_end, steps, tol);
            return verification_report_to_json(report);
        },
        py::arg("system"), py::arg("lift"), py::arg("x0_set"), py::arg("t_end") = 1.0,
        py::arg("steps") = 1000, py::arg("tol") = 1e-6,
        "numeric trajectory comparison; returns the report as JSON");

    m.def(
        "integrate_system",
        [](const PySystem& sys, const std::vector<double>& x0, double t_end, int steps) {
            Trajectory traj = integrate(sys.inner.field, x0, t_end, steps);
            return py::make_tuple(traj.times, traj.states);
        },
        py::arg("system"), py::arg("x0"), py::arg("t_end") = 1.0, py::arg("steps") = 1000,
        "fixed-step trajectory; returns (times, states)");

    m.def(
        "divergence_profile_json",
        [](const PySystem& sys, int kmax, const std::string& watch) {
            int idx = -1;
            for (std::size_t i = 0; i < sys.inner.names.size(); ++i)
                if (sys.inner.names[i] == watch)
                    idx = static_cast<int>(i);
            if (idx < 0)
                throw validity_error("unknown variable '" + watch + "'");
            return profile_to_json(divergence_profile(sys.inner.field, kmax, idx), watch);
        },
        py::arg("system"), py::arg("k"), py::arg("watch"),
        "derivative-orbit growth diagnostics as JSON");

    m.def(
        "fixture",
        [](const std::string& name) {
            const Fixture* fx = find_fixture(name);
            if (!fx)
                throw validity_error("unknown fixture '" + name + "'");
            return fx->contents;
        },
        py::arg("name"), "contents of a bundled input file");

    m.def("fixture_names", [] {
        std::vector<std::string> names;
        for (const Fixture& f : bundled_fixtures())
            names.push_back(f.name);
        return names;
    });
}
