#include "dgim/analyze.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace dgim;

namespace {

Json to_json(const py::object& obj) {
    py::object dumps = py::module_::import("json").attr("dumps");
    return Json::parse(dumps(obj).cast<std::string>());
}

py::object from_json(const Json& j) {
    py::object loads = py::module_::import("json").attr("loads");
    return loads(j.dump());
}

AnalysisOptions make_options(int bound, const std::string& tol, int maxiter, bool generic_s) {
    AnalysisOptions opt;
    opt.bound = bound;
    opt.tol = parse_rat(Json(tol));
    opt.maxiter = maxiter;
    opt.generic_s = generic_s;
    return opt;
}

}  // namespace

PYBIND11_MODULE(_dgim, m) {
    m.doc() = "exact invariants of piecewise monotonic interval maps";

    m.def(
        "analyze",
        [](const py::object& map_spec, int bound, const std::string& tol, int maxiter,
           bool generic_s, bool pf) {
            AnalysisOptions opt = make_options(bound, tol, maxiter, generic_s);
            opt.want_pf = pf;
            return from_json(analyze(parse_map_spec(to_json(map_spec)), opt));
        },
        py::arg("map_spec"), py::arg("bound") = 256, py::arg("tol") = "1/1000000",
        py::arg("maxiter") = 500, py::arg("generic_s") = false, py::arg("pf") = false,
        "Full analysis report for a map spec dict.");

    m.def(
        "entropy",
        [](const py::object& map_spec, const std::vector<std::string>& methods, int bound,
           const std::string& tol, int maxiter, int depth) {
            AnalysisOptions opt = make_options(bound, tol, maxiter, false);
            if (!methods.empty()) opt.entropy_methods = methods;
            opt.cylinder_depth = depth;
            return from_json(entropy_report(parse_map_spec(to_json(map_spec)), opt));
        },
        py::arg("map_spec"),
        py::arg("methods") = std::vector<std::string>{"markov_exact", "power_iteration"},
        py::arg("bound") = 256, py::arg("tol") = "1/1000000", py::arg("maxiter") = 500,
        py::arg("depth") = 12);

    m.def(
        "markov",
        [](const py::object& map_spec, int bound) {
            AnalysisOptions opt;
            opt.bound = bound;
            return from_json(markov_report(parse_map_spec(to_json(map_spec)), opt));
        },
        py::arg("map_spec"), py::arg("bound") = 256);

    m.def(
        "dimension",
        [](const py::object& map_spec, int bound, bool generic_s) {
            AnalysisOptions opt;
            opt.bound = bound;
            opt.generic_s = generic_s;
            return from_json(dimension_report(parse_map_spec(to_json(map_spec)), opt));
        },
        py::arg("map_spec"), py::arg("bound") = 256, py::arg("generic_s") = false);

    m.def(
        "decompose",
        [](const py::object& map_spec, int bound) {
            AnalysisOptions opt;
            opt.bound = bound;
            return from_json(decompose_report(parse_map_spec(to_json(map_spec)), opt));
        },
        py::arg("map_spec"), py::arg("bound") = 256);

    m.def(
        "pf",
        [](const py::object& map_spec, int bound, const std::string& tol, int maxiter) {
            AnalysisOptions opt = make_options(bound, tol, maxiter, false);
            return from_json(pf_report(parse_map_spec(to_json(map_spec)), opt));
        },
        py::arg("map_spec"), py::arg("bound") = 256, py::arg("tol") = "1/1000000",
        py::arg("maxiter") = 500);

    m.def(
        "compare",
        [](const py::object& spec1, const py::object& spec2, int bound) {
            AnalysisOptions opt;
            opt.bound = bound;
            return from_json(compare_report(parse_map_spec(to_json(spec1)),
                                            parse_map_spec(to_json(spec2)), opt));
        },
        py::arg("map_spec1"), py::arg("map_spec2"), py::arg("bound") = 256);

    py::register_exception<UnsupportedClass>(m, "UnsupportedClass");
    py::register_exception<ContextMismatch>(m, "ContextMismatch");
    py::register_exception<Error>(m, "DgimError");
}
