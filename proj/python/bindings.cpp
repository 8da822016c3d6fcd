// Copyright (c) fixaccel contributors.
// SPDX-License-Identifier: Apache-2.0
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <vector>

#include "fixaccel/accel.hpp"
#include "fixaccel/engine.hpp"
#include "fixaccel/extraction.hpp"
#include "fixaccel/io.hpp"
#include "fixaccel/program.hpp"

namespace py = pybind11;
using namespace fixaccel;

namespace {

template <typename T>
py::dict series_dict(const Series<T>& s) {
    py::dict d;
    d["values"] = s.values;
    d["stalled"] = s.stalled;
    return d;
}

py::dict record_dict(const IterationRecord& r) {
    py::dict d;
    d["index"] = r.index;
    d["state"] = r.state;
    d["event"] = to_string(r.event);
    d["accelerated"] = r.accelerated ? py::cast(*r.accelerated) : py::none();
    d["before_injection"] = r.before_injection ? py::cast(*r.before_injection) : py::none();
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Interval fixpoint engine with Aitken and epsilon-algorithm acceleration";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<StructureError>(m, "StructureError", PyExc_ValueError);
    py::register_exception<NothingToAccelerate>(m, "NothingToAccelerate", PyExc_RuntimeError);
    static py::exception<ParseError> parse_error(m, "ParseError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ParseError& e) {
            py::object err = py::reinterpret_borrow<py::object>(parse_error.ptr())(e.what());
            err.attr("line") = e.line();
            err.attr("column") = e.column();
            PyErr_SetObject(parse_error.ptr(), err.ptr());
        }
    });

    py::class_<Interval>(m, "Interval")
        .def(py::init<>())
        .def(py::init<double, double>(), py::arg("lb"), py::arg("ub"))
        .def_static("bottom", &Interval::bottom)
        .def_static("top", &Interval::top)
        .def_property_readonly("lb", &Interval::lb)
        .def_property_readonly("ub", &Interval::ub)
        .def_property_readonly("is_bottom", &Interval::is_bottom)
        .def_property_readonly("is_top", &Interval::is_top)
        .def("__eq__", &Interval::operator==)
        .def("__repr__", &Interval::to_string);

    py::class_<ThresholdSet>(m, "ThresholdSet")
        .def(py::init<std::vector<double>>())
        .def_property_readonly("values", [](const ThresholdSet& t) {
            return std::vector<double>(t.values().begin(), t.values().end());
        })
        .def("ceil", &ThresholdSet::ceil)
        .def("floor", &ThresholdSet::floor);

    py::class_<AbstractState>(m, "AbstractState")
        .def(py::init<std::vector<std::string>, std::vector<Interval>>())
        .def_property_readonly("names", &AbstractState::names)
        .def_property_readonly("values", &AbstractState::values)
        .def("__getitem__", [](const AbstractState& s, const std::string& n) { return s.at(n); })
        .def("__len__", &AbstractState::size)
        .def("__eq__", &AbstractState::operator==)
        .def("__repr__", &AbstractState::to_string);

    m.def("join", py::overload_cast<const Interval&, const Interval&>(&join));
    m.def("join", py::overload_cast<const AbstractState&, const AbstractState&>(&join));
    m.def("leq", py::overload_cast<const Interval&, const Interval&>(&leq));
    m.def("leq", py::overload_cast<const AbstractState&, const AbstractState&>(&leq));
    m.def("widen", py::overload_cast<const Interval&, const Interval&>(&widen));
    m.def("widen", py::overload_cast<const Interval&, const Interval&, const ThresholdSet&>(&widen));

    py::class_<Program>(m, "Program")
        .def_property_readonly("state_vars",
                               [](const Program& p) {
                                   std::vector<std::string> n;
                                   for (const auto& v : p.state_vars()) n.push_back(v.name);
                                   return n;
                               })
        .def("initial_state", &Program::initial_state)
        .def("transfer", &Program::transfer)
        .def("step", &Program::step);
    m.def("parse_program", [](const std::string& text) { return parse_program(text); });
    m.def("load_program", &load_program);
    m.def("print_program", &print_program);

    m.def(
        "aitken", [](const std::vector<double>& x, double tol) { return series_dict(aitken(x, {tol})); },
        py::arg("x"), py::arg("stall_tolerance") = 1e-12);
    m.def(
        "epsilon_diagonal",
        [](const std::vector<double>& x, double tol) { return series_dict(epsilon_diagonal(x, {tol})); },
        py::arg("x"), py::arg("stall_tolerance") = 1e-12);
    m.def(
        "vector_epsilon_diagonal",
        [](const std::vector<RealVector>& x, double tol) { return series_dict(vector_epsilon_diagonal(x, {tol})); },
        py::arg("x"), py::arg("stall_tolerance") = 1e-12);
    m.def("samelson_inverse", &samelson_inverse);

    m.def("extract", [](const AbstractState& x) {
        const ExtractionResult r = extract(x, ExtractionSchema::of(x));
        return py::make_tuple(r.vector, r.excluded);
    });
    m.def("combine", [](const RealVector& y, const std::vector<std::size_t>& excluded,
                        const std::vector<std::string>& names) {
        const CombineResult r = combine(y, excluded, ExtractionSchema(names));
        return py::make_tuple(r.state, r.inverted);
    });

    py::class_<EngineConfig>(m, "EngineConfig")
        .def(py::init([](const std::string& mode, const std::string& method, double delta, std::size_t widen_delay,
                         std::optional<std::vector<double>> thresholds, const std::string& inject,
                         std::size_t fallback_after, std::size_t max_iter, double stable_tol) {
                 EngineConfig c;
                 c.mode = parse_mode(mode);
                 c.method = parse_method(method);
                 c.delta = delta;
                 c.widen_delay = widen_delay;
                 if (thresholds) c.thresholds = ThresholdSet(*thresholds);
                 c.inject = parse_inject_policy(inject);
                 c.fallback_after = fallback_after;
                 c.max_iter = max_iter;
                 c.stable_tol = stable_tol;
                 c.validate();
                 return c;
             }),
             py::arg("mode") = "accel", py::arg("method") = "vea", py::arg("delta") = 1e-3,
             py::arg("widen_delay") = 0, py::arg("thresholds") = py::none(), py::arg("inject") = "once",
             py::arg("fallback_after") = 20, py::arg("max_iter") = 10000, py::arg("stable_tol") = 3e-7)
        .def_property_readonly("mode", [](const EngineConfig& c) { return to_string(c.mode); })
        .def_property_readonly("method", [](const EngineConfig& c) { return to_string(c.method); })
        .def_readonly("delta", &EngineConfig::delta);

    m.def(
        "analyze",
        [](const Program& p, const EngineConfig& cfg) {
            const AnalysisResult r = analyze(p, cfg);
            py::dict d;
            d["invariant"] = r.report.invariant;
            d["iterations"] = r.report.iterations;
            d["injections"] = r.report.injections;
            d["converged"] = r.report.converged;
            d["sound"] = r.report.sound;
            py::list trace;
            for (const auto& rec : r.trace.records) trace.append(record_dict(rec));
            d["trace"] = trace;
            return d;
        },
        py::arg("program"), py::arg("config") = EngineConfig{});
    m.def("_report_json", [](const Program& p, const EngineConfig& cfg) {
        return report_json(analyze(p, cfg), cfg).dump();
    });
    m.def("verify_postfixpoint", &verify_postfixpoint);
}
