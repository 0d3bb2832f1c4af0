// Copyright 2026 The akmeter Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "akmeter/commands.hpp"
#include "akmeter/errors.hpp"
#include "akmeter/report.hpp"
#include "akmeter/scenario.hpp"

namespace py = pybind11;
using namespace akmeter;

namespace {

Backend parse_backend(const std::string &name) {
    if (name == "gaussian") {
        return Backend::gaussian;
    }
    if (name == "grid") {
        return Backend::grid;
    }
    throw py::value_error("backend must be 'gaussian' or 'grid', got '" + name + "'");
}

Backend default_backend(const Scenario &s) {
    return s.backend == BackendChoice::grid ? Backend::grid : Backend::gaussian;
}

py::dict deltas_dict(const Deltas &d) {
    py::dict out;
    const auto values = d.values();
    for (std::size_t i = 0; i < Deltas::kCount; ++i) {
        out[py::str(std::string(Deltas::kNames[i]))] = values[i];
    }
    return out;
}

py::dict region_dict(const PacketRegion &r) {
    py::dict out;
    out["packet"] = r.packet;
    out["c_squared"] = r.weight;
    out["mass"] = r.mass;
    out["x_lo"] = r.region.x_lo;
    out["x_hi"] = r.region.x_hi;
    out["p_lo"] = r.region.p_lo;
    out["p_hi"] = r.region.p_hi;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Simultaneous position and momentum measurement: exact algebra, Gaussian and lattice backends";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<ResolutionError>(m, "ResolutionError", PyExc_RuntimeError);
    py::register_exception<AdmissibilityError>(m, "AdmissibilityError", PyExc_ValueError);
    py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

    py::class_<Scenario>(m, "Scenario")
        .def(py::init<>())
        .def_readwrite("hbar", &Scenario::hbar)
        .def_readwrite("lam", &Scenario::lambda)
        .def_readwrite("coupling", &Scenario::coupling)
        .def_readwrite("mean_x", &Scenario::mean_x)
        .def_readwrite("mean_p", &Scenario::mean_p)
        .def_readwrite("seed", &Scenario::seed)
        .def_readwrite("region_fraction", &Scenario::region_fraction)
        .def_property(
            "width", [](const Scenario &s) { return s.system_width(); },
            [](Scenario &s, double w) { s.width = w; })
        .def_property_readonly("is_superposition",
                               [](const Scenario &s) { return s.system_kind == SystemKind::superposition; })
        .def(
            "set_grid",
            [](Scenario &s, std::size_t n, std::optional<double> length) {
                s.grid.n = {n, n, n};
                if (length) {
                    s.grid.length = {*length, *length, *length};
                    s.grid.auto_length = {false, false, false};
                } else {
                    s.grid.auto_length = {true, true, true};
                }
            },
            py::arg("n"), py::arg("length") = py::none(),
            "Same lattice on all three axes; length None picks it from the state");

    py::class_<InequalityRecord>(m, "InequalityRecord")
        .def_readonly("name", &InequalityRecord::name)
        .def_readonly("lhs", &InequalityRecord::lhs)
        .def_readonly("bound", &InequalityRecord::bound)
        .def_readonly("margin", &InequalityRecord::margin)
        .def_readonly("satisfied", &InequalityRecord::satisfied)
        .def("__repr__", [](const InequalityRecord &r) {
            return "<InequalityRecord " + r.name + (r.satisfied ? " ok>" : " VIOLATED>");
        });

    py::class_<MeasurementReport>(m, "Report")
        .def_property_readonly("deltas", [](const MeasurementReport &r) { return deltas_dict(r.deltas); })
        .def_property_readonly("mean_errors",
                               [](const MeasurementReport &r) {
                                   py::dict out;
                                   out["ei_x"] = r.mean_errors.ei_x;
                                   out["ei_p"] = r.mean_errors.ei_p;
                                   out["ef_x"] = r.mean_errors.ef_x;
                                   out["ef_p"] = r.mean_errors.ef_p;
                                   return out;
                               })
        .def_property_readonly("variance_residuals",
                               [](const MeasurementReport &r) {
                                   const auto v = variance_addition(r);
                                   py::dict out;
                                   out["mu_x_f"] = v.mu_x_f;
                                   out["mu_p_f"] = v.mu_p_f;
                                   out["x_f"] = v.x_f;
                                   out["p_f"] = v.p_f;
                                   return out;
                               })
        .def_readonly("hbar", &MeasurementReport::hbar)
        .def_property_readonly("backend", [](const MeasurementReport &r) { return std::string(backend_name(r.backend)); })
        .def("records", &evaluate)
        .def("summary", [](const MeasurementReport &r) { return summary_text(r, evaluate(r)); });

    m.def("parse_scenario", &parse_scenario, py::arg("text"));
    m.def("load_scenario", [](const std::string &path) { return load_scenario(path); }, py::arg("path"));

    m.def("derive", [](long num, long den) { return derive_text(Rational(num, den)); }, py::arg("num") = 1,
          py::arg("den") = 1, "Exact Heisenberg finals, error operators and commutators for coupling num/den");

    m.def(
        "report",
        [](const Scenario &s, std::optional<std::string> backend) {
            const Backend b = backend ? parse_backend(*backend) : default_backend(s);
            py::gil_scoped_release release;
            return run_backend(s, b);
        },
        py::arg("scenario"), py::arg("backend") = py::none());

    m.def("relative_difference", [](const MeasurementReport &a, const MeasurementReport &b) {
        return max_relative_difference(a, b);
    });

    m.def(
        "sweep",
        [](const Scenario &s, std::vector<double> lambdas, std::optional<std::string> backend) {
            const Backend b = backend ? parse_backend(*backend) : default_backend(s);
            std::vector<SweepRow> rows;
            {
                py::gil_scoped_release release;
                rows = lambda_sweep(lambdas, [&](double lambda) {
                    Scenario copy = s;
                    copy.lambda = lambda;
                    return run_backend(copy, b);
                });
            }
            py::list out;
            for (const auto &row : rows) {
                py::dict d;
                d["lambda"] = row.lambda;
                d["ok"] = row.ok;
                d["error"] = row.error;
                d["deltas"] = row.ok ? py::object(deltas_dict(row.report.deltas)) : py::object(py::none());
                out.append(d);
            }
            return out;
        },
        py::arg("scenario"), py::arg("lambdas"), py::arg("backend") = py::none());

    m.def(
        "superposition",
        [](const Scenario &s) {
            SuperpositionResult result;
            {
                py::gil_scoped_release release;
                result = run_superposition(s);
            }
            py::list rows;
            for (const auto &r : result.rows) {
                rows.append(region_dict(r));
            }
            py::dict out;
            out["regions"] = rows;
            out["warnings"] = result.warnings;
            out["total_mass"] = result.distribution.total_mass();
            return out;
        },
        py::arg("scenario"));

    m.def(
        "sample",
        [](const Scenario &s, std::size_t count, std::optional<uint64_t> seed) {
            py::gil_scoped_release release;
            const auto dist = outcome_distribution(scenario_grid_state(s), s.coupling);
            return sample_outcomes(dist, count, seed.value_or(s.seed));
        },
        py::arg("scenario"), py::arg("count"), py::arg("seed") = py::none(),
        "Pointer readings (muX, muP) drawn from the lattice outcome distribution");

    m.def("polarization_check", &polarization_check, py::arg("dim1") = 4, py::arg("dim2") = 4,
          py::arg("trials") = 100, py::arg("seed") = 0);

    m.def("check", [](std::size_t grid_n) {
        CheckOptions options;
        options.grid_n = grid_n;
        std::vector<std::tuple<std::string, bool, std::string>> out;
        for (const auto &r : run_checks(options)) {
            out.emplace_back(r.name, r.passed, r.detail);
        }
        return out;
    }, py::arg("grid_n") = 32);
}
