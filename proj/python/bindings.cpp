/*
 * Copyright 2026 The rssiloc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rssiloc/errors.hpp"
#include "rssiloc/result_io.hpp"
#include "rssiloc/scenario_io.hpp"
#include "rssiloc/simulator.hpp"

namespace py = pybind11;
using namespace rssiloc;

namespace {

using XY = std::pair<double, double>;

std::vector<AnchorNode> to_anchors(const std::vector<XY>& positions) {
    std::vector<AnchorNode> out;
    out.reserve(positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i) {
        out.push_back({NodeId{static_cast<std::uint32_t>(i)}, {positions[i].first, positions[i].second}});
    }
    return out;
}

std::array<AnchorNode, 3> to_anchor_triple(const std::vector<XY>& positions) {
    if (positions.size() != 3) {
        throw DomainError("exactly three anchors expected");
    }
    const auto a = to_anchors(positions);
    return {a[0], a[1], a[2]};
}

XY to_xy(const Point2D& p) { return {p.x, p.y}; }

// Python dicts are built by round-tripping through the JSON writers so the
// two front ends agree on field names.
py::object to_python(const nlohmann::json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "RSSI localization under WiFi cross-technology interference";
    m.attr("__version__") = "0.1.0";

    py::register_exception<InsufficientAnchorsError>(m, "InsufficientAnchorsError", PyExc_RuntimeError);
    py::register_exception<DegenerateGeometryError>(m, "DegenerateGeometryError", PyExc_RuntimeError);
    py::register_exception<SingularGeometryError>(m, "SingularGeometryError", PyExc_RuntimeError);
    py::register_exception<CapacityError>(m, "CapacityError", PyExc_RuntimeError);
    py::register_exception<EmptyResultError>(m, "EmptyResultError", PyExc_RuntimeError);
    py::register_exception<ScenarioParseError>(m, "ScenarioParseError", PyExc_ValueError);

    py::class_<PathLossParams>(m, "PathLossParams")
        .def(py::init([](double rssi_at_ref_dbm, double ref_distance_m, double exponent) {
                 PathLossParams p{Dbm{rssi_at_ref_dbm}, ref_distance_m, exponent};
                 p.validate();
                 return p;
             }),
             py::arg("rssi_at_ref_dbm") = -45.0, py::arg("ref_distance_m") = 1.0, py::arg("exponent") = 2.0)
        .def_property_readonly("rssi_at_ref_dbm", [](const PathLossParams& p) { return p.rssi_at_ref.value; })
        .def_readonly("ref_distance_m", &PathLossParams::ref_distance_m)
        .def_readonly("exponent", &PathLossParams::exponent);

    m.def("euclidean_distance", [](XY a, XY b) {
        return euclidean_distance({a.first, a.second}, {b.first, b.second});
    });
    m.def("dbm_to_milliwatts", [](double dbm) { return dbm_to_milliwatts(Dbm{dbm}); });
    m.def("milliwatts_to_dbm", [](double mw) { return milliwatts_to_dbm(mw).value; });

    m.def("rssi_at_distance", [](double d, const PathLossParams& p) { return rssi_at_distance(p, d).value; },
          py::arg("distance_m"), py::arg("params") = PathLossParams{});
    m.def("distance_from_rssi", [](double rssi, const PathLossParams& p) { return distance_from_rssi(p, Dbm{rssi}); },
          py::arg("rssi_dbm"), py::arg("params") = PathLossParams{});

    m.def("zigbee_center_mhz", [](int c) { return ZigbeeChannel(c).center_mhz(); });
    m.def("wifi_center_mhz", [](int w) { return WifiChannel(w).center_mhz(); });
    m.def("channels_overlap", [](int z, int w) { return channels_overlap(ZigbeeChannel(z), WifiChannel(w)); },
          py::arg("zigbee_channel"), py::arg("wifi_channel"));

    m.def("aggregate_rssi", [](const std::vector<double>& samples) {
        std::vector<Dbm> v;
        v.reserve(samples.size());
        for (double s : samples) {
            v.push_back(Dbm{s});
        }
        return aggregate_rssi(v).value;
    });
    m.def(
        "trilaterate",
        [](const std::vector<XY>& anchors, const std::vector<double>& ranges) {
            return to_xy(trilaterate({to_anchors(anchors), ranges}).position);
        },
        py::arg("anchors"), py::arg("ranges_m"));
    m.def(
        "least_squares_multilaterate",
        [](const std::vector<XY>& anchors, const std::vector<double>& ranges) {
            return to_xy(least_squares_multilaterate(to_anchors(anchors), ranges).position);
        },
        py::arg("anchors"), py::arg("ranges_m"));

    py::class_<KalmanConfig>(m, "KalmanConfig")
        .def(py::init([](double q, double sigma_r) { return KalmanConfig::isotropic(q, sigma_r); }),
             py::arg("process_noise_m2") = KalmanConfig::kDefaultProcessNoise,
             py::arg("range_sigma_m") = KalmanConfig::kDefaultRangeSigma)
        .def_readwrite("state_transition", &KalmanConfig::state_transition)
        .def_readwrite("control", &KalmanConfig::control)
        .def_readwrite("process_noise", &KalmanConfig::process_noise)
        .def_readwrite("measurement_noise", &KalmanConfig::measurement_noise)
        .def("validate", &KalmanConfig::validate);

    py::class_<KalmanState>(m, "KalmanState")
        .def(py::init([](const Vec2& position, const Mat2& covariance) { return KalmanState{position, covariance}; }),
             py::arg("position"), py::arg("covariance") = Mat2::Zero())
        .def_readwrite("position", &KalmanState::position)
        .def_readwrite("covariance", &KalmanState::covariance);

    m.def("predict", &predict, py::arg("state"), py::arg("config"));
    m.def(
        "observation_jacobian",
        [](const Vec2& p, const std::vector<XY>& anchors) { return observation_jacobian(p, to_anchor_triple(anchors)); },
        py::arg("position"), py::arg("anchors"));
    m.def("gain", &gain, py::arg("covariance"), py::arg("observation"), py::arg("measurement_noise"));
    m.def(
        "filter_update",
        [](const KalmanState& s, const std::vector<XY>& anchors, const std::array<double, 3>& ranges,
           const KalmanConfig& cfg) { return update(s, {to_anchor_triple(anchors), ranges}, cfg); },
        py::arg("predicted"), py::arg("anchors"), py::arg("ranges_m"), py::arg("config"));
    m.def(
        "filter_step",
        [](const KalmanState& s, const std::vector<XY>& anchors, const std::array<double, 3>& ranges,
           const KalmanConfig& cfg) { return filter_step(s, {to_anchor_triple(anchors), ranges}, cfg); },
        py::arg("state"), py::arg("anchors"), py::arg("ranges_m"), py::arg("config"));

    m.def(
        "plan_square_grid_deployment",
        [](double width_m, double height_m, double range_m, double safety) {
            const auto plan = plan_square_grid_deployment({0.0, 0.0, width_m, height_m}, range_m, safety);
            std::vector<XY> beacons;
            for (const auto& b : plan.beacons) {
                beacons.push_back(to_xy(b));
            }
            py::dict d;
            d["beacons"] = beacons;
            d["columns"] = plan.columns;
            d["rows"] = plan.rows;
            d["spacing_x_m"] = plan.spacing_x_m;
            d["spacing_y_m"] = plan.spacing_y_m;
            return d;
        },
        py::arg("width_m"), py::arg("height_m"), py::arg("range_m"), py::arg("safety") = 0.9);
    m.def(
        "verify_three_coverage",
        [](const std::vector<XY>& beacons, double width_m, double height_m, double range_m, double grid_step_m) {
            std::vector<Point2D> pts;
            for (const auto& b : beacons) {
                pts.push_back({b.first, b.second});
            }
            const auto report = verify_three_coverage(pts, {0.0, 0.0, width_m, height_m}, range_m, grid_step_m);
            std::vector<XY> uncovered;
            for (const auto& p : report.uncovered) {
                uncovered.push_back(to_xy(p));
            }
            return py::make_tuple(report.covered, uncovered);
        },
        py::arg("beacons"), py::arg("width_m"), py::arg("height_m"), py::arg("range_m"),
        py::arg("grid_step_m") = 0.25);

    m.def(
        "scan_channels",
        [](const std::string& scenario_json) {
            const Scenario s = parse_scenario(scenario_json);
            Rng rng = make_rng(s.seed);
            const auto report = scan_all_channels(s.environment, s.scan, rng);
            py::list rows;
            for (const auto& r : report.records) {
                py::dict d;
                d["channel"] = r.channel.index();
                d["center_mhz"] = r.channel.center_mhz();
                d["mean_dbm"] = r.mean_energy.value;
                d["variance_db2"] = r.variance_db2;
                rows.append(d);
            }
            return py::make_tuple(select_channel(report).index(), rows);
        },
        py::arg("scenario_json"), "Energy scan of all 16 channels; returns (selected channel, records).");

    m.def(
        "run_scenario",
        [](const std::string& scenario_json) {
            RunResult result;
            {
                py::gil_scoped_release release;
                result = run_scenario(parse_scenario(scenario_json));
            }
            nlohmann::json j{{"steps", steps_to_json(result)},
                             {"scans", result.scans},
                             {"packets_sent", result.packets_sent},
                             {"packets_lost", result.packets_lost}};
            return to_python(j);
        },
        py::arg("scenario_json"));

    m.def(
        "compare_pipelines",
        [](const std::string& scenario_json, std::size_t from_step) {
            PipelineComparison c;
            {
                py::gil_scoped_release release;
                c = compare_pipelines(run_scenario(parse_scenario(scenario_json)), from_step);
            }
            return to_python(comparison_to_json(c));
        },
        py::arg("scenario_json"), py::arg("from_step") = 0);
}
