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

#include "rssiloc/cli.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "rssiloc/errors.hpp"
#include "rssiloc/result_io.hpp"
#include "rssiloc/scenario_io.hpp"

namespace rssiloc::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum class Mode { simulate, compare };

constexpr std::size_t kMaxListedPoints = 50;

std::ofstream open_output(const fs::path& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    return os;
}

void write_json(const fs::path& path, const json& j) {
    auto os = open_output(path);
    os << j.dump(2) << '\n';
}

std::optional<Scenario> load(const fs::path& path, std::optional<std::uint64_t> seed, std::ostream& err) {
    try {
        Scenario s = load_scenario(path);
        if (seed) {
            s.seed = *seed;
        }
        return s;
    } catch (const ScenarioParseError& e) {
        err << "error: " << path.string() << ": " << e.what() << '\n';
        return std::nullopt;
    }
}

void list_points(std::ostream& err, const std::vector<Point2D>& points) {
    for (std::size_t i = 0; i < points.size() && i < kMaxListedPoints; ++i) {
        err << "  (" << format_double(points[i].x) << ", " << format_double(points[i].y) << ")\n";
    }
    if (points.size() > kMaxListedPoints) {
        err << "  ... " << points.size() - kMaxListedPoints << " more\n";
    }
}

json metrics_or_null(const RunResult& r, EstimateFlavor flavor) {
    try {
        return metrics_to_json(compute_metrics(r, flavor));
    } catch (const EmptyResultError&) {
        return nullptr;
    }
}

struct SeedOutcome {
    std::uint64_t seed = 0;
    int code = kSuccess;
    std::string message;
    json metrics;
};

SeedOutcome run_one(Scenario s, const fs::path& dir, Mode mode, SeriesFormat format) {
    SeedOutcome outcome;
    outcome.seed = s.seed;
    try {
        fs::create_directories(dir);
        const RunResult result = run_scenario(s);
        outcome.metrics = {{"raw", metrics_or_null(result, EstimateFlavor::raw)},
                           {"averaged", metrics_or_null(result, EstimateFlavor::averaged)},
                           {"kalman", metrics_or_null(result, EstimateFlavor::kalman)}};

        if (mode == Mode::simulate) {
            if (format == SeriesFormat::csv) {
                auto os = open_output(dir / "steps.csv");
                write_steps_csv(os, result);
            } else {
                write_json(dir / "steps.json", steps_to_json(result));
            }
            write_json(dir / "summary.json", {{"seed", s.seed},
                                              {"steps", result.steps.size()},
                                              {"scans", result.scans},
                                              {"packets_sent", result.packets_sent},
                                              {"packets_lost", result.packets_lost},
                                              {"metrics", outcome.metrics},
                                              {"config", scenario_to_json(s)}});
        } else {
            if (format == SeriesFormat::csv) {
                auto os = open_output(dir / "compare.csv");
                write_compare_csv(os, result);
            } else {
                write_json(dir / "compare_steps.json", compare_steps_to_json(result));
            }
            write_json(dir / "compare.json", {{"seed", s.seed}, {"metrics", outcome.metrics}});
        }

        if (outcome.metrics["kalman"].is_null()) {
            outcome.code = kDomainError;
            outcome.message = "no step could be resolved";
            return outcome;
        }
        std::ostringstream msg;
        msg << "seed " << s.seed << ": rmse raw=" << format_double(outcome.metrics["raw"]["rmse_m"].get<double>())
            << " m, averaged=" << format_double(outcome.metrics["averaged"]["rmse_m"].get<double>())
            << " m, kalman=" << format_double(outcome.metrics["kalman"]["rmse_m"].get<double>())
            << " m, scans=" << result.scans;
        outcome.message = msg.str();
    } catch (const DomainError& e) {
        outcome.code = kDomainError;
        outcome.message = e.what();
    } catch (const std::exception& e) {
        outcome.code = kInternalError;
        outcome.message = e.what();
    }
    return outcome;
}

int run_pipeline(const RunOptions& opts, Mode mode, std::ostream& out, std::ostream& err) {
    if (opts.seeds == 0) {
        err << "error: --seeds must be >= 1\n";
        return kInputError;
    }
    const auto loaded = load(opts.scenario, opts.seed, err);
    if (!loaded) {
        return kInputError;
    }
    const Scenario& base = *loaded;

    const auto uncovered = uncovered_trajectory_points(base);
    if (!uncovered.empty()) {
        err << "error: " << uncovered.size() << " trajectory point(s) have fewer than three beacons within "
            << format_double(base.radio.max_range_m) << " m:\n";
        list_points(err, uncovered);
        return kDomainError;
    }

    std::vector<SeedOutcome> outcomes;
    if (opts.seeds == 1) {
        outcomes.push_back(run_one(base, opts.out_dir, mode, opts.format));
    } else {
        // Independent seeds run concurrently; results are reported in seed order.
        const std::size_t workers = std::max<std::size_t>(1, std::thread::hardware_concurrency());
        for (std::size_t first = 0; first < opts.seeds; first += workers) {
            std::vector<std::future<SeedOutcome>> batch;
            for (std::size_t i = first; i < std::min(opts.seeds, first + workers); ++i) {
                Scenario s = base;
                s.seed = base.seed + i;
                const fs::path dir = opts.out_dir / ("seed_" + std::to_string(s.seed));
                batch.push_back(std::async(std::launch::async, run_one, std::move(s), dir, mode, opts.format));
            }
            for (auto& f : batch) {
                outcomes.push_back(f.get());
            }
        }
    }

    int code = kSuccess;
    json sweep = json::array();
    for (const auto& o : outcomes) {
        if (o.code == kSuccess) {
            out << o.message << '\n';
        } else {
            err << "error: seed " << o.seed << ": " << o.message << '\n';
            code = std::max(code, o.code);
        }
        sweep.push_back({{"seed", o.seed}, {"exit_code", o.code}, {"metrics", o.metrics}});
    }
    if (opts.seeds > 1) {
        try {
            write_json(opts.out_dir / "sweep.json", sweep);
        } catch (const std::exception& e) {
            err << "error: " << e.what() << '\n';
            return kInternalError;
        }
    }
    return code;
}

}  // namespace

int cmd_simulate(const RunOptions& opts, std::ostream& out, std::ostream& err) {
    return run_pipeline(opts, Mode::simulate, out, err);
}

int cmd_compare(const RunOptions& opts, std::ostream& out, std::ostream& err) {
    return run_pipeline(opts, Mode::compare, out, err);
}

int cmd_scan(const ScanOptions& opts, std::ostream& out, std::ostream& err) {
    const auto loaded = load(opts.scenario, opts.seed, err);
    if (!loaded) {
        return kInputError;
    }
    try {
        fs::create_directories(opts.out_dir);
        // Same generator state as the opening scan of a simulation run.
        Rng rng = make_rng(loaded->seed);
        const ScanReport report = scan_all_channels(loaded->environment, loaded->scan, rng);
        auto os = open_output(opts.out_dir / "scan.csv");
        write_scan_csv(os, report);
        out << "selected_channel: " << select_channel(report).index() << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInternalError;
    }
    return kSuccess;
}

int cmd_deploy(const DeployOptions& opts, std::ostream& out, std::ostream& err) {
    const Rect roi{opts.x_min_m, opts.y_min_m, opts.x_min_m + opts.width_m, opts.y_min_m + opts.height_m};
    DeploymentPlan plan;
    try {
        roi.validate();
        plan = plan_square_grid_deployment(roi, opts.range_m, opts.safety);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const CapacityError& e) {
        err << "error: " << e.what() << '\n';
        return kDomainError;
    }

    try {
        const CoverageReport coverage = verify_three_coverage(plan, roi, opts.range_m, opts.grid_step_m);
        std::vector<AnchorNode> beacons;
        beacons.reserve(plan.beacons.size());
        for (std::size_t i = 0; i < plan.beacons.size(); ++i) {
            beacons.push_back({NodeId{static_cast<std::uint32_t>(i)}, plan.beacons[i]});
        }
        fs::create_directories(opts.out_dir);
        {
            auto os = open_output(opts.out_dir / "beacons.csv");
            write_beacons_csv(os, beacons);
        }
        json uncovered = json::array();
        for (std::size_t i = 0; i < coverage.uncovered.size() && i < kMaxListedPoints; ++i) {
            uncovered.push_back({{"x_m", coverage.uncovered[i].x}, {"y_m", coverage.uncovered[i].y}});
        }
        write_json(opts.out_dir / "coverage.json", {{"covered", coverage.covered},
                                                    {"samples", coverage.samples},
                                                    {"uncovered_count", coverage.uncovered.size()},
                                                    {"uncovered", uncovered},
                                                    {"beacons", beacons.size()},
                                                    {"columns", plan.columns},
                                                    {"rows", plan.rows},
                                                    {"spacing_x_m", plan.spacing_x_m},
                                                    {"spacing_y_m", plan.spacing_y_m},
                                                    {"range_m", opts.range_m},
                                                    {"grid_step_m", opts.grid_step_m}});
        out << "beacons: " << beacons.size() << " (" << plan.columns << " x " << plan.rows << ", spacing "
            << format_double(plan.spacing_x_m) << " x " << format_double(plan.spacing_y_m) << " m)\n";
        out << "coverage: " << (coverage.covered ? "pass" : "fail") << '\n';
        if (!coverage.covered) {
            err << "error: " << coverage.uncovered.size() << " sample point(s) see fewer than three beacons:\n";
            list_points(err, coverage.uncovered);
            return kDomainError;
        }
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInternalError;
    }
    return kSuccess;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"RSSI localization simulator for 802.15.4 networks under WiFi interference", "rssiloc"};
    app.require_subcommand(1);

    RunOptions run_opts;
    ScanOptions scan_opts;
    DeployOptions deploy_opts;
    std::string format = "csv";
    std::uint64_t seed_override = 0;

    auto add_run_flags = [&](CLI::App* sub) {
        sub->add_option("--scenario", run_opts.scenario, "Scenario JSON file")->required();
        sub->add_option("--out", run_opts.out_dir, "Output directory");
        sub->add_option("--seed", seed_override, "Override the scenario seed");
        sub->add_option("--seeds", run_opts.seeds, "Number of consecutive seeds to sweep");
        sub->add_option("--format", format, "Per-step series format")->check(CLI::IsMember({"csv", "json"}));
    };

    auto* simulate = app.add_subcommand("simulate", "Run a scenario and write steps and summary");
    add_run_flags(simulate);
    auto* compare = app.add_subcommand("compare", "Per-step errors of the raw, averaged and filtered pipelines");
    add_run_flags(compare);

    auto* scan = app.add_subcommand("scan", "Energy-scan all ZigBee channels and pick the quietest");
    scan->add_option("--scenario", scan_opts.scenario, "Scenario JSON file")->required();
    scan->add_option("--out", scan_opts.out_dir, "Output directory");
    scan->add_option("--seed", seed_override, "Override the scenario seed");

    auto* deploy = app.add_subcommand("deploy", "Plan a beacon grid and verify three-coverage");
    deploy->add_option("--width-m", deploy_opts.width_m, "Region width")->required();
    deploy->add_option("--height-m", deploy_opts.height_m, "Region height")->required();
    deploy->add_option("--x-min-m", deploy_opts.x_min_m, "Region origin x");
    deploy->add_option("--y-min-m", deploy_opts.y_min_m, "Region origin y");
    deploy->add_option("--range-m", deploy_opts.range_m, "Radio range")->required();
    deploy->add_option("--safety", deploy_opts.safety, "Spacing safety factor in (0, 1]");
    deploy->add_option("--grid-step-m", deploy_opts.grid_step_m, "Verifier sampling step");
    deploy->add_option("--out", deploy_opts.out_dir, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kInputError;
    }

    const bool seed_given = (simulate->parsed() && simulate->count("--seed") > 0) ||
                            (compare->parsed() && compare->count("--seed") > 0) ||
                            (scan->parsed() && scan->count("--seed") > 0);
    try {
        if (simulate->parsed() || compare->parsed()) {
            run_opts.format = format == "json" ? SeriesFormat::json : SeriesFormat::csv;
            if (seed_given) {
                run_opts.seed = seed_override;
            }
            return simulate->parsed() ? cmd_simulate(run_opts, out, err) : cmd_compare(run_opts, out, err);
        }
        if (scan->parsed()) {
            if (seed_given) {
                scan_opts.seed = seed_override;
            }
            return cmd_scan(scan_opts, out, err);
        }
        return cmd_deploy(deploy_opts, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInternalError;
    }
}

}  // namespace rssiloc::cli
