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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

namespace rssiloc::cli {

enum ExitCode : int {
    kSuccess = 0,
    kInternalError = 1,
    kInputError = 2,
    kDomainError = 3,
};

enum class SeriesFormat { csv, json };

struct RunOptions {
    std::filesystem::path scenario;
    std::filesystem::path out_dir = ".";
    std::optional<std::uint64_t> seed;  // overrides the file's seed
    std::size_t seeds = 1;              // > 1 runs a sweep seed, seed+1, ...
    SeriesFormat format = SeriesFormat::csv;
};

struct ScanOptions {
    std::filesystem::path scenario;
    std::filesystem::path out_dir = ".";
    std::optional<std::uint64_t> seed;
};

struct DeployOptions {
    double x_min_m = 0.0;
    double y_min_m = 0.0;
    double width_m = 0.0;
    double height_m = 0.0;
    double range_m = 0.0;
    double safety = 0.9;
    double grid_step_m = 0.25;
    std::filesystem::path out_dir = ".";
};

// steps.csv (or steps.json) and summary.json per run.
int cmd_simulate(const RunOptions& opts, std::ostream& out, std::ostream& err);

// scan.csv plus the selected channel on stdout.
int cmd_scan(const ScanOptions& opts, std::ostream& out, std::ostream& err);

// beacons.csv plus coverage.json; exit 3 when the plan fails verification.
int cmd_deploy(const DeployOptions& opts, std::ostream& out, std::ostream& err);

// compare.csv (or compare_steps.json) and compare.json with the metric triple.
int cmd_compare(const RunOptions& opts, std::ostream& out, std::ostream& err);

/// Full command line: `rssiloc <simulate|scan|deploy|compare> [flags]`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rssiloc::cli
