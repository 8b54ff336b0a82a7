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

#include <ostream>
#include <span>
#include <string>

#include <json.hpp>

#include "rssiloc/channel.hpp"
#include "rssiloc/simulator.hpp"

namespace rssiloc {

// Shortest decimal that parses back to the same double.
std::string format_double(double v);

void write_steps_csv(std::ostream& os, const RunResult& result);
nlohmann::json steps_to_json(const RunResult& result);

void write_compare_csv(std::ostream& os, const RunResult& result);
nlohmann::json compare_steps_to_json(const RunResult& result);

void write_scan_csv(std::ostream& os, const ScanReport& report);

void write_beacons_csv(std::ostream& os, std::span<const AnchorNode> beacons);

nlohmann::json metrics_to_json(const Metrics& m);
nlohmann::json comparison_to_json(const PipelineComparison& c);

}  // namespace rssiloc
