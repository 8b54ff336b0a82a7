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

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "rssiloc/simulator.hpp"

namespace rssiloc {

/// Malformed or invalid scenario document. what() carries the JSON path of the
/// offending field and, where it can be located, the line number.
class ScenarioParseError : public std::runtime_error {
public:
    ScenarioParseError(std::string field, const std::string& message, int line = 0);

    const std::string& field() const noexcept { return field_; }
    const std::string& message() const noexcept { return message_; }
    int line() const noexcept { return line_; }

private:
    std::string field_;
    std::string message_;
    int line_;
};

Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

/// Fully resolved scenario (planned beacons materialized, defaults filled in).
/// parse_scenario(scenario_to_json(s).dump()) reproduces s.
nlohmann::json scenario_to_json(const Scenario& s);

}  // namespace rssiloc
