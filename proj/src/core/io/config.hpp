/*
 * Copyright 2026 The Roadsense Authors
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

#include <json.hpp>
#include <string>
#include <vector>

#include "core/fleet/fleet.hpp"
#include "core/roads/roads.hpp"

namespace roadsense::io {

/// Effective run configuration: fleet parameters, road selection, and the
/// presentation extras. One JSON document is the canonical artifact per run.
struct RunConfig {
    fleet::FleetConfig fleet;
    roads::RoadSpec road;
    int agent_j = 1;                             // single-agent runs
    std::vector<int> log_agents = {1, 2, 30, 90};  // positions whose logs persist

    nlohmann::json to_json() const;
};

/// Built-in defaults as JSON.
nlohmann::json default_config_json();

/// Deep-merges overrides into base (objects merge, scalars replace).
nlohmann::json merge_config(nlohmann::json base, const nlohmann::json& overrides);

/// Parses and validates a merged configuration document. Unknown keys are
/// hard errors (ConfigError), as are out-of-range values.
RunConfig parse_config(const nlohmann::json& merged);

/// Content hash of the effective configuration; partitions the output store
/// and dedupes reruns of identical configs.
std::string run_id(const nlohmann::json& effective);

}  // namespace roadsense::io
