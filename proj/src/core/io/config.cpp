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

#include "core/io/config.hpp"

#include <cstdio>

#include "core/errors.hpp"

namespace roadsense::io {

using nlohmann::json;

namespace {

void require_known_keys(const json& obj, const std::vector<std::string>& known,
                        const std::string& scope) {
    for (const auto& [key, value] : obj.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw Error(ErrorCode::ConfigError, "unknown key '" + scope + key + "'");
        }
    }
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ConfigError, std::string("bad value for '") + key + "': " + e.what());
    }
}

}  // namespace

json RunConfig::to_json() const {
    json j;
    j["n_agents"] = fleet.n_agents;
    j["beta"] = fleet.beta;
    j["uncertainty_bound"] = fleet.uncertainty_bound;
    j["alpha"] = fleet.alpha;
    j["q"] = {{"cutoff", fleet.q.cutoff}, {"order", fleet.q.order}};
    j["dt"] = fleet.dt;
    j["duration"] = fleet.duration;
    j["transient_skip"] = fleet.transient_skip;
    j["order_seed"] = fleet.order_seed;
    j["uncertainty_seed"] = fleet.uncertainty_seed;
    j["learning_enabled"] = fleet.learning_enabled;
    j["dob_enabled"] = fleet.dob_enabled;
    j["shuffle_enabled"] = fleet.shuffle_enabled;
    j["literal_cus_nominal"] = fleet.literal_cus_nominal;
    j["rolloff_cutoff"] = fleet.offline.rolloff_cutoff;
    j["rolloff_order"] = fleet.offline.rolloff_order;
    j["agent_j"] = agent_j;
    j["log_agents"] = log_agents;
    json r;
    switch (road.kind) {
        case roads::RoadKind::sinusoid: r["kind"] = "sinusoid"; break;
        case roads::RoadKind::iso_class_c: r["kind"] = "iso_class_c"; break;
        case roads::RoadKind::from_file: r["kind"] = "from_file"; break;
    }
    r["amplitude"] = road.amplitude;
    r["frequency"] = road.frequency;
    r["seed"] = road.seed;
    r["velocity"] = road.velocity;
    r["path"] = road.path;
    r["iso_gn0"] = road.iso_gn0;
    r["iso_n0"] = road.iso_n0;
    r["n_min"] = road.n_min;
    r["n_max"] = road.n_max;
    j["road"] = r;
    return j;
}

json default_config_json() {
    return RunConfig{}.to_json();
}

json merge_config(json base, const json& overrides) {
    if (!overrides.is_object()) {
        throw Error(ErrorCode::ConfigError, "overrides must be a JSON object");
    }
    for (const auto& [key, value] : overrides.items()) {
        if (value.is_object() && base.contains(key) && base.at(key).is_object()) {
            base[key] = merge_config(base.at(key), value);
        } else {
            base[key] = value;
        }
    }
    return base;
}

RunConfig parse_config(const json& merged) {
    if (!merged.is_object()) throw Error(ErrorCode::ConfigError, "config must be a JSON object");
    require_known_keys(merged,
                       {"n_agents", "beta", "uncertainty_bound", "alpha", "q", "dt", "duration",
                        "transient_skip", "order_seed", "uncertainty_seed", "learning_enabled",
                        "dob_enabled", "shuffle_enabled", "literal_cus_nominal", "rolloff_cutoff",
                        "rolloff_order", "agent_j", "log_agents", "road"},
                       "");

    RunConfig cfg;
    cfg.fleet.n_agents = get_or(merged, "n_agents", cfg.fleet.n_agents);
    cfg.fleet.beta = get_or(merged, "beta", cfg.fleet.beta);
    cfg.fleet.uncertainty_bound = get_or(merged, "uncertainty_bound", cfg.fleet.uncertainty_bound);
    cfg.fleet.alpha = get_or(merged, "alpha", cfg.fleet.alpha);
    cfg.fleet.dt = get_or(merged, "dt", cfg.fleet.dt);
    cfg.fleet.duration = get_or(merged, "duration", cfg.fleet.duration);
    cfg.fleet.transient_skip = get_or(merged, "transient_skip", cfg.fleet.transient_skip);
    cfg.fleet.order_seed = get_or(merged, "order_seed", cfg.fleet.order_seed);
    cfg.fleet.uncertainty_seed = get_or(merged, "uncertainty_seed", cfg.fleet.uncertainty_seed);
    cfg.fleet.learning_enabled = get_or(merged, "learning_enabled", cfg.fleet.learning_enabled);
    cfg.fleet.dob_enabled = get_or(merged, "dob_enabled", cfg.fleet.dob_enabled);
    cfg.fleet.shuffle_enabled = get_or(merged, "shuffle_enabled", cfg.fleet.shuffle_enabled);
    cfg.fleet.literal_cus_nominal =
        get_or(merged, "literal_cus_nominal", cfg.fleet.literal_cus_nominal);
    cfg.fleet.offline.rolloff_cutoff =
        get_or(merged, "rolloff_cutoff", cfg.fleet.offline.rolloff_cutoff);
    cfg.fleet.offline.rolloff_order =
        get_or(merged, "rolloff_order", cfg.fleet.offline.rolloff_order);
    cfg.agent_j = get_or(merged, "agent_j", cfg.agent_j);
    cfg.log_agents = get_or(merged, "log_agents", cfg.log_agents);

    if (merged.contains("q")) {
        const json& q = merged.at("q");
        require_known_keys(q, {"cutoff", "order"}, "q.");
        cfg.fleet.q.cutoff = get_or(q, "cutoff", cfg.fleet.q.cutoff);
        cfg.fleet.q.order = get_or(q, "order", cfg.fleet.q.order);
    }
    if (merged.contains("road")) {
        const json& r = merged.at("road");
        require_known_keys(r,
                           {"kind", "amplitude", "frequency", "seed", "velocity", "path",
                            "iso_gn0", "iso_n0", "n_min", "n_max", "duration", "dt"},
                           "road.");
        const std::string kind = get_or<std::string>(r, "kind", "sinusoid");
        if (kind == "sinusoid") {
            cfg.road.kind = roads::RoadKind::sinusoid;
        } else if (kind == "iso_class_c") {
            cfg.road.kind = roads::RoadKind::iso_class_c;
        } else if (kind == "from_file") {
            cfg.road.kind = roads::RoadKind::from_file;
        } else {
            throw Error(ErrorCode::ConfigError, "unknown road.kind '" + kind + "'");
        }
        cfg.road.amplitude = get_or(r, "amplitude", cfg.road.amplitude);
        cfg.road.frequency = get_or(r, "frequency", cfg.road.frequency);
        cfg.road.seed = get_or(r, "seed", cfg.road.seed);
        cfg.road.velocity = get_or(r, "velocity", cfg.road.velocity);
        cfg.road.path = get_or(r, "path", cfg.road.path);
        cfg.road.iso_gn0 = get_or(r, "iso_gn0", cfg.road.iso_gn0);
        cfg.road.iso_n0 = get_or(r, "iso_n0", cfg.road.iso_n0);
        cfg.road.n_min = get_or(r, "n_min", cfg.road.n_min);
        cfg.road.n_max = get_or(r, "n_max", cfg.road.n_max);
        // Road timing must agree with the loop timing when given explicitly.
        if (r.contains("duration") &&
            std::abs(r.at("duration").get<double>() - cfg.fleet.duration) > 1e-12) {
            throw Error(ErrorCode::ConfigError, "road.duration must match duration");
        }
        if (r.contains("dt") && std::abs(r.at("dt").get<double>() - cfg.fleet.dt) > 1e-15) {
            throw Error(ErrorCode::ConfigError, "road.dt must match dt");
        }
    }
    cfg.road.duration = cfg.fleet.duration;
    cfg.road.dt = cfg.fleet.dt;

    if (cfg.agent_j < 0) throw Error(ErrorCode::ConfigError, "agent_j must be nonnegative");
    cfg.fleet.validate();
    cfg.road.validate();
    return cfg;
}

std::string run_id(const json& effective) {
    const std::string dump = effective.dump();
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : dump) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

}  // namespace roadsense::io
