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

#include "core/fleet/fleet.hpp"

#include <random>

#include "core/errors.hpp"
#include "core/fleet/record_store.hpp"
#include "core/report/report.hpp"

namespace roadsense::fleet {

using lti::SignalTrace;
using vehicle::PidGains;
using vehicle::VehicleParams;

void FleetConfig::validate() const {
    if (n_agents < 1) throw Error(ErrorCode::ConfigError, "n_agents must be at least 1");
    if (!(uncertainty_bound >= 0.0 && uncertainty_bound < 1.0)) {
        throw Error(ErrorCode::ConfigError, "uncertainty_bound must lie in [0, 1)");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw Error(ErrorCode::ConfigError, "alpha must lie strictly inside (0, 1)");
    }
    if (!(beta > 0.0)) throw Error(ErrorCode::ConfigError, "beta must be positive");
    if (!(dt > 0.0) || !(duration > dt)) {
        throw Error(ErrorCode::ConfigError, "need 0 < dt < duration");
    }
    if (transient_skip < 0.0 || transient_skip >= duration) {
        throw Error(ErrorCode::ConfigError, "transient_skip must lie inside the run");
    }
    q.validate();
}

VehicleParams table_params(double beta, int j) {
    return VehicleParams{2.45 + beta * j,           1.0 + beta * j,
                         950.0 + 100.0 * beta * j,  1250.0 + 100.0 * beta * j,
                         7.5 + beta * j,            5.0 + beta * j};
}

PidGains table_pid(double beta, int j) {
    return PidGains{1500.0 + 30.0 * beta * j, 200.0 + beta * j, 500.0 + 15.0 * beta * j};
}

namespace {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Explicit Fisher-Yates with our own uniform draws; results must be
// bit-reproducible across standard libraries.
void shuffle_indices(std::vector<int>& indices, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = indices.size(); i > 1; --i) {
        const auto k = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(i));
        std::swap(indices[i - 1], indices[std::min(k, i - 1)]);
    }
}

}  // namespace

std::vector<AgentSpec> build_fleet(const FleetConfig& cfg) {
    cfg.validate();
    std::vector<int> order(cfg.n_agents);
    for (int i = 0; i < cfg.n_agents; ++i) order[i] = i + 1;
    if (cfg.shuffle_enabled) shuffle_indices(order, cfg.order_seed);

    std::mt19937_64 uncertainty_rng(cfg.uncertainty_seed);
    auto factor = [&]() {
        return 1.0 - cfg.uncertainty_bound + 2.0 * cfg.uncertainty_bound * uniform01(uncertainty_rng);
    };

    std::vector<AgentSpec> fleet;
    fleet.reserve(cfg.n_agents);
    for (int position = 1; position <= cfg.n_agents; ++position) {
        const int j = order[position - 1];
        AgentSpec spec;
        spec.position = position;
        spec.j = j;
        spec.actual = table_params(cfg.beta, j);
        spec.pid = table_pid(cfg.beta, j);
        // One draw per parameter, in field order.
        spec.nominal = spec.actual;
        spec.nominal.m_s *= factor();
        spec.nominal.m_us *= factor();
        spec.nominal.k_s *= factor();
        spec.nominal.k_us *= factor();
        spec.nominal.c_s *= factor();
        const double f_cus = factor();
        spec.nominal.c_us =
            (cfg.literal_cus_nominal ? (5.0 + cfg.beta * 7.0 * j) : spec.actual.c_us) * f_cus;
        spec.nominal.validate();
        fleet.push_back(std::move(spec));
    }
    return fleet;
}

FleetResults run_cascade(const FleetConfig& cfg, const std::vector<AgentSpec>& fleet,
                         const SignalTrace& road, RecordStore* store) {
    cfg.validate();
    if (fleet.empty()) throw Error(ErrorCode::InvalidParams, "fleet is empty");

    FleetResults results;
    results.config = cfg;
    results.road = road;
    results.agents.reserve(fleet.size());

    observer::RunOptions run_options;
    run_options.dob_enabled = cfg.dob_enabled;

    std::optional<ilc::SharedRecord> prev;
    for (const AgentSpec& spec : fleet) {
        const observer::AgentLoop loop(spec.actual, spec.nominal, spec.pid, cfg.q, cfg.dt);

        SignalTrace learning_signal = SignalTrace::zeros(cfg.dt, road.size(), "d_f");
        if (cfg.learning_enabled && prev) {
            const ilc::LearningFilters filters =
                ilc::synth_filters(*prev, spec.nominal, spec.pid, cfg.q, cfg.alpha);
            // Learn as deep into the band as this pair's dynamics allow.
            ilc::OfflineFilterOptions offline = cfg.offline;
            offline.rolloff_cutoff = std::max(
                cfg.offline.rolloff_cutoff, ilc::learnable_band(prev->nominal, spec.nominal));
            learning_signal = ilc::make_learning_signal(filters, *prev, offline);
        }

        AgentResult result;
        result.position = spec.position;
        result.j = spec.j;
        try {
            result.log = observer::run_agent(loop, road, learning_signal, run_options);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::UnstableLoop) {
                throw Error(ErrorCode::UnstableLoop,
                            "cascade aborted at position " + std::to_string(spec.position) +
                                ": " + e.what());
            }
            throw;
        }
        result.rmse_mm = report::rmse_mm(result.log.z_r_hat, road, cfg.transient_skip);
        result.ed_norm = (result.log.d - result.log.d_hat).l2_norm(cfg.transient_skip);
        result.df_rms = learning_signal.rms(cfg.transient_skip);

        ilc::SharedRecord record{spec.position, result.log.e, learning_signal,
                                 spec.nominal,  spec.pid,     cfg.q};
        if (store) store->put(record);
        prev = std::move(record);
        results.agents.push_back(std::move(result));
    }
    return results;
}

}  // namespace roadsense::fleet
