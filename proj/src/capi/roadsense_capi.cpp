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

#include "roadsense/roadsense.h"

#include <json.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <string>

#include "core/errors.hpp"
#include "core/fleet/fleet.hpp"
#include "core/fleet/record_store.hpp"
#include "core/io/config.hpp"
#include "core/io/csv.hpp"
#include "core/report/report.hpp"
#include "core/roads/roads.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace roadsense;

struct rs_run {
    std::string error;
    std::string dir;
    std::string summary;
};

namespace {

rs_status map_error(const Error& e) {
    switch (e.code()) {
        case ErrorCode::ConfigError:
        case ErrorCode::InvalidParams:
            return RS_ERR_CONFIG;
        case ErrorCode::IoError:
        case ErrorCode::MalformedFile:
        case ErrorCode::NonuniformSampling:
            return RS_ERR_IO;
        case ErrorCode::UnstableLoop:
        case ErrorCode::UnstableInverse:
            return RS_ERR_UNSTABLE_LOOP;
        case ErrorCode::MissingRecord:
            return RS_ERR_MISSING_RECORD;
        case ErrorCode::CorruptRecord:
            return RS_ERR_CORRUPT_RECORD;
        default:
            return RS_ERR_NUMERIC;
    }
}

json parse_json_arg(const char* text, const char* what) {
    if (text == nullptr || *text == '\0') return json::object();
    json parsed = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (parsed.is_discarded()) {
        throw Error(ErrorCode::ConfigError, std::string(what) + " is not valid JSON");
    }
    return parsed;
}

struct EffectiveConfig {
    io::RunConfig run;
    json document;
    std::string id;
};

EffectiveConfig effective_config(const char* config_json, const char* overrides_json) {
    const json base = io::merge_config(io::default_config_json(),
                                       parse_json_arg(config_json, "config"));
    const json merged = io::merge_config(base, parse_json_arg(overrides_json, "overrides"));
    EffectiveConfig out;
    out.run = io::parse_config(merged);
    out.document = out.run.to_json();  // canonical form, defaults filled in
    out.id = io::run_id(out.document);
    return out;
}

void write_metadata(const fs::path& dir, const std::string& id, const json& effective,
                    double wall_seconds) {
    json meta;
    meta["run_id"] = id;
    meta["config"] = effective;
    meta["wall_time_s"] = wall_seconds;
    meta["created_unix_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                                  std::chrono::system_clock::now().time_since_epoch())
                                  .count();
    std::ofstream out(dir / "metadata.json");
    if (!out) throw Error(ErrorCode::IoError, "cannot write metadata");
    out << meta.dump(2) << '\n';
}

fs::path prepare_run_dir(const char* out_root, const std::string& id) {
    if (out_root == nullptr || *out_root == '\0') {
        throw Error(ErrorCode::ConfigError, "output root is required");
    }
    const fs::path dir = fs::path(out_root) / id;
    // Rerunning an identical config reuses its slot; stale contents go away
    // so every artifact in the directory belongs to this run.
    std::error_code ec;
    fs::remove_all(dir, ec);
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string());
    return dir;
}

rs_status finish_with_error(rs_run* run, const Error& e) {
    run->error = e.what();
    return map_error(e);
}

rs_status run_fleet_impl(rs_run* run, const char* config_json, const char* overrides_json,
                         const char* out_root) {
    const auto started = std::chrono::steady_clock::now();
    const EffectiveConfig cfg = effective_config(config_json, overrides_json);
    const fs::path dir = prepare_run_dir(out_root, cfg.id);

    const lti::SignalTrace road = roads::generate(cfg.run.road);
    roads::save_road_csv(road, dir / "road.csv");

    const auto agents = fleet::build_fleet(cfg.run.fleet);
    fleet::RecordStore store(dir / "records");
    const fleet::FleetResults results = fleet::run_cascade(cfg.run.fleet, agents, road, &store);

    {
        io::CsvWriter summary(dir / "summary.csv",
                              {"position", "j", "rmse_mm", "learning_enabled"});
        for (const auto& agent : results.agents) {
            summary.row({static_cast<double>(agent.position), static_cast<double>(agent.j),
                         agent.rmse_mm, cfg.run.fleet.learning_enabled ? 1.0 : 0.0});
        }
    }

    // Persist full logs for the selected positions plus the cascade
    // endpoints (the report stage needs those two).
    fs::create_directories(dir / "logs");
    std::vector<int> keep = cfg.run.log_agents;
    keep.push_back(1);
    keep.push_back(cfg.run.fleet.n_agents);
    for (int position : keep) {
        if (position < 1 || position > static_cast<int>(results.agents.size())) continue;
        const auto& agent = results.agents[static_cast<std::size_t>(position - 1)];
        observer::export_agent_log_csv(agent.log, road,
                                       dir / "logs" /
                                           ("agent_" + std::to_string(position) + ".csv"));
    }

    double mean_rmse = 0.0;
    for (const auto& agent : results.agents) mean_rmse += agent.rmse_mm;
    mean_rmse /= static_cast<double>(results.agents.size());

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    write_metadata(dir, cfg.id, cfg.document, wall);

    json summary;
    summary["run_id"] = cfg.id;
    summary["n_agents"] = cfg.run.fleet.n_agents;
    summary["learning_enabled"] = cfg.run.fleet.learning_enabled;
    summary["mean_rmse_mm"] = mean_rmse;
    summary["first_rmse_mm"] = results.agents.front().rmse_mm;
    summary["last_rmse_mm"] = results.agents.back().rmse_mm;
    run->summary = summary.dump();
    run->dir = dir.string();
    return RS_OK;
}

rs_status run_single_impl(rs_run* run, const char* config_json, const char* overrides_json,
                          const char* out_root) {
    const auto started = std::chrono::steady_clock::now();
    const EffectiveConfig cfg = effective_config(config_json, overrides_json);
    const fs::path dir = prepare_run_dir(out_root, cfg.id);

    const lti::SignalTrace road = roads::generate(cfg.run.road);

    // One vehicle at the configured row; the nominal model still draws its
    // uncertainty factors so observer-side mismatch is representative.
    fleet::FleetConfig one = cfg.run.fleet;
    one.n_agents = 1;
    one.shuffle_enabled = false;
    auto fleet_vec = fleet::build_fleet(one);
    fleet_vec[0].j = cfg.run.agent_j;
    fleet_vec[0].actual = fleet::table_params(one.beta, cfg.run.agent_j);
    fleet_vec[0].pid = fleet::table_pid(one.beta, cfg.run.agent_j);
    {
        // Re-derive the nominal from the configured row with the same draws.
        const double ratios[6] = {
            fleet_vec[0].nominal.m_s / fleet::table_params(one.beta, 1).m_s,
            fleet_vec[0].nominal.m_us / fleet::table_params(one.beta, 1).m_us,
            fleet_vec[0].nominal.k_s / fleet::table_params(one.beta, 1).k_s,
            fleet_vec[0].nominal.k_us / fleet::table_params(one.beta, 1).k_us,
            fleet_vec[0].nominal.c_s / fleet::table_params(one.beta, 1).c_s,
            fleet_vec[0].nominal.c_us / fleet::table_params(one.beta, 1).c_us};
        fleet_vec[0].nominal = fleet_vec[0].actual;
        fleet_vec[0].nominal.m_s *= ratios[0];
        fleet_vec[0].nominal.m_us *= ratios[1];
        fleet_vec[0].nominal.k_s *= ratios[2];
        fleet_vec[0].nominal.k_us *= ratios[3];
        fleet_vec[0].nominal.c_s *= ratios[4];
        fleet_vec[0].nominal.c_us *= ratios[5];
    }

    const fleet::FleetResults results = fleet::run_cascade(one, fleet_vec, road);
    const auto& agent = results.agents.front();
    observer::export_agent_log_csv(agent.log, road, dir / "agent_log.csv");

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    write_metadata(dir, cfg.id, cfg.document, wall);

    json summary;
    summary["run_id"] = cfg.id;
    summary["agent_j"] = cfg.run.agent_j;
    summary["rmse_mm"] = agent.rmse_mm;
    summary["rms_zs_m"] = agent.log.z_s.rms(cfg.run.fleet.transient_skip);
    summary["dob_enabled"] = cfg.run.fleet.dob_enabled;
    run->summary = summary.dump();
    run->dir = dir.string();
    return RS_OK;
}

observer::AgentLog log_from_csv(const fs::path& path, lti::SignalTrace& road_out) {
    const io::CsvTable table = io::read_numeric_csv(path);
    const std::size_t n = table.rows.size();
    if (n < 2 || table.header.size() != 9) {
        throw Error(ErrorCode::MalformedFile, "unexpected agent log shape in " + path.string());
    }
    const double dt = table.rows[1][0] - table.rows[0][0];
    auto column = [&](std::size_t idx, const char* label) {
        lti::SignalTrace trace(dt, std::vector<double>(n), label);
        for (std::size_t k = 0; k < n; ++k) trace.samples[k] = table.rows[k][idx];
        return trace;
    };
    road_out = column(1, "z_r");
    observer::AgentLog log;
    log.z_s = column(2, "z_s");
    log.e = log.z_s * -1.0;
    log.d = column(3, "d");
    log.d_hat_prime = column(4, "d_hat_prime");
    log.d_f = column(5, "d_f");
    log.d_hat = column(6, "d_hat");
    log.z_r_hat = column(7, "z_r_hat");
    log.f_a = column(8, "F_a");
    return log;
}

rs_status run_report_impl(rs_run* run, const char* run_dir) {
    if (run_dir == nullptr || *run_dir == '\0') {
        throw Error(ErrorCode::ConfigError, "run directory is required");
    }
    const fs::path dir(run_dir);
    if (!fs::exists(dir / "summary.csv")) {
        throw Error(ErrorCode::MissingRecord, "no summary.csv under " + dir.string());
    }

    const io::CsvTable summary = io::read_numeric_csv(dir / "summary.csv");
    if (summary.rows.empty()) {
        throw Error(ErrorCode::MalformedFile, "summary.csv holds no agents");
    }

    fleet::FleetResults results;
    results.road = roads::load_road(dir / "road.csv");
    std::vector<double> rmse_series;
    for (const auto& row : summary.rows) {
        fleet::AgentResult agent;
        agent.position = static_cast<int>(row[0]);
        agent.j = static_cast<int>(row[1]);
        agent.rmse_mm = row[2];
        rmse_series.push_back(agent.rmse_mm);
        results.agents.push_back(std::move(agent));
    }

    // Full traces exist only for the persisted positions; those are the ones
    // the figures show. The cascade endpoints are always persisted by the
    // fleet run and the first-vs-last chart requires them.
    std::vector<int> available;
    for (auto& agent : results.agents) {
        const fs::path log_path =
            dir / "logs" / ("agent_" + std::to_string(agent.position) + ".csv");
        if (!fs::exists(log_path)) continue;
        lti::SignalTrace road_echo;
        agent.log = log_from_csv(log_path, road_echo);
        available.push_back(agent.position);
    }
    const int last = results.agents.back().position;
    if (std::find(available.begin(), available.end(), 1) == available.end() ||
        std::find(available.begin(), available.end(), last) == available.end()) {
        throw Error(ErrorCode::MissingRecord,
                    "first/last agent logs are missing under " + dir.string());
    }

    report::emit_figures(results, dir / "figures", available);

    json summary_json;
    summary_json["run_dir"] = dir.string();
    summary_json["n_agents"] = results.agents.size();
    summary_json["figures_dir"] = (dir / "figures").string();
    try {
        const report::ConvergenceFit fit = report::convergence_fit(rmse_series);
        summary_json["fit"] = {{"floor_mm", fit.floor_mm}, {"rate", fit.rate}, {"r2", fit.r2}};
    } catch (const Error& e) {
        if (e.code() != ErrorCode::DegenerateFit && e.code() != ErrorCode::InvalidParams) throw;
        summary_json["fit"] = nullptr;  // too short or flat to fit
    }
    run->summary = summary_json.dump();
    run->dir = dir.string();
    return RS_OK;
}

}  // namespace

extern "C" {

const char* rs_version(void) {
    return "1.0.0";
}

rs_run* rs_run_new(void) {
    return new rs_run();
}

void rs_run_free(rs_run* run) {
    delete run;
}

rs_status rs_run_fleet(rs_run* run, const char* config_json, const char* overrides_json,
                       const char* out_root) {
    if (run == nullptr) return RS_ERR_INVALID_ARGUMENT;
    run->error.clear();
    try {
        return run_fleet_impl(run, config_json, overrides_json, out_root);
    } catch (const Error& e) {
        return finish_with_error(run, e);
    } catch (const std::exception& e) {
        run->error = e.what();
        return RS_ERR_INTERNAL;
    }
}

rs_status rs_run_single(rs_run* run, const char* config_json, const char* overrides_json,
                        const char* out_root) {
    if (run == nullptr) return RS_ERR_INVALID_ARGUMENT;
    run->error.clear();
    try {
        return run_single_impl(run, config_json, overrides_json, out_root);
    } catch (const Error& e) {
        return finish_with_error(run, e);
    } catch (const std::exception& e) {
        run->error = e.what();
        return RS_ERR_INTERNAL;
    }
}

rs_status rs_run_report(rs_run* run, const char* run_dir) {
    if (run == nullptr) return RS_ERR_INVALID_ARGUMENT;
    run->error.clear();
    try {
        return run_report_impl(run, run_dir);
    } catch (const Error& e) {
        return finish_with_error(run, e);
    } catch (const std::exception& e) {
        run->error = e.what();
        return RS_ERR_INTERNAL;
    }
}

const char* rs_run_error(const rs_run* run) {
    return run ? run->error.c_str() : "null handle";
}

const char* rs_run_dir(const rs_run* run) {
    return run ? run->dir.c_str() : "";
}

const char* rs_run_summary_json(const rs_run* run) {
    return run ? run->summary.c_str() : "";
}

}  // extern "C"
