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

// Command-line front end. Flag parsing and pretty-printing happen here;
// everything else goes through the public C interface of libroadsense.

#include <CLI11.hpp>
#include <json.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "roadsense/roadsense.h"

namespace {

using nlohmann::json;

struct CommonFlags {
    std::string config_path;
    std::string out_root;
    std::string road;
    int agents = -1;
    double alpha = -1.0;
    double uncertainty = -1.0;
    long long seed_order = -1;
    long long seed_uncertainty = -1;
    bool no_learning = false;
    bool no_dob = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "JSON configuration file");
    cmd->add_option("--out", flags.out_root,
                    "output root directory (default: $ROADSENSE_OUT or ./out)");
    cmd->add_option("--agents", flags.agents, "number of vehicles in the cascade");
    cmd->add_option("--alpha", flags.alpha, "designed per-vehicle error reduction factor");
    cmd->add_option("--uncertainty", flags.uncertainty, "nominal-model uncertainty bound");
    cmd->add_option("--road", flags.road, "road profile: sinusoid | iso-c | file:PATH");
    cmd->add_option("--seed-order", flags.seed_order, "cascade order shuffle seed");
    cmd->add_option("--seed-uncertainty", flags.seed_uncertainty, "uncertainty draw seed");
    cmd->add_flag("--no-learning", flags.no_learning, "disable the learning signal");
    cmd->add_flag("--no-dob", flags.no_dob, "disable the disturbance observer");
}

std::string read_config_file(const std::string& path) {
    if (path.empty()) return {};
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot read config file '" << path << "'\n";
        std::exit(2);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string overrides_from_flags(const CommonFlags& flags) {
    json overrides = json::object();
    if (flags.agents >= 0) overrides["n_agents"] = flags.agents;
    if (flags.alpha >= 0.0) overrides["alpha"] = flags.alpha;
    if (flags.uncertainty >= 0.0) overrides["uncertainty_bound"] = flags.uncertainty;
    if (flags.seed_order >= 0) overrides["order_seed"] = flags.seed_order;
    if (flags.seed_uncertainty >= 0) overrides["uncertainty_seed"] = flags.seed_uncertainty;
    if (flags.no_learning) overrides["learning_enabled"] = false;
    if (flags.no_dob) overrides["dob_enabled"] = false;
    if (!flags.road.empty()) {
        if (flags.road == "sinusoid") {
            overrides["road"]["kind"] = "sinusoid";
        } else if (flags.road == "iso-c") {
            overrides["road"]["kind"] = "iso_class_c";
        } else if (flags.road.rfind("file:", 0) == 0) {
            overrides["road"]["kind"] = "from_file";
            overrides["road"]["path"] = flags.road.substr(5);
        } else {
            std::cerr << "error: unknown --road '" << flags.road
                      << "' (expected sinusoid, iso-c, or file:PATH)\n";
            std::exit(2);
        }
    }
    return overrides.dump();
}

std::string resolve_out_root(const CommonFlags& flags) {
    if (!flags.out_root.empty()) return flags.out_root;
    if (const char* env = std::getenv("ROADSENSE_OUT"); env && *env) return env;
    return "out";
}

int exit_code_for(rs_status status) {
    switch (status) {
        case RS_OK: return 0;
        case RS_ERR_CONFIG: return 2;
        case RS_ERR_UNSTABLE_LOOP: return 3;
        case RS_ERR_IO: return 4;
        case RS_ERR_MISSING_RECORD:
        case RS_ERR_CORRUPT_RECORD: return 5;
        default: return 1;
    }
}

void print_summary(const rs_run* run) {
    const std::string text = rs_run_summary_json(run);
    if (text.empty()) return;
    const json summary = json::parse(text, nullptr, false);
    if (summary.is_discarded()) return;
    for (const auto& [key, value] : summary.items()) {
        if (key == "fit" && value.is_object()) {
            std::cout << "fitted_rate=" << value.at("rate").get<double>()
                      << " fitted_floor_mm=" << value.at("floor_mm").get<double>()
                      << " fit_r2=" << value.at("r2").get<double>() << '\n';
        } else {
            std::cout << key << '=' << value.dump() << '\n';
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"collaborative road-profile estimation over a vehicle cascade"};
    app.require_subcommand(1);

    CommonFlags fleet_flags, simulate_flags;
    std::string report_dir;

    CLI::App* fleet_cmd = app.add_subcommand("fleet", "run the full learning cascade");
    add_common_flags(fleet_cmd, fleet_flags);

    CLI::App* simulate_cmd =
        app.add_subcommand("simulate", "run a single vehicle on the configured road");
    add_common_flags(simulate_cmd, simulate_flags);

    CLI::App* report_cmd =
        app.add_subcommand("report", "emit figure data and fit a convergence curve");
    report_cmd->add_option("run_dir", report_dir, "completed fleet run directory")->required();

    CLI11_PARSE(app, argc, argv);

    std::unique_ptr<rs_run, decltype(&rs_run_free)> run(rs_run_new(), &rs_run_free);
    rs_status status = RS_OK;

    if (fleet_cmd->parsed()) {
        const std::string config = read_config_file(fleet_flags.config_path);
        status = rs_run_fleet(run.get(), config.empty() ? nullptr : config.c_str(),
                              overrides_from_flags(fleet_flags).c_str(),
                              resolve_out_root(fleet_flags).c_str());
    } else if (simulate_cmd->parsed()) {
        const std::string config = read_config_file(simulate_flags.config_path);
        status = rs_run_single(run.get(), config.empty() ? nullptr : config.c_str(),
                               overrides_from_flags(simulate_flags).c_str(),
                               resolve_out_root(simulate_flags).c_str());
    } else if (report_cmd->parsed()) {
        status = rs_run_report(run.get(), report_dir.c_str());
    }

    if (status != RS_OK) {
        std::cerr << "error: " << rs_run_error(run.get()) << '\n';
        return exit_code_for(status);
    }
    std::cout << "run_dir=" << rs_run_dir(run.get()) << '\n';
    print_summary(run.get());
    return 0;
}
