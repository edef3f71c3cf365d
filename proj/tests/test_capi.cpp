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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <string>

#include "roadsense/roadsense.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunHandle {
    rs_run* ptr = rs_run_new();
    ~RunHandle() { rs_run_free(ptr); }
};

fs::path fresh_root(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    return dir;
}

const char* kTinyFleet = R"({"n_agents": 3, "duration": 3.0})";

}  // namespace

TEST_CASE("version string is present") {
    CHECK(std::string(rs_version()) == "1.0.0");
}

TEST_CASE("fleet run produces the documented directory layout") {
    RunHandle run;
    const fs::path root = fresh_root("roadsense_capi_fleet");
    REQUIRE(rs_run_fleet(run.ptr, kTinyFleet, nullptr, root.c_str()) == RS_OK);
    CHECK(std::string(rs_run_error(run.ptr)).empty());

    const fs::path dir(rs_run_dir(run.ptr));
    CHECK(fs::exists(dir / "summary.csv"));
    CHECK(fs::exists(dir / "road.csv"));
    CHECK(fs::exists(dir / "metadata.json"));
    CHECK(fs::exists(dir / "records" / "agent_1.json"));
    CHECK(fs::exists(dir / "records" / "agent_3.json"));
    CHECK(fs::exists(dir / "logs" / "agent_1.csv"));
    CHECK(fs::exists(dir / "logs" / "agent_3.csv"));

    const json summary = json::parse(std::string(rs_run_summary_json(run.ptr)));
    CHECK(summary.at("n_agents").get<int>() == 3);
    CHECK(summary.at("mean_rmse_mm").get<double>() > 0.0);
    fs::remove_all(root);
}

TEST_CASE("report over a completed run emits figures and a fit") {
    RunHandle run;
    const fs::path root = fresh_root("roadsense_capi_report");
    const char* cfg = R"({"n_agents": 12, "duration": 3.0})";
    REQUIRE(rs_run_fleet(run.ptr, cfg, nullptr, root.c_str()) == RS_OK);
    const std::string dir = rs_run_dir(run.ptr);

    RunHandle reporter;
    REQUIRE(rs_run_report(reporter.ptr, dir.c_str()) == RS_OK);
    const json summary = json::parse(std::string(rs_run_summary_json(reporter.ptr)));
    CHECK(fs::exists(fs::path(dir) / "figures" / "rmse_vs_agent.csv"));
    CHECK(fs::exists(fs::path(dir) / "figures" / "first_last_error.svg"));
    REQUIRE(summary.at("fit").is_object());
    const double rate = summary.at("fit").at("rate").get<double>();
    CHECK(rate > 0.0);
    CHECK(rate < 1.0);
    fs::remove_all(root);
}

TEST_CASE("report on an empty directory is a missing-record error") {
    RunHandle run;
    const fs::path root = fresh_root("roadsense_capi_empty");
    fs::create_directories(root);
    CHECK(rs_run_report(run.ptr, root.c_str()) == RS_ERR_MISSING_RECORD);
    CHECK(!std::string(rs_run_error(run.ptr)).empty());
    fs::remove_all(root);
}

TEST_CASE("bad configuration surfaces as a config error with a message") {
    RunHandle run;
    const fs::path root = fresh_root("roadsense_capi_bad");
    CHECK(rs_run_fleet(run.ptr, R"({"alphaa": 0.5})", nullptr, root.c_str()) == RS_ERR_CONFIG);
    CHECK(std::string(rs_run_error(run.ptr)).find("alphaa") != std::string::npos);
    CHECK(rs_run_fleet(run.ptr, "{not json", nullptr, root.c_str()) == RS_ERR_CONFIG);
    CHECK(rs_run_fleet(run.ptr, kTinyFleet, nullptr, "") == RS_ERR_CONFIG);
    fs::remove_all(root);
}

TEST_CASE("single-vehicle run writes its log and scores the estimate") {
    RunHandle run;
    const fs::path root = fresh_root("roadsense_capi_single");
    const char* cfg = R"({"duration": 3.0, "agent_j": 45})";
    REQUIRE(rs_run_single(run.ptr, cfg, nullptr, root.c_str()) == RS_OK);
    const fs::path dir(rs_run_dir(run.ptr));
    CHECK(fs::exists(dir / "agent_log.csv"));
    const json summary = json::parse(std::string(rs_run_summary_json(run.ptr)));
    CHECK(summary.at("agent_j").get<int>() == 45);
    CHECK(summary.at("rmse_mm").get<double>() > 0.0);
    fs::remove_all(root);
}

TEST_CASE("identical fleet invocations produce byte-identical summaries") {
    RunHandle a, b;
    const fs::path root_a = fresh_root("roadsense_capi_det_a");
    const fs::path root_b = fresh_root("roadsense_capi_det_b");
    REQUIRE(rs_run_fleet(a.ptr, kTinyFleet, nullptr, root_a.c_str()) == RS_OK);
    REQUIRE(rs_run_fleet(b.ptr, kTinyFleet, nullptr, root_b.c_str()) == RS_OK);
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string((std::istreambuf_iterator<char>(in)),
                           std::istreambuf_iterator<char>());
    };
    const std::string sa = slurp(fs::path(rs_run_dir(a.ptr)) / "summary.csv");
    CHECK(!sa.empty());
    CHECK(sa == slurp(fs::path(rs_run_dir(b.ptr)) / "summary.csv"));
    fs::remove_all(root_a);
    fs::remove_all(root_b);
}

TEST_CASE("null handles are rejected without crashing") {
    CHECK(rs_run_fleet(nullptr, nullptr, nullptr, "x") == RS_ERR_INVALID_ARGUMENT);
    CHECK(std::string(rs_run_error(nullptr)) == "null handle");
    CHECK(std::string(rs_run_dir(nullptr)).empty());
    rs_run_free(nullptr);  // must be a no-op
}
