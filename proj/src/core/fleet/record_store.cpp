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

#include "core/fleet/record_store.hpp"

#include <json.hpp>
#include <algorithm>
#include <fstream>

#include "core/errors.hpp"

namespace roadsense::fleet {

namespace {

using nlohmann::json;

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : data) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

std::string checksum_hex(const json& body) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(body.dump())));
    return buf;
}

json trace_to_json(const lti::SignalTrace& trace) {
    return json{{"dt", trace.dt}, {"label", trace.label}, {"samples", trace.samples}};
}

lti::SignalTrace trace_from_json(const json& j) {
    return lti::SignalTrace(j.at("dt").get<double>(), j.at("samples").get<std::vector<double>>(),
                            j.at("label").get<std::string>());
}

json record_body(const ilc::SharedRecord& record) {
    return json{
        {"agent_index", record.agent_index},
        {"e_trace", trace_to_json(record.e_trace)},
        {"df_trace", trace_to_json(record.df_trace)},
        {"nominal",
         {{"m_s", record.nominal.m_s},
          {"m_us", record.nominal.m_us},
          {"k_s", record.nominal.k_s},
          {"k_us", record.nominal.k_us},
          {"c_s", record.nominal.c_s},
          {"c_us", record.nominal.c_us}}},
        {"pid", {{"kp", record.pid.kp}, {"ki", record.pid.ki}, {"kd", record.pid.kd}}},
        {"q", {{"cutoff", record.q.cutoff}, {"order", record.q.order}}},
    };
}

}  // namespace

RecordStore::RecordStore(std::filesystem::path directory) : directory_(std::move(directory)) {
    std::error_code ec;
    std::filesystem::create_directories(directory_, ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot create " + directory_.string());
}

std::filesystem::path RecordStore::path_for(int position) const {
    return directory_ / ("agent_" + std::to_string(position) + ".json");
}

void RecordStore::put(const ilc::SharedRecord& record) {
    const auto path = path_for(record.agent_index);
    if (std::filesystem::exists(path)) {
        throw Error(ErrorCode::IoError,
                    "record for position " + std::to_string(record.agent_index) +
                        " already exists; records are immutable");
    }
    json body = record_body(record);
    json wrapper{{"record", body}, {"checksum", checksum_hex(body)}};
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    out << wrapper.dump() << '\n';
}

std::optional<ilc::SharedRecord> RecordStore::get(int position) const {
    const auto path = path_for(position);
    std::ifstream in(path);
    if (!in) return std::nullopt;
    json wrapper;
    try {
        in >> wrapper;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::CorruptRecord, path.string() + ": " + e.what());
    }
    try {
        const json& body = wrapper.at("record");
        if (wrapper.at("checksum").get<std::string>() != checksum_hex(body)) {
            throw Error(ErrorCode::CorruptRecord, "checksum mismatch in " + path.string());
        }
        ilc::SharedRecord record;
        record.agent_index = body.at("agent_index").get<int>();
        record.e_trace = trace_from_json(body.at("e_trace"));
        record.df_trace = trace_from_json(body.at("df_trace"));
        const json& nom = body.at("nominal");
        record.nominal = vehicle::VehicleParams{
            nom.at("m_s").get<double>(),  nom.at("m_us").get<double>(),
            nom.at("k_s").get<double>(),  nom.at("k_us").get<double>(),
            nom.at("c_s").get<double>(),  nom.at("c_us").get<double>()};
        const json& pid = body.at("pid");
        record.pid = vehicle::PidGains{pid.at("kp").get<double>(), pid.at("ki").get<double>(),
                                       pid.at("kd").get<double>()};
        const json& q = body.at("q");
        record.q = observer::QFilterSpec{q.at("cutoff").get<double>(), q.at("order").get<int>()};
        return record;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::CorruptRecord, path.string() + ": " + e.what());
    }
}

std::optional<ilc::SharedRecord> RecordStore::predecessor(int position) const {
    if (position <= 1) return std::nullopt;
    auto record = get(position - 1);
    if (!record) {
        throw Error(ErrorCode::MissingRecord,
                    "no record for position " + std::to_string(position - 1));
    }
    return record;
}

std::vector<int> RecordStore::list() const {
    std::vector<int> positions;
    for (const auto& entry : std::filesystem::directory_iterator(directory_)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("agent_", 0) == 0 && entry.path().extension() == ".json") {
            positions.push_back(std::stoi(name.substr(6)));
        }
    }
    std::sort(positions.begin(), positions.end());
    return positions;
}

}  // namespace roadsense::fleet
