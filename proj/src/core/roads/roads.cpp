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

#include "core/roads/roads.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "core/errors.hpp"

namespace roadsense::roads {

using lti::SignalTrace;

void RoadSpec::validate() const {
    if (!(duration > 0.0)) throw Error(ErrorCode::InvalidParams, "duration must be positive");
    if (!(dt > 0.0)) throw Error(ErrorCode::InvalidParams, "dt must be positive");
    if (amplitude < 0.0) throw Error(ErrorCode::InvalidParams, "amplitude must be nonnegative");
    if (kind == RoadKind::iso_class_c) {
        if (!(velocity > 0.0)) throw Error(ErrorCode::InvalidParams, "velocity must be positive");
        if (!(n_min > 0.0) || !(n_max > n_min))
            throw Error(ErrorCode::InvalidParams, "spatial band must satisfy 0 < n_min < n_max");
    }
}

namespace {

std::size_t sample_count(const RoadSpec& spec) {
    return static_cast<std::size_t>(std::llround(spec.duration / spec.dt));
}

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

SignalTrace gen_sinusoid(const RoadSpec& spec) {
    spec.validate();
    const std::size_t n = sample_count(spec);
    SignalTrace out = SignalTrace::zeros(spec.dt, n, "z_r");
    for (std::size_t k = 0; k < n; ++k) {
        out.samples[k] =
            spec.amplitude * std::sin(spec.frequency * spec.dt * static_cast<double>(k));
    }
    return out;
}

SignalTrace gen_iso_class_c(const RoadSpec& spec) {
    spec.validate();
    const std::size_t n = sample_count(spec);
    SignalTrace out = SignalTrace::zeros(spec.dt, n, "z_r");

    // Linear spatial-frequency grid; component amplitude sqrt(2 g(n) dn).
    const int bands = 1000;
    const double dn = (spec.n_max - spec.n_min) / bands;
    std::mt19937_64 rng(spec.seed);
    std::vector<double> amp(bands), omega(bands), phase(bands);
    for (int i = 0; i < bands; ++i) {
        const double ni = spec.n_min + (i + 0.5) * dn;
        const double g = spec.iso_gn0 * std::pow(ni / spec.iso_n0, -2.0);
        amp[i] = std::sqrt(2.0 * g * dn);
        omega[i] = 2.0 * std::numbers::pi * ni * spec.velocity;
        phase[i] = 2.0 * std::numbers::pi * uniform01(rng);
    }
    for (std::size_t k = 0; k < n; ++k) {
        const double t = spec.dt * static_cast<double>(k);
        double z = 0.0;
        for (int i = 0; i < bands; ++i) z += amp[i] * std::cos(omega[i] * t + phase[i]);
        out.samples[k] = z;
    }
    return out;
}

double iso_class_c_rms(const RoadSpec& spec) {
    const int bands = 1000;
    const double dn = (spec.n_max - spec.n_min) / bands;
    double var = 0.0;
    for (int i = 0; i < bands; ++i) {
        const double ni = spec.n_min + (i + 0.5) * dn;
        var += spec.iso_gn0 * std::pow(ni / spec.iso_n0, -2.0) * dn;
    }
    return std::sqrt(var);
}

SignalTrace load_road(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::MalformedFile, "cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line.rfind("t,z_r", 0) != 0) {
        throw Error(ErrorCode::MalformedFile, "expected header t,z_r in " + path.string());
    }
    std::vector<double> t, z;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream row(line);
        double ti, zi;
        char comma;
        if (!(row >> ti >> comma >> zi) || comma != ',') {
            throw Error(ErrorCode::MalformedFile,
                        "bad row " + std::to_string(line_no) + " in " + path.string());
        }
        t.push_back(ti);
        z.push_back(zi);
    }
    if (t.size() < 2) {
        throw Error(ErrorCode::MalformedFile, "need at least two samples to infer dt");
    }
    const double dt = t[1] - t[0];
    if (!(dt > 0.0)) throw Error(ErrorCode::NonuniformSampling, "time must be increasing");
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (std::abs(t[i] - t[0] - dt * static_cast<double>(i)) > 1e-6 * dt) {
            throw Error(ErrorCode::NonuniformSampling,
                        "sample " + std::to_string(i) + " deviates from uniform spacing");
        }
    }
    return SignalTrace(dt, std::move(z), "z_r");
}

void save_road_csv(const SignalTrace& road, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    out << "t,z_r\n";
    out.precision(17);
    for (std::size_t k = 0; k < road.size(); ++k) {
        out << road.dt * static_cast<double>(k) << ',' << road.samples[k] << '\n';
    }
}

SignalTrace generate(const RoadSpec& spec) {
    switch (spec.kind) {
        case RoadKind::sinusoid:
            return gen_sinusoid(spec);
        case RoadKind::iso_class_c:
            return gen_iso_class_c(spec);
        case RoadKind::from_file: {
            SignalTrace trace = load_road(spec.path);
            if (std::abs(trace.dt - spec.dt) > 1e-12 * spec.dt) {
                throw Error(ErrorCode::ConfigError,
                            "road file dt " + std::to_string(trace.dt) +
                                " does not match configured dt " + std::to_string(spec.dt));
            }
            return trace;
        }
    }
    throw Error(ErrorCode::InvalidParams, "unknown road kind");
}

}  // namespace roadsense::roads
