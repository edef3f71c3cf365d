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

#include <cstdint>
#include <filesystem>
#include <string>

#include "core/lti/signal_trace.hpp"

namespace roadsense::roads {

enum class RoadKind { sinusoid, iso_class_c, from_file };

struct RoadSpec {
    RoadKind kind = RoadKind::sinusoid;
    double amplitude = 0.015;  // m, sinusoid peak
    double frequency = 5.0;    // rad/s, sinusoid
    std::uint64_t seed = 1;    // stochastic profile
    double velocity = 10.0;    // m/s, converts spatial to time domain
    double duration = 10.0;    // s
    double dt = 1e-3;          // s
    std::string path;          // from_file

    // Stochastic profile shape: spatial PSD g(n) = gn0 * (n/n0)^-2 over
    // [n_min, n_max] cycles/m, class-C midpoint roughness by default.
    double iso_gn0 = 256e-6;  // m^3
    double iso_n0 = 0.1;      // cycles/m
    double n_min = 0.01;      // cycles/m
    double n_max = 10.0;      // cycles/m

    void validate() const;
};

/// z_r(t) = A sin(w t).
lti::SignalTrace gen_sinusoid(const RoadSpec& spec);

/// Stationary rough profile synthesized as superposed cosines with uniform
/// random phases drawn from the seed; spatial PSD follows the inverse-square
/// law with the configured roughness, converted to the time domain through
/// the constant velocity. Bit-identical for identical seeds.
lti::SignalTrace gen_iso_class_c(const RoadSpec& spec);

/// Analytic RMS of the synthesized stochastic profile (from the PSD).
double iso_class_c_rms(const RoadSpec& spec);

/// Reads CSV with header t,z_r and uniform time spacing. Throws
/// MalformedFile or NonuniformSampling.
lti::SignalTrace load_road(const std::filesystem::path& path);

/// Writes CSV with header t,z_r (SI units).
void save_road_csv(const lti::SignalTrace& road, const std::filesystem::path& path);

/// Dispatch on spec.kind.
lti::SignalTrace generate(const RoadSpec& spec);

}  // namespace roadsense::roads
