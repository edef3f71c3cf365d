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

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "core/lti/signal_trace.hpp"

namespace roadsense::fleet {
struct FleetResults;
}

namespace roadsense::report {

/// Root-mean-square difference between two aligned traces after discarding
/// the first `skip_s` seconds, reported in millimeters.
double rmse_mm(const lti::SignalTrace& estimate, const lti::SignalTrace& truth, double skip_s);

struct ConvergenceFit {
    double floor_mm = 0.0;
    double rate = 0.0;  // per-agent factor
    double r2 = 0.0;
};

/// Least-squares fit of series[k] ~ floor + c * rate^k. Rate is searched on
/// (0, 1); floor and c come from the inner linear problem. Throws
/// DegenerateFit for constant series.
ConvergenceFit convergence_fit(std::span<const double> rmse_series);

/// Emits figure-ready CSV data plus self-contained SVG line charts:
///   estimate_vs_truth_agent_<p>.csv / .svg for the selected positions,
///   rmse_vs_agent.csv / .svg,
///   first_last_error.csv / .svg,
///   learning_signal_agent_<p>.csv / .svg.
/// Selected positions outside the run are ignored.
void emit_figures(const fleet::FleetResults& results, const std::filesystem::path& out_dir,
                  std::span<const int> selected_positions);

/// Minimal SVG polyline chart; fixed 800x500 canvas.
void write_svg_chart(const std::filesystem::path& path, const std::string& title,
                     const std::vector<std::pair<std::string, std::vector<double>>>& series,
                     const std::vector<double>& x);

}  // namespace roadsense::report
