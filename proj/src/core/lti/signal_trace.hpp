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

#include <cstddef>
#include <string>
#include <vector>

namespace roadsense::lti {

/// Uniformly sampled real-valued time series.
struct SignalTrace {
    double dt = 1e-3;
    std::vector<double> samples;
    std::string label;

    SignalTrace() = default;
    SignalTrace(double dt_, std::vector<double> samples_, std::string label_ = {})
        : dt(dt_), samples(std::move(samples_)), label(std::move(label_)) {}

    static SignalTrace zeros(double dt, std::size_t n, std::string label = {});

    std::size_t size() const { return samples.size(); }
    double duration() const { return dt * static_cast<double>(samples.size()); }
    double operator[](std::size_t i) const { return samples[i]; }

    /// Index of the first sample at or after `skip_s` seconds.
    std::size_t skip_index(double skip_s) const;

    double rms(double skip_s = 0.0) const;
    double l2_norm(double skip_s = 0.0) const;
    double max_abs() const;
    bool all_finite() const;
};

/// Element-wise arithmetic; throws DimensionMismatch unless dt and length
/// agree.
SignalTrace operator+(const SignalTrace& a, const SignalTrace& b);
SignalTrace operator-(const SignalTrace& a, const SignalTrace& b);
SignalTrace operator*(const SignalTrace& a, double scalar);

/// Relative L2 distance ||a-b|| / ||b|| evaluated from `skip_s` onward.
double relative_l2_error(const SignalTrace& a, const SignalTrace& b, double skip_s = 0.0);

/// Second-order central difference (one-sided at the ends); the project-wide
/// discrete differentiator.
SignalTrace central_difference(const SignalTrace& x);

}  // namespace roadsense::lti
