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

#include "core/lti/signal_trace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/errors.hpp"

namespace roadsense::lti {

namespace {

void require_compatible(const SignalTrace& a, const SignalTrace& b) {
    if (a.samples.size() != b.samples.size() || a.dt != b.dt) {
        throw Error(ErrorCode::DimensionMismatch,
                    "traces disagree in dt or length (" + std::to_string(a.samples.size()) + "@" +
                        std::to_string(a.dt) + " vs " + std::to_string(b.samples.size()) + "@" +
                        std::to_string(b.dt) + ")");
    }
}

}  // namespace

SignalTrace SignalTrace::zeros(double dt, std::size_t n, std::string label) {
    return SignalTrace(dt, std::vector<double>(n, 0.0), std::move(label));
}

std::size_t SignalTrace::skip_index(double skip_s) const {
    if (skip_s <= 0.0) return 0;
    const auto idx = static_cast<std::size_t>(std::ceil(skip_s / dt - 1e-9));
    return std::min(idx, samples.size());
}

double SignalTrace::rms(double skip_s) const {
    const std::size_t start = skip_index(skip_s);
    if (start >= samples.size()) return 0.0;
    double acc = 0.0;
    for (std::size_t i = start; i < samples.size(); ++i) acc += samples[i] * samples[i];
    return std::sqrt(acc / static_cast<double>(samples.size() - start));
}

double SignalTrace::l2_norm(double skip_s) const {
    const std::size_t start = skip_index(skip_s);
    double acc = 0.0;
    for (std::size_t i = start; i < samples.size(); ++i) acc += samples[i] * samples[i];
    return std::sqrt(acc);
}

double SignalTrace::max_abs() const {
    double m = 0.0;
    for (double v : samples) m = std::max(m, std::abs(v));
    return m;
}

bool SignalTrace::all_finite() const {
    return std::all_of(samples.begin(), samples.end(),
                       [](double v) { return std::isfinite(v); });
}

SignalTrace operator+(const SignalTrace& a, const SignalTrace& b) {
    require_compatible(a, b);
    SignalTrace out = a;
    for (std::size_t i = 0; i < out.samples.size(); ++i) out.samples[i] += b.samples[i];
    return out;
}

SignalTrace operator-(const SignalTrace& a, const SignalTrace& b) {
    require_compatible(a, b);
    SignalTrace out = a;
    for (std::size_t i = 0; i < out.samples.size(); ++i) out.samples[i] -= b.samples[i];
    return out;
}

SignalTrace operator*(const SignalTrace& a, double scalar) {
    SignalTrace out = a;
    for (double& v : out.samples) v *= scalar;
    return out;
}

double relative_l2_error(const SignalTrace& a, const SignalTrace& b, double skip_s) {
    require_compatible(a, b);
    const std::size_t start = a.skip_index(skip_s);
    double num = 0.0, den = 0.0;
    for (std::size_t i = start; i < a.samples.size(); ++i) {
        const double d = a.samples[i] - b.samples[i];
        num += d * d;
        den += b.samples[i] * b.samples[i];
    }
    if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return std::sqrt(num / den);
}

SignalTrace central_difference(const SignalTrace& x) {
    const std::size_t n = x.samples.size();
    SignalTrace out = SignalTrace::zeros(x.dt, n, x.label + "_dot");
    if (n < 2) return out;
    const double inv2dt = 1.0 / (2.0 * x.dt);
    out.samples[0] = (x.samples[1] - x.samples[0]) / x.dt;
    for (std::size_t i = 1; i + 1 < n; ++i)
        out.samples[i] = (x.samples[i + 1] - x.samples[i - 1]) * inv2dt;
    out.samples[n - 1] = (x.samples[n - 1] - x.samples[n - 2]) / x.dt;
    return out;
}

}  // namespace roadsense::lti
