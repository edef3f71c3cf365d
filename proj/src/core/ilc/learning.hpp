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
#include <vector>

#include "core/lti/signal_trace.hpp"
#include "core/lti/transfer_function.hpp"
#include "core/observer/dob.hpp"
#include "core/vehicle/quarter_car.hpp"

namespace roadsense::ilc {

/// What one vehicle publishes for its successor: its tracking-error trace,
/// its learning-signal trace, and the nominal dynamics it designed against.
/// Deliberately carries no actual-plant information; filter synthesis can
/// only ever see nominal models.
struct SharedRecord {
    int agent_index = 1;  // cascade position, 1-based
    lti::SignalTrace e_trace;
    lti::SignalTrace df_trace;
    vehicle::VehicleParams nominal;
    vehicle::PidGains pid;
    observer::QFilterSpec q;
};

/// The pair of learning filters plus the designed contraction factor and the
/// static gain ratio they were built with.
struct LearningFilters {
    lti::TransferFunction l1;
    lti::TransferFunction l2;
    double alpha = 0.5;
    double eta = 1.0;
};

/// Static-gain approximation of the ratio between two vehicles'
/// road-to-equivalent-force maps: the ratio of their dc gains, i.e. the
/// nominal suspension stiffness ratio.
double compute_eta(const vehicle::VehicleParams& nominal_current,
                   const vehicle::VehicleParams& nominal_previous);

/// First learning filter:
///   L1 = Gd_prev^-1 [ alpha (1 - W_prev) - eta (1 - W_cur) ]
/// with every constituent built from nominal models (Gd_prev and W_prev from
/// the predecessor's record, W_cur from the current agent's nominal loop).
/// The result is improper in general; apply it offline.
lti::TransferFunction synth_l1(const SharedRecord& prev,
                               const vehicle::VehicleParams& nominal_current,
                               const vehicle::PidGains& pid_current,
                               const observer::QFilterSpec& q_current, double alpha);

/// Second learning filter: L2 = alpha + L1 * Gf_prev.
lti::TransferFunction synth_l2(const lti::TransferFunction& l1, const SharedRecord& prev,
                               double alpha);

/// Convenience bundle of compute_eta + synth_l1 + synth_l2.
LearningFilters synth_filters(const SharedRecord& prev,
                              const vehicle::VehicleParams& nominal_current,
                              const vehicle::PidGains& pid_current,
                              const observer::QFilterSpec& q_current, double alpha);

struct OfflineFilterOptions {
    /// Real, zero-phase roll-off applied to improper filters above this
    /// frequency. Tames the unbounded high-frequency growth of the
    /// plant-inverse compositions and confines learning to the band where
    /// the static-gain ratio approximation holds for the vehicle pair at
    /// hand (it collapses near the wheel-hop zeros).
    double rolloff_cutoff = 15.5;  // rad/s
    int rolloff_order = 8;
};

/// Pair-adapted learning band: a fraction of the lower of the two nominal
/// wheel-hop zero frequencies sqrt(k_us/m_us), capped at `cap`. Similar
/// vehicles keep their ratio flat far beyond the fleet-wide conservative
/// cutoff, so learning between them may reach deeper into the band.
double learnable_band(const vehicle::VehicleParams& nominal_a,
                      const vehicle::VehicleParams& nominal_b, double fraction = 0.75,
                      double cap = 28.0);

/// Zero-phase frequency-domain application of a rational filter to a
/// recorded trace: FFT of the zero-padded input (power-of-two length at
/// least twice the trace), pointwise multiplication by f(i w) -- rolled off
/// per the options when f is improper -- and inverse FFT. Exactly linear in
/// the input. Bins landing on imaginary-axis poles (the integrating
/// controller puts one at the origin) are notched to zero. Throws
/// UnstableInverse when f has right-half-plane poles.
lti::SignalTrace apply_filter_offline(const lti::TransferFunction& f, const lti::SignalTrace& x,
                                      const OfflineFilterOptions& options = {});

/// d_f = L1{e_prev} + L2{df_prev}. The first agent has no predecessor and
/// uses the all-zero trace.
lti::SignalTrace make_learning_signal(const LearningFilters& filters, const SharedRecord& prev,
                                      const OfflineFilterOptions& options = {});

enum class ModelSelection { nominal, actual };

struct DiagnosticsReport {
    std::vector<double> omega;
    std::vector<double> te1_minus_alpha_abs;
    std::vector<double> te2_abs;
    double max_te1_minus_alpha = 0.0;
    double max_te2 = 0.0;
};

struct ContractionDiagnostics {
    lti::TransferFunction te1;
    lti::TransferFunction te2;
    DiagnosticsReport report;
};

/// Builds the error-propagation operators between consecutive agents
///   Te1 = (1 - W_cur)/(1 - W_prev) * delta_cur/delta_prev
///         + L1 Gd_prev / (1 - W_prev)
///   Te2 = Te1 - L2 + L1 Gf_prev
/// and sweeps |Te1 - alpha| and |Te2| over [0.1, 20] rad/s. `unhatted`
/// selects whether the non-designed constituents use the actual plants
/// (default) or the nominal ones.
ContractionDiagnostics contraction_diagnostics(const observer::AgentLoop& prev,
                                               const observer::AgentLoop& current,
                                               const LearningFilters& filters,
                                               ModelSelection unhatted = ModelSelection::actual);

/// Filter coefficients (ascending powers) as JSON for inspection.
void export_filters_json(const LearningFilters& filters, const std::filesystem::path& path);

/// Diagnostics sweep as CSV: omega, |Te1 - alpha|, |Te2|.
void export_diagnostics_csv(const DiagnosticsReport& report, const std::filesystem::path& path);

}  // namespace roadsense::ilc
