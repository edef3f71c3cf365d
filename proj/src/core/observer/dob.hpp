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

#include "core/lti/signal_trace.hpp"
#include "core/lti/transfer_function.hpp"
#include "core/vehicle/quarter_car.hpp"

namespace roadsense::observer {

/// Low-pass filter defining the disturbance observer bandwidth.
/// Order must cover the force plant's relative degree (2) so the
/// plant-inverse composition stays proper; unity dc gain by construction.
struct QFilterSpec {
    double cutoff = 7.35;  // rad/s
    int order = 2;

    void validate() const;
    bool operator==(const QFilterSpec&) const = default;
};

/// Q(s) = 1 / (s/cutoff + 1)^order.
lti::TransferFunction make_q(const QFilterSpec& spec);

/// M = Q * P_nominal^-1, the proper approximate plant inverse driving the
/// observer. Throws ImproperComposition when Q's order is too low.
lti::TransferFunction make_m(const lti::TransferFunction& nominal_force_plant,
                             const lti::TransferFunction& q);

/// Baseline PID as a rational function: kp + ki/s + kd s/(s/deriv_pole + 1).
lti::TransferFunction pid_controller(const vehicle::PidGains& pid, double deriv_pole);

/// One vehicle's closed loop: true plant, the nominal model the observer and
/// learning code are allowed to see, the baseline controller, and the shared
/// observer filter. Construction asserts the loop built from the actual plant
/// with the nominal inverse approximation is strictly stable.
class AgentLoop {
  public:
    AgentLoop(vehicle::VehicleParams actual, vehicle::VehicleParams nominal,
              vehicle::PidGains pid, QFilterSpec q, double dt);

    const vehicle::VehicleParams& actual() const { return actual_; }
    const vehicle::VehicleParams& nominal() const { return nominal_; }
    const vehicle::PidGains& pid() const { return pid_; }
    const QFilterSpec& q_spec() const { return q_; }
    double dt() const { return dt_; }
    /// Derivative filter pole: one decade above the observer cutoff.
    double deriv_pole() const { return 10.0 * q_.cutoff; }

  private:
    vehicle::VehicleParams actual_;
    vehicle::VehicleParams nominal_;
    vehicle::PidGains pid_;
    QFilterSpec q_;
    double dt_;
};

/// Closed-loop map from the input-equivalent disturbance to the sprung-mass
/// displacement: [1 - Q + P(M + C)]^-1 * P * (1 - Q). With use_nominal the
/// plant inside is the nominal model (the design-side version).
lti::TransferFunction synth_disturbance_to_zs(const AgentLoop& loop, bool use_nominal);

/// Closed-loop map from the learning signal to the sprung-mass displacement:
/// [1 - Q + P(M + C)]^-1 * (-P).
lti::TransferFunction synth_learning_to_zs(const AgentLoop& loop, bool use_nominal);

/// Closed-loop map from the disturbance to the observer's estimate:
/// [1 - Q + P(M + C)]^-1 * (M + Q C) * P. Equals Q exactly when the nominal
/// model matches the plant.
lti::TransferFunction synth_disturbance_sensitivity(const AgentLoop& loop, bool use_nominal);

/// Traces recorded by one closed-loop run.
struct AgentLog {
    lti::SignalTrace z_s;          // sprung-mass displacement
    lti::SignalTrace e;            // tracking error, -z_s
    lti::SignalTrace d;            // true input-equivalent disturbance
    lti::SignalTrace d_hat_prime;  // observer estimate
    lti::SignalTrace d_hat;        // observer estimate plus learning signal
    lti::SignalTrace d_f;          // learning signal (echo of the input)
    lti::SignalTrace f_a;          // actuator command
    lti::SignalTrace z_r_hat;      // reconstructed road profile
};

struct RunOptions {
    bool dob_enabled = true;
    double divergence_guard = 1e6;
};

/// Sample-synchronous closed-loop simulation from rest. Per step the
/// controller acts on the current measurement; the observer estimate entering
/// the command is formed from filter states updated through the previous
/// sample. Throws UnstableLoop when any trace passes the divergence guard.
AgentLog run_agent(const AgentLoop& loop, const lti::SignalTrace& road,
                   const lti::SignalTrace& learning_signal, const RunOptions& options = {});

/// Maps a disturbance estimate back to road elevation through the exact
/// discrete inverse of the nominal road-to-force map (biproper with stable
/// zeros, so the inverse is stable by construction).
lti::SignalTrace reconstruct_road(const lti::SignalTrace& d_hat,
                                  const vehicle::VehicleParams& nominal);

/// One CSV per agent: t, z_r, z_s, d, d_hat_prime, d_f, d_hat, z_r_hat, F_a.
void export_agent_log_csv(const AgentLog& log, const lti::SignalTrace& road,
                          const std::filesystem::path& path);

}  // namespace roadsense::observer
