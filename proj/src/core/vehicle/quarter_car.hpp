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

#include <utility>

#include "core/lti/signal_trace.hpp"
#include "core/lti/state_space.hpp"
#include "core/lti/transfer_function.hpp"

namespace roadsense::vehicle {

/// Quarter-car physical constants. Construction-time validation requires all
/// six strictly positive and the force-to-displacement plant denominator
/// Hurwitz (automatic for a passive suspension, asserted anyway).
struct VehicleParams {
    double m_s;   // sprung mass, kg
    double m_us;  // unsprung mass, kg
    double k_s;   // suspension stiffness, N/m
    double k_us;  // tire stiffness, N/m
    double c_s;   // suspension damping, N s/m
    double c_us;  // tire damping, N s/m

    void validate() const;
};

struct PidGains {
    double kp;
    double ki;
    double kd;

    void validate() const;
};

/// Sprung-mass displacement per unit actuator force:
/// (m_us s^2 + c_us s + k_us) over the suspension quartic. Relative degree 2.
lti::TransferFunction plant_force_to_zs(const VehicleParams& p);

/// Sprung-mass displacement per unit road *velocity*:
/// (k_s + c_s s)(k_us + c_us s) over s times the suspension quartic.
/// Relative degree 3 with a free integrator.
lti::TransferFunction plant_road_rate_to_zs(const VehicleParams& p);

/// Input-equivalent road disturbance map: the road profile filtered through
/// this enters the loop at the actuator, alongside the force. Closed form
/// (k_s + c_s s)(k_us + c_us s) / (m_us s^2 + c_us s + k_us); biproper, with
/// stable zeros at -k_s/c_s and -k_us/c_us so its inverse is stable and
/// proper.
lti::TransferFunction road_to_equivalent_force(const VehicleParams& p);

/// The same map composed literally as s * P_force^-1 * P_road_rate, kept for
/// cross-checking the closed form.
lti::TransferFunction road_to_equivalent_force_literal(const VehicleParams& p);

/// Four-state model of the coupled sprung/unsprung dynamics.
/// States: z_s, z_s_dot, z_us, z_us_dot. Inputs: F_a, z_r, z_r_dot.
/// Output (C row): z_s.
lti::StateSpace quarter_car_state_space(const VehicleParams& p);

/// Integrates the coupled dynamics from rest using the exact hold-equivalent
/// discrete model; road velocity comes from the project-wide central
/// difference. Returns (z_s, z_us).
std::pair<lti::SignalTrace, lti::SignalTrace> simulate_plant(const VehicleParams& p,
                                                             const lti::SignalTrace& force,
                                                             const lti::SignalTrace& road);

}  // namespace roadsense::vehicle
