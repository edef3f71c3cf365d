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

#include "core/vehicle/quarter_car.hpp"

#include <cmath>
#include <string>

#include "core/errors.hpp"

namespace roadsense::vehicle {

using lti::Polynomial;
using lti::SignalTrace;
using lti::StateSpace;
using lti::TransferFunction;

void VehicleParams::validate() const {
    const double values[] = {m_s, m_us, k_s, k_us, c_s, c_us};
    const char* names[] = {"m_s", "m_us", "k_s", "k_us", "c_s", "c_us"};
    for (int i = 0; i < 6; ++i) {
        if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
            throw Error(ErrorCode::InvalidParams,
                        std::string(names[i]) + " must be strictly positive");
        }
    }
    for (const auto& pole : plant_force_to_zs(*this).poles()) {
        if (pole.real() >= -1e-12) {
            throw Error(ErrorCode::InvalidParams, "suspension plant is not Hurwitz");
        }
    }
}

void PidGains::validate() const {
    if (kp < 0.0 || ki < 0.0 || kd < 0.0 || !(kp > 0.0 || ki > 0.0 || kd > 0.0)) {
        throw Error(ErrorCode::InvalidParams,
                    "gains must be nonnegative with at least one positive");
    }
}

namespace {

Polynomial suspension_quartic(const VehicleParams& p) {
    return Polynomial{p.k_s * p.k_us,
                      p.c_s * p.k_us + p.c_us * p.k_s,
                      p.k_s * p.m_s + p.k_s * p.m_us + p.k_us * p.m_s + p.c_s * p.c_us,
                      p.c_s * p.m_s + p.c_s * p.m_us + p.c_us * p.m_s,
                      p.m_s * p.m_us};
}

}  // namespace

TransferFunction plant_force_to_zs(const VehicleParams& p) {
    return TransferFunction(Polynomial{p.k_us, p.c_us, p.m_us}, suspension_quartic(p));
}

TransferFunction plant_road_rate_to_zs(const VehicleParams& p) {
    const Polynomial num = Polynomial{p.k_s, p.c_s} * Polynomial{p.k_us, p.c_us};
    const Polynomial den = suspension_quartic(p) * Polynomial::variable();
    return TransferFunction(num, den);
}

TransferFunction road_to_equivalent_force(const VehicleParams& p) {
    const Polynomial num = Polynomial{p.k_s, p.c_s} * Polynomial{p.k_us, p.c_us};
    return TransferFunction(num, Polynomial{p.k_us, p.c_us, p.m_us});
}

TransferFunction road_to_equivalent_force_literal(const VehicleParams& p) {
    const TransferFunction s(Polynomial::variable(), Polynomial::constant(1.0));
    return s * plant_force_to_zs(p).inverse() * plant_road_rate_to_zs(p);
}

StateSpace quarter_car_state_space(const VehicleParams& p) {
    StateSpace ss;
    ss.A = Eigen::MatrixXd::Zero(4, 4);
    ss.B = Eigen::MatrixXd::Zero(4, 3);
    ss.C = Eigen::MatrixXd::Zero(1, 4);
    ss.D = Eigen::MatrixXd::Zero(1, 3);

    // x = [z_s, z_s_dot, z_us, z_us_dot], u = [F_a, z_r, z_r_dot]
    ss.A(0, 1) = 1.0;
    ss.A(1, 0) = -p.k_s / p.m_s;
    ss.A(1, 1) = -p.c_s / p.m_s;
    ss.A(1, 2) = p.k_s / p.m_s;
    ss.A(1, 3) = p.c_s / p.m_s;
    ss.A(2, 3) = 1.0;
    ss.A(3, 0) = p.k_s / p.m_us;
    ss.A(3, 1) = p.c_s / p.m_us;
    ss.A(3, 2) = -(p.k_s + p.k_us) / p.m_us;
    ss.A(3, 3) = -(p.c_s + p.c_us) / p.m_us;

    ss.B(1, 0) = 1.0 / p.m_s;
    ss.B(3, 0) = -1.0 / p.m_us;
    ss.B(3, 1) = p.k_us / p.m_us;
    ss.B(3, 2) = p.c_us / p.m_us;

    ss.C(0, 0) = 1.0;
    return ss;
}

std::pair<SignalTrace, SignalTrace> simulate_plant(const VehicleParams& p,
                                                   const SignalTrace& force,
                                                   const SignalTrace& road) {
    if (force.size() != road.size() || force.dt != road.dt) {
        throw Error(ErrorCode::DimensionMismatch, "force and road traces must align");
    }
    const StateSpace css = quarter_car_state_space(p);
    const StateSpace dss = lti::discretize(css, force.dt, lti::DiscretizeMethod::zoh);
    const SignalTrace road_rate = lti::central_difference(road);

    SignalTrace zs = SignalTrace::zeros(force.dt, force.size(), "z_s");
    SignalTrace zus = SignalTrace::zeros(force.dt, force.size(), "z_us");
    Eigen::VectorXd x = Eigen::VectorXd::Zero(4);
    Eigen::Vector3d u;
    for (std::size_t k = 0; k < force.size(); ++k) {
        zs.samples[k] = x(0);
        zus.samples[k] = x(2);
        u << force.samples[k], road.samples[k], road_rate.samples[k];
        x = dss.A * x + dss.B * u;
    }
    return {std::move(zs), std::move(zus)};
}

}  // namespace roadsense::vehicle
