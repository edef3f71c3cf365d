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

#include "core/observer/dob.hpp"

#include <cmath>
#include <fstream>

#include "core/errors.hpp"
#include "core/lti/state_space.hpp"

namespace roadsense::observer {

using lti::DiscretizeMethod;
using lti::Polynomial;
using lti::SignalTrace;
using lti::StateSpace;
using lti::TransferFunction;
using vehicle::VehicleParams;

void QFilterSpec::validate() const {
    if (!(cutoff > 0.0)) throw Error(ErrorCode::InvalidParams, "cutoff must be positive");
    if (order < 2) {
        throw Error(ErrorCode::InvalidParams,
                    "order must be >= 2 to cover the plant relative degree");
    }
}

TransferFunction make_q(const QFilterSpec& spec) {
    spec.validate();
    const double tau = 1.0 / spec.cutoff;
    Polynomial den = Polynomial::constant(1.0);
    for (int i = 0; i < spec.order; ++i) den = den * Polynomial{1.0, tau};
    return TransferFunction(Polynomial::constant(1.0), den);
}

TransferFunction make_m(const TransferFunction& nominal_force_plant, const TransferFunction& q) {
    const TransferFunction m = q * nominal_force_plant.inverse();
    if (!m.is_proper()) {
        throw Error(ErrorCode::ImproperComposition,
                    "observer filter order is below the plant relative degree");
    }
    return m;
}

TransferFunction pid_controller(const vehicle::PidGains& pid, double deriv_pole) {
    pid.validate();
    if (!(deriv_pole > 0.0)) throw Error(ErrorCode::InvalidParams, "derivative pole must be positive");
    const double tf = 1.0 / deriv_pole;
    // (kp s (tf s + 1) + ki (tf s + 1) + kd s^2) / (s (tf s + 1))
    const Polynomial num{pid.ki, pid.kp + pid.ki * tf, pid.kp * tf + pid.kd};
    const Polynomial den{0.0, 1.0, tf};
    return TransferFunction(num, den);
}

namespace {

// The three loop maps share the closure 1 - Q + P(M + C) with
// M = Q * Pn^-1. Composing them through blind rational arithmetic piles up
// repeated factors that float root-matching cannot reliably cancel, so the
// closure is assembled here over its exact least common denominator
// d_P * d_Q * n_Pn * d_C, with every structural cancellation done by factor
// bookkeeping. Only simple near-common roots remain for simplified().
struct LoopFactors {
    Polynomial n_p, d_p;    // plant in use (actual or nominal)
    Polynomial n_pn, d_pn;  // nominal plant (inside M)
    Polynomial n_c, d_c;    // controller
    Polynomial n_q, d_q;    // observer low-pass
    Polynomial closure;     // numerator of 1 - Q + P(M + C) over the LCD

    Polynomial lcd() const { return d_p * d_q * n_pn * d_c; }
};

LoopFactors make_factors(const AgentLoop& loop, bool use_nominal) {
    LoopFactors f;
    const TransferFunction plant =
        vehicle::plant_force_to_zs(use_nominal ? loop.nominal() : loop.actual());
    const TransferFunction nominal = vehicle::plant_force_to_zs(loop.nominal());
    const TransferFunction c = pid_controller(loop.pid(), loop.deriv_pole());
    const TransferFunction q = make_q(loop.q_spec());
    f.n_p = plant.num();
    f.d_p = plant.den();
    f.n_pn = nominal.num();
    f.d_pn = nominal.den();
    f.n_c = c.num();
    f.d_c = c.den();
    f.n_q = q.num();
    f.d_q = q.den();
    f.closure = f.lcd() - f.n_q * f.d_p * f.n_pn * f.d_c +
                f.n_p * (f.n_q * f.d_pn * f.d_c + f.n_c * f.d_q * f.n_pn);
    return f;
}

}  // namespace

AgentLoop::AgentLoop(VehicleParams actual, VehicleParams nominal, vehicle::PidGains pid,
                     QFilterSpec q, double dt)
    : actual_(std::move(actual)), nominal_(std::move(nominal)), pid_(pid), q_(q), dt_(dt) {
    actual_.validate();
    nominal_.validate();
    pid_.validate();
    q_.validate();
    if (!(dt_ > 0.0)) throw Error(ErrorCode::InvalidParams, "dt must be positive");

    const LoopFactors f = make_factors(*this, /*use_nominal=*/false);
    for (const auto& pole : f.closure.roots()) {
        if (pole.real() >= -1e-9) {
            throw Error(ErrorCode::UnstableLoop,
                        "closed loop with the nominal inverse approximation is unstable");
        }
    }
}

TransferFunction synth_disturbance_to_zs(const AgentLoop& loop, bool use_nominal) {
    // [1 - Q + P(M + C)]^-1 P (1 - Q); the LCD's d_p * d_q cancels against
    // the plant and (1 - Q) denominators by construction.
    const LoopFactors f = make_factors(loop, use_nominal);
    return TransferFunction(f.n_pn * f.d_c * f.n_p * (f.d_q - f.n_q), f.closure).simplified();
}

TransferFunction synth_learning_to_zs(const AgentLoop& loop, bool use_nominal) {
    // [1 - Q + P(M + C)]^-1 (-P)
    const LoopFactors f = make_factors(loop, use_nominal);
    return TransferFunction(-(f.d_q * f.n_pn * f.d_c * f.n_p), f.closure).simplified();
}

TransferFunction synth_disturbance_sensitivity(const AgentLoop& loop, bool use_nominal) {
    // [1 - Q + P(M + C)]^-1 (M + Q C) P
    const LoopFactors f = make_factors(loop, use_nominal);
    return TransferFunction(f.n_p * f.n_q * (f.d_pn * f.d_c + f.n_c * f.n_pn), f.closure)
        .simplified();
}

AgentLog run_agent(const AgentLoop& loop, const SignalTrace& road,
                   const SignalTrace& learning_signal, const RunOptions& options) {
    const double dt = loop.dt();
    if (road.dt != dt || learning_signal.dt != dt || road.size() != learning_signal.size()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "road and learning-signal traces must share the loop dt and length");
    }
    const std::size_t n = road.size();

    // Plant and equivalent-disturbance prefilter use the actual vehicle; the
    // observer pieces only ever see the nominal model.
    const StateSpace plant = lti::discretize(
        lti::realize(vehicle::plant_force_to_zs(loop.actual())), dt, DiscretizeMethod::zoh);
    const StateSpace m_filter = lti::discretize(
        lti::realize(make_m(vehicle::plant_force_to_zs(loop.nominal()), make_q(loop.q_spec()))),
        dt, DiscretizeMethod::tustin);
    const StateSpace q_filter =
        lti::discretize(lti::realize(make_q(loop.q_spec())), dt, DiscretizeMethod::tustin);
    const StateSpace controller = lti::discretize(
        lti::realize(pid_controller(loop.pid(), loop.deriv_pole())), dt, DiscretizeMethod::tustin);

    const SignalTrace d_trace = lti::filter_trace(
        vehicle::road_to_equivalent_force(loop.actual()), road, DiscretizeMethod::tustin);

    AgentLog log;
    log.z_s = SignalTrace::zeros(dt, n, "z_s");
    log.e = SignalTrace::zeros(dt, n, "e");
    log.d = d_trace;
    log.d.label = "d";
    log.d_hat_prime = SignalTrace::zeros(dt, n, "d_hat_prime");
    log.d_hat = SignalTrace::zeros(dt, n, "d_hat");
    log.d_f = learning_signal;
    log.d_f.label = "d_f";
    log.f_a = SignalTrace::zeros(dt, n, "F_a");

    Eigen::VectorXd x_p = Eigen::VectorXd::Zero(plant.order());
    Eigen::VectorXd x_m = Eigen::VectorXd::Zero(m_filter.order());
    Eigen::VectorXd x_q = Eigen::VectorXd::Zero(q_filter.order());
    Eigen::VectorXd x_c = Eigen::VectorXd::Zero(controller.order());
    double prev_w = 0.0;

    for (std::size_t k = 0; k < n; ++k) {
        const double z_s = (plant.C * x_p)(0);  // strictly proper plant
        const double e = -z_s;
        const double u_c = (controller.C * x_c)(0) + controller.D(0, 0) * e;

        // Observer output from states updated through sample k-1; the
        // measurement feeds through the inverse-approximation path, the
        // command path contribution uses the previous command.
        double d_hat_prime = 0.0;
        if (options.dob_enabled) {
            d_hat_prime = (m_filter.C * x_m)(0) + m_filter.D(0, 0) * z_s -
                          ((q_filter.C * x_q)(0) + q_filter.D(0, 0) * prev_w);
        }
        const double w = u_c - d_hat_prime - learning_signal.samples[k];
        const double d_hat = d_hat_prime + learning_signal.samples[k];

        if (std::abs(z_s) > options.divergence_guard || std::abs(w) > options.divergence_guard) {
            throw Error(ErrorCode::UnstableLoop,
                        "trace magnitude passed the divergence guard at sample " +
                            std::to_string(k));
        }

        log.z_s.samples[k] = z_s;
        log.e.samples[k] = e;
        log.d_hat_prime.samples[k] = d_hat_prime;
        log.d_hat.samples[k] = d_hat;
        log.f_a.samples[k] = w;

        x_p = plant.A * x_p + plant.B * (w + d_trace.samples[k]);
        if (options.dob_enabled) {
            x_m = m_filter.A * x_m + m_filter.B * z_s;
            x_q = q_filter.A * x_q + q_filter.B * w;
        }
        x_c = controller.A * x_c + controller.B * e;
        prev_w = w;
    }

    log.z_r_hat = reconstruct_road(log.d_hat, loop.nominal());
    return log;
}

SignalTrace reconstruct_road(const SignalTrace& d_hat, const VehicleParams& nominal) {
    const StateSpace forward = lti::discretize(
        lti::realize(vehicle::road_to_equivalent_force(nominal)), d_hat.dt,
        DiscretizeMethod::tustin);
    SignalTrace out = lti::simulate_lti(lti::invert_discrete(forward), d_hat);
    out.label = "z_r_hat";
    return out;
}

void export_agent_log_csv(const AgentLog& log, const SignalTrace& road,
                          const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    out << "t,z_r,z_s,d,d_hat_prime,d_f,d_hat,z_r_hat,F_a\n";
    out.precision(17);
    for (std::size_t k = 0; k < log.z_s.size(); ++k) {
        out << log.z_s.dt * static_cast<double>(k) << ',' << road.samples[k] << ','
            << log.z_s.samples[k] << ',' << log.d.samples[k] << ','
            << log.d_hat_prime.samples[k] << ',' << log.d_f.samples[k] << ','
            << log.d_hat.samples[k] << ',' << log.z_r_hat.samples[k] << ','
            << log.f_a.samples[k] << '\n';
    }
}

}  // namespace roadsense::observer
