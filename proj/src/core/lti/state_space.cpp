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

#include "core/lti/state_space.hpp"

#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>

#include "core/errors.hpp"

namespace roadsense::lti {

std::complex<double> StateSpace::freq_response(double omega) const {
    using Cplx = std::complex<double>;
    const Cplx z = is_discrete() ? std::exp(Cplx(0.0, omega * dt)) : Cplx(0.0, omega);
    const int n = order();
    if (n == 0) return Cplx(D(0, 0), 0.0);
    Eigen::MatrixXcd zi = z * Eigen::MatrixXcd::Identity(n, n) - A.cast<Cplx>();
    Eigen::VectorXcd x = zi.partialPivLu().solve(B.col(0).cast<Cplx>());
    return (C.row(0).cast<Cplx>() * x)(0) + Cplx(D(0, 0), 0.0);
}

StateSpace realize(const TransferFunction& tf) {
    if (!tf.is_proper()) {
        throw Error(ErrorCode::ImproperTransferFunction,
                    "relative degree " + std::to_string(tf.relative_degree()));
    }
    const int n = tf.den().degree();
    // Denominator is monic by canonicalization.
    StateSpace ss;
    ss.A = Eigen::MatrixXd::Zero(n, n);
    ss.B = Eigen::MatrixXd::Zero(n, 1);
    ss.C = Eigen::MatrixXd::Zero(1, n);
    ss.D = Eigen::MatrixXd::Zero(1, 1);
    if (n == 0) {
        ss.D(0, 0) = tf.num().constant_term() / tf.den().constant_term();
        return ss;
    }

    const auto& a = tf.den().coeffs();  // a[n] == 1
    std::vector<double> b(static_cast<size_t>(n) + 1, 0.0);
    for (int i = 0; i <= tf.num().degree(); ++i) b[i] = tf.num().coeffs()[i];

    for (int i = 0; i + 1 < n; ++i) ss.A(i, i + 1) = 1.0;
    for (int i = 0; i < n; ++i) ss.A(n - 1, i) = -a[i];
    ss.B(n - 1, 0) = 1.0;
    // y = sum_i (b_i - b_n a_i) x_i + b_n u for the biproper case.
    const double d = b[static_cast<size_t>(n)];
    for (int i = 0; i < n; ++i) ss.C(0, i) = b[i] - d * a[i];
    ss.D(0, 0) = d;
    return ss;
}

StateSpace discretize(const StateSpace& ss, double dt, DiscretizeMethod method) {
    if (ss.is_discrete()) throw Error(ErrorCode::InvalidParams, "system is already discrete");
    if (dt <= 0.0) throw Error(ErrorCode::InvalidParams, "dt must be positive");
    const int n = ss.order();
    const int m = ss.inputs();
    StateSpace out;
    out.dt = dt;
    out.C = ss.C;
    out.D = ss.D;
    if (n == 0) {
        out.A = ss.A;
        out.B = ss.B;
        return out;
    }
    switch (method) {
        case DiscretizeMethod::zoh: {
            Eigen::MatrixXd block = Eigen::MatrixXd::Zero(n + m, n + m);
            block.topLeftCorner(n, n) = ss.A * dt;
            block.topRightCorner(n, m) = ss.B * dt;
            const Eigen::MatrixXd expb = block.exp();
            out.A = expb.topLeftCorner(n, n);
            out.B = expb.topRightCorner(n, m);
            return out;
        }
        case DiscretizeMethod::tustin: {
            const double g = dt / 2.0;
            const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
            const Eigen::MatrixXd inv = (I - g * ss.A).partialPivLu().inverse();
            out.A = inv * (I + g * ss.A);
            out.B = 2.0 * g * inv * inv * ss.B;
            out.C = ss.C;
            out.D = ss.D + g * ss.C * inv * ss.B;
            return out;
        }
    }
    throw Error(ErrorCode::InvalidParams, "unknown discretization method");
}

SignalTrace simulate_lti(const StateSpace& dss, const SignalTrace& input,
                         const Eigen::VectorXd& x0) {
    if (!dss.is_discrete()) throw Error(ErrorCode::InvalidParams, "system must be discrete");
    if (std::abs(dss.dt - input.dt) > 1e-12 * dss.dt) {
        throw Error(ErrorCode::DimensionMismatch, "input dt differs from system dt");
    }
    const int n = dss.order();
    Eigen::VectorXd x;
    if (x0.size() == 0) {
        x = Eigen::VectorXd::Zero(n);
    } else if (x0.size() == n) {
        x = x0;
    } else {
        throw Error(ErrorCode::DimensionMismatch, "x0 size differs from state order");
    }
    SignalTrace out = SignalTrace::zeros(input.dt, input.size(), input.label);
    const double d = dss.D(0, 0);
    for (std::size_t k = 0; k < input.size(); ++k) {
        const double u = input.samples[k];
        out.samples[k] = (n > 0 ? (dss.C * x)(0) : 0.0) + d * u;
        if (n > 0) x = dss.A * x + dss.B.col(0) * u;
    }
    return out;
}

StateSpace invert_discrete(const StateSpace& dss) {
    if (!dss.is_discrete()) throw Error(ErrorCode::InvalidParams, "system must be discrete");
    const double d = dss.D(0, 0);
    if (std::abs(d) < 1e-300) {
        throw Error(ErrorCode::ZeroDenominator, "feedthrough is zero; discrete inverse undefined");
    }
    StateSpace out;
    out.dt = dss.dt;
    out.A = dss.A - dss.B * (1.0 / d) * dss.C;
    out.B = dss.B * (1.0 / d);
    out.C = -(1.0 / d) * dss.C;
    out.D = Eigen::MatrixXd::Constant(1, 1, 1.0 / d);
    return out;
}

SignalTrace filter_trace(const TransferFunction& tf, const SignalTrace& input,
                         DiscretizeMethod method) {
    return simulate_lti(discretize(realize(tf), input.dt, method), input);
}

}  // namespace roadsense::lti
