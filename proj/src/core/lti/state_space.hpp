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

#include <Eigen/Dense>
#include <complex>

#include "core/lti/signal_trace.hpp"
#include "core/lti/transfer_function.hpp"

namespace roadsense::lti {

/// State-space realization x' = Ax + Bu, y = Cx + Du. dt == 0 marks a
/// continuous-time system; dt > 0 a discrete-time one (x[k+1] = A x[k] + ...).
struct StateSpace {
    Eigen::MatrixXd A;
    Eigen::MatrixXd B;
    Eigen::MatrixXd C;
    Eigen::MatrixXd D;
    double dt = 0.0;

    int order() const { return static_cast<int>(A.rows()); }
    int inputs() const { return static_cast<int>(B.cols()); }
    int outputs() const { return static_cast<int>(C.rows()); }
    bool is_discrete() const { return dt > 0.0; }

    /// C (zI - A)^-1 B + D with z = iw (continuous) or exp(iw dt) (discrete).
    std::complex<double> freq_response(double omega) const;
};

/// Controllable-canonical realization of a proper transfer function.
/// Constant functions realize with an empty state and D = [k].
/// Throws ImproperTransferFunction.
StateSpace realize(const TransferFunction& tf);

enum class DiscretizeMethod { zoh, tustin };

/// zoh: exact hold-equivalent via the block matrix exponential.
/// tustin: bilinear map, exact at s = (2/dt)(z-1)/(z+1).
StateSpace discretize(const StateSpace& ss, double dt, DiscretizeMethod method);

/// Runs the discrete state recursion over the input trace. x0 empty means the
/// origin. Output length equals input length. Throws DimensionMismatch if the
/// trace dt disagrees with the system dt or x0 has the wrong size.
SignalTrace simulate_lti(const StateSpace& dss, const SignalTrace& input,
                         const Eigen::VectorXd& x0 = Eigen::VectorXd());

/// Exact inverse of a discrete SISO system with nonzero feedthrough:
/// (A - B D^-1 C, B D^-1, -D^-1 C, D^-1). Throws ZeroDenominator when D ~ 0.
StateSpace invert_discrete(const StateSpace& dss);

/// Convenience: realize + discretize + simulate from rest.
SignalTrace filter_trace(const TransferFunction& tf, const SignalTrace& input,
                         DiscretizeMethod method = DiscretizeMethod::tustin);

}  // namespace roadsense::lti
