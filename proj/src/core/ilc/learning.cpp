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

#include "core/ilc/learning.hpp"

#include <json.hpp>
#include <unsupported/Eigen/FFT>
#include <cmath>
#include <complex>
#include <fstream>

#include "core/errors.hpp"

namespace roadsense::ilc {

using lti::Polynomial;
using lti::SignalTrace;
using lti::TransferFunction;
using observer::AgentLoop;

namespace {

// Synthesis-side dt; the loops built here are only used for rational
// synthesis, never stepped in time.
constexpr double kSynthDt = 1e-3;

// Roots re-extracted from composed high-degree products carry more error
// than the default cancellation tolerance admits; a follow-up pass at this
// tolerance removes the factors the compositions are known to share.
// Physical root separations here are several orders larger.
constexpr double kCompositionTol = 1e-6;

TransferFunction tidy(const TransferFunction& t) {
    return t.simplified(kCompositionTol);
}

AgentLoop nominal_loop(const vehicle::VehicleParams& nominal, const vehicle::PidGains& pid,
                       const observer::QFilterSpec& q) {
    return AgentLoop(nominal, nominal, pid, q, kSynthDt);
}

}  // namespace

double compute_eta(const vehicle::VehicleParams& nominal_current,
                   const vehicle::VehicleParams& nominal_previous) {
    return vehicle::road_to_equivalent_force(nominal_current).dc_gain() /
           vehicle::road_to_equivalent_force(nominal_previous).dc_gain();
}

double learnable_band(const vehicle::VehicleParams& nominal_a,
                      const vehicle::VehicleParams& nominal_b, double fraction, double cap) {
    const double zero_a = std::sqrt(nominal_a.k_us / nominal_a.m_us);
    const double zero_b = std::sqrt(nominal_b.k_us / nominal_b.m_us);
    return std::min(cap, fraction * std::min(zero_a, zero_b));
}

TransferFunction synth_l1(const SharedRecord& prev, const vehicle::VehicleParams& nominal_current,
                          const vehicle::PidGains& pid_current,
                          const observer::QFilterSpec& q_current, double alpha) {
    const AgentLoop loop_prev = nominal_loop(prev.nominal, prev.pid, prev.q);
    const AgentLoop loop_cur = nominal_loop(nominal_current, pid_current, q_current);
    const double eta = compute_eta(nominal_current, prev.nominal);

    const TransferFunction one = TransferFunction::constant(1.0);
    const TransferFunction gd_prev = observer::synth_disturbance_to_zs(loop_prev, true);
    const TransferFunction w_prev = observer::synth_disturbance_sensitivity(loop_prev, true);
    const TransferFunction w_cur = observer::synth_disturbance_sensitivity(loop_cur, true);

    const TransferFunction bracket = (one - w_prev) * alpha - (one - w_cur) * eta;
    return tidy(gd_prev.inverse() * bracket);
}

TransferFunction synth_l2(const TransferFunction& l1, const SharedRecord& prev, double alpha) {
    const AgentLoop loop_prev = nominal_loop(prev.nominal, prev.pid, prev.q);
    const TransferFunction gf_prev = observer::synth_learning_to_zs(loop_prev, true);
    return tidy(TransferFunction::constant(alpha) + tidy(l1 * gf_prev));
}

LearningFilters synth_filters(const SharedRecord& prev,
                              const vehicle::VehicleParams& nominal_current,
                              const vehicle::PidGains& pid_current,
                              const observer::QFilterSpec& q_current, double alpha) {
    LearningFilters filters;
    filters.alpha = alpha;
    filters.eta = compute_eta(nominal_current, prev.nominal);
    filters.l1 = synth_l1(prev, nominal_current, pid_current, q_current, alpha);
    filters.l2 = synth_l2(filters.l1, prev, alpha);
    return filters;
}

SignalTrace apply_filter_offline(const TransferFunction& f, const SignalTrace& x,
                                 const OfflineFilterOptions& options) {
    if (!x.all_finite()) throw Error(ErrorCode::InvalidParams, "input trace is not finite");
    const std::size_t n = x.size();
    if (n == 0) return x;

    // Right-half-plane poles mean a broken synthesis; imaginary-axis poles
    // (the integrating controller contributes one at the origin) are
    // legitimate and handled by notching the bins they land on.
    std::vector<double> axis_pole_freqs;
    for (const auto& pole : f.poles()) {
        const double tol = 1e-6 * std::max(1.0, std::abs(pole));
        if (pole.real() > tol) {
            throw Error(ErrorCode::UnstableInverse,
                        "filter has right-half-plane poles; synthesis upstream failed");
        }
        if (std::abs(pole.real()) <= tol) axis_pole_freqs.push_back(std::abs(pole.imag()));
    }

    std::size_t total = 1;
    while (total < 4 * n) total <<= 1;

    std::vector<double> padded(total, 0.0);
    std::copy(x.samples.begin(), x.samples.end(), padded.begin());

    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> spectrum;
    fft.fwd(spectrum, padded);

    const bool improper = !f.is_proper();
    const double base = 2.0 * std::numbers::pi / (x.dt * static_cast<double>(total));
    auto on_axis_pole = [&](double omega) {
        for (double pf : axis_pole_freqs)
            if (std::abs(std::abs(omega) - pf) <= 0.5 * base) return true;
        return false;
    };
    for (std::size_t k = 0; k < total; ++k) {
        const double omega =
            (k <= total / 2 ? base * static_cast<double>(k)
                            : -base * static_cast<double>(total - k));
        const std::complex<double> s(0.0, omega);
        const std::complex<double> den = f.den().eval(s);
        std::complex<double> h;
        if (on_axis_pole(omega) || std::abs(den) <= 1e-12 * f.den().eval_scale(std::abs(omega))) {
            h = 0.0;
        } else {
            h = f.num().eval(s) / den;
            if (improper) {
                const double ratio = std::abs(omega) / options.rolloff_cutoff;
                h /= 1.0 + std::pow(ratio, 2.0 * options.rolloff_order);
            }
        }
        spectrum[k] *= h;
    }

    std::vector<double> filtered;
    fft.inv(filtered, spectrum);
    SignalTrace out(x.dt, std::vector<double>(filtered.begin(), filtered.begin() + n), x.label);
    return out;
}

SignalTrace make_learning_signal(const LearningFilters& filters, const SharedRecord& prev,
                                 const OfflineFilterOptions& options) {
    if (prev.e_trace.dt != prev.df_trace.dt || prev.e_trace.size() != prev.df_trace.size()) {
        throw Error(ErrorCode::DimensionMismatch, "record traces disagree in dt or length");
    }
    SignalTrace out = apply_filter_offline(filters.l1, prev.e_trace, options) +
                      apply_filter_offline(filters.l2, prev.df_trace, options);
    out.label = "d_f";
    return out;
}

ContractionDiagnostics contraction_diagnostics(const AgentLoop& prev, const AgentLoop& current,
                                               const LearningFilters& filters,
                                               ModelSelection unhatted) {
    const bool nominal_side = unhatted == ModelSelection::nominal;
    const TransferFunction one = TransferFunction::constant(1.0);

    const TransferFunction w_prev = observer::synth_disturbance_sensitivity(prev, nominal_side);
    const TransferFunction w_cur = observer::synth_disturbance_sensitivity(current, nominal_side);
    const TransferFunction gd_prev = observer::synth_disturbance_to_zs(prev, nominal_side);
    const TransferFunction gf_prev = observer::synth_learning_to_zs(prev, nominal_side);
    const TransferFunction delta_prev = vehicle::road_to_equivalent_force(
        nominal_side ? prev.nominal() : prev.actual());
    const TransferFunction delta_cur = vehicle::road_to_equivalent_force(
        nominal_side ? current.nominal() : current.actual());

    const TransferFunction inv_one_minus_w_prev = (one - w_prev).inverse();
    ContractionDiagnostics out;
    const TransferFunction drift =
        tidy((one - w_cur) * inv_one_minus_w_prev * delta_cur * delta_prev.inverse());
    const TransferFunction correction = tidy(filters.l1 * gd_prev * inv_one_minus_w_prev);
    out.te1 = tidy(drift + correction);
    out.te2 = tidy(out.te1 - filters.l2 + tidy(filters.l1 * gf_prev));

    const auto omegas = lti::log_space(0.1, 20.0, 200);
    out.report.omega = omegas;
    for (double w : omegas) {
        const double dev1 = std::abs(out.te1.freq_response(w) - filters.alpha);
        const double mag2 = std::abs(out.te2.freq_response(w));
        out.report.te1_minus_alpha_abs.push_back(dev1);
        out.report.te2_abs.push_back(mag2);
        out.report.max_te1_minus_alpha = std::max(out.report.max_te1_minus_alpha, dev1);
        out.report.max_te2 = std::max(out.report.max_te2, mag2);
    }
    return out;
}

void export_filters_json(const LearningFilters& filters, const std::filesystem::path& path) {
    nlohmann::json j;
    j["alpha"] = filters.alpha;
    j["eta"] = filters.eta;
    j["l1"] = {{"num", filters.l1.num().coeffs()}, {"den", filters.l1.den().coeffs()}};
    j["l2"] = {{"num", filters.l2.num().coeffs()}, {"den", filters.l2.den().coeffs()}};
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    out << j.dump(2) << '\n';
}

void export_diagnostics_csv(const DiagnosticsReport& report, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    out << "omega,te1_minus_alpha_abs,te2_abs\n";
    out.precision(17);
    for (std::size_t i = 0; i < report.omega.size(); ++i) {
        out << report.omega[i] << ',' << report.te1_minus_alpha_abs[i] << ','
            << report.te2_abs[i] << '\n';
    }
}

}  // namespace roadsense::ilc
