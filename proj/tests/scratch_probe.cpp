// Temporary calibration probe; not part of the shipped test suite.
#include <cmath>
#include <complex>
#include <cstdio>

#include "core/ilc/learning.hpp"
#include "core/lti/state_space.hpp"
#include "core/observer/dob.hpp"
#include "core/vehicle/quarter_car.hpp"

using namespace roadsense;
using ilc::SharedRecord;
using lti::SignalTrace;
using lti::TransferFunction;
using observer::AgentLoop;
using observer::QFilterSpec;
using vehicle::PidGains;
using vehicle::VehicleParams;

static VehicleParams row(int j) {
    const double beta = 1.0 / 15.0;
    return VehicleParams{2.45 + beta * j, 1.0 + beta * j, 950.0 + 100.0 * beta * j,
                         1250.0 + 100.0 * beta * j, 7.5 + beta * j, 5.0 + beta * j};
}
static PidGains pid_row(int j) {
    const double beta = 1.0 / 15.0;
    return PidGains{1500.0 + 30.0 * beta * j, 200.0 + beta * j, 500.0 + 15.0 * beta * j};
}

int main() {
    const QFilterSpec q{};
    SharedRecord prev;
    prev.agent_index = 1;
    prev.e_trace = SignalTrace::zeros(1e-3, 16);
    prev.df_trace = SignalTrace::zeros(1e-3, 16);
    prev.nominal = row(10);
    prev.pid = pid_row(10);
    prev.q = q;

    // identical nominal agents, alpha = eta -> L1 = 0, L2 = alpha
    {
        auto f = ilc::synth_filters(prev, row(10), pid_row(10), q, 1.0);
        printf("identical, alpha=eta=1: L1 deg %d/%d max|num| %.3e ; L2 deg %d/%d\n",
               f.l1.num().degree(), f.l1.den().degree(), f.l1.num().max_abs_coeff(),
               f.l2.num().degree(), f.l2.den().degree());
    }
    // identical nominal agents, alpha != eta
    {
        auto f = ilc::synth_filters(prev, row(10), pid_row(10), q, 0.5);
        printf("identical, alpha=0.5: L1 %d/%d reldeg %d; L2 %d/%d L2(0)=%.6f\n",
               f.l1.num().degree(), f.l1.den().degree(), f.l1.relative_degree(),
               f.l2.num().degree(), f.l2.den().degree(),
               f.l2.is_zero() ? 0.0 : f.l2.dc_gain());
    }
    // adjacent rows
    {
        auto f = ilc::synth_filters(prev, row(11), pid_row(11), q, 0.5);
        printf("adjacent 10->11: eta=%.6f L1 %d/%d reldeg %d; L2 %d/%d |L2-eta|dc=%.3e\n",
               f.eta, f.l1.num().degree(), f.l1.den().degree(), f.l1.relative_degree(),
               f.l2.num().degree(), f.l2.den().degree(), std::abs(f.l2.dc_gain() - f.eta));
        // L2 should be ~constant eta
        double worst = 0.0;
        for (double w : lti::log_space(0.1, 50.0, 30))
            worst = std::max(worst, std::abs(f.l2.freq_response(w) - f.eta));
        printf("  max |L2(iw)-eta| over band: %.3e\n", worst);

        AgentLoop loop_prev(row(10), row(10), pid_row(10), q, 1e-3);
        AgentLoop loop_cur(row(11), row(11), pid_row(11), q, 1e-3);
        auto diag = ilc::contraction_diagnostics(loop_prev, loop_cur, f);
        printf("  zero-unc diagnostics: te1 %d/%d te2 %d/%d max|te1-a|=%.4e max|te2|=%.4e\n",
               diag.te1.num().degree(), diag.te1.den().degree(), diag.te2.num().degree(),
               diag.te2.den().degree(), diag.report.max_te1_minus_alpha, diag.report.max_te2);
    }
    // 10% uncertainty diagnostics (degree/cap check)
    {
        VehicleParams nom_prev = row(10), nom_cur = row(40);
        nom_prev.k_s *= 1.1; nom_prev.m_us *= 0.93; nom_prev.c_s *= 1.04;
        nom_cur.k_s *= 0.91; nom_cur.k_us *= 1.06; nom_cur.m_s *= 1.05;
        SharedRecord p2 = prev;
        p2.nominal = nom_prev;
        auto f = ilc::synth_filters(p2, nom_cur, pid_row(40), q, 0.5);
        printf("unc: L1 %d/%d ; L2 %d/%d\n", f.l1.num().degree(), f.l1.den().degree(),
               f.l2.num().degree(), f.l2.den().degree());
        AgentLoop loop_prev(row(10), nom_prev, pid_row(10), q, 1e-3);
        AgentLoop loop_cur(row(40), nom_cur, pid_row(40), q, 1e-3);
        auto diag = ilc::contraction_diagnostics(loop_prev, loop_cur, f);
        printf("  te1 %d/%d te2 %d/%d max|te1-a|=%.4f max|te2|=%.4f\n",
               diag.te1.num().degree(), diag.te1.den().degree(), diag.te2.num().degree(),
               diag.te2.den().degree(), diag.report.max_te1_minus_alpha, diag.report.max_te2);
    }
    // offline filter: differentiator on sin(5t)
    {
        const double dt = 1e-3;
        const std::size_t n = 10000;
        SignalTrace x = SignalTrace::zeros(dt, n);
        for (std::size_t k = 0; k < n; ++k) x.samples[k] = std::sin(5.0 * dt * k);
        TransferFunction s = TransferFunction::from_coeffs({0.0, 1.0}, {1.0});
        SignalTrace y = ilc::apply_filter_offline(s, x);
        double worst = 0.0;
        for (std::size_t k = n / 4; k < 3 * n / 4; ++k) {
            const double want = 5.0 * std::cos(5.0 * dt * k);
            worst = std::max(worst, std::abs(y.samples[k] - want) / 5.0);
        }
        printf("differentiator interior relative error: %.4e\n", worst);
    }
    // two-agent contraction sanity: exact models, consecutive rows
    {
        const double dt = 1e-3;
        const std::size_t n = 10000;
        SignalTrace road = SignalTrace::zeros(dt, n);
        for (std::size_t k = 0; k < n; ++k) road.samples[k] = 0.015 * std::sin(5.0 * dt * k);

        double prev_ed = 0.0;
        SharedRecord rec;
        SignalTrace df = SignalTrace::zeros(dt, n);
        for (int pos = 1; pos <= 8; ++pos) {
            const int j = pos;
            AgentLoop loop(row(j), row(j), pid_row(j), q, dt);
            if (pos > 1) {
                auto filt = ilc::synth_filters(rec, row(j), pid_row(j), q, 0.5);
                df = ilc::make_learning_signal(filt, rec);
            }
            auto log = observer::run_agent(loop, road, df);
            const SignalTrace ed = log.d - log.d_hat;
            const double norm = ed.l2_norm(0.5);
            printf("agent %d: |e_d| = %.6e ratio %.4f rmse_mm %.3f\n", pos, norm,
                   prev_ed > 0 ? norm / prev_ed : 0.0,
                   1e3 * (log.z_r_hat - road).rms(0.5));
            prev_ed = norm;
            rec.agent_index = pos;
            rec.e_trace = log.e;
            rec.df_trace = df;
            rec.nominal = row(j);
            rec.pid = pid_row(j);
            rec.q = q;
        }
    }
    return 0;
}
