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

#include "core/report/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "core/errors.hpp"
#include "core/fleet/fleet.hpp"
#include "core/io/csv.hpp"

namespace roadsense::report {

using lti::SignalTrace;

double rmse_mm(const SignalTrace& estimate, const SignalTrace& truth, double skip_s) {
    if (estimate.size() != truth.size() || estimate.dt != truth.dt) {
        throw Error(ErrorCode::DimensionMismatch, "estimate and truth traces must align");
    }
    if (skip_s >= estimate.duration()) {
        throw Error(ErrorCode::DimensionMismatch, "skip exceeds the trace duration");
    }
    const std::size_t start = estimate.skip_index(skip_s);
    double acc = 0.0;
    for (std::size_t k = start; k < estimate.size(); ++k) {
        const double d = estimate.samples[k] - truth.samples[k];
        acc += d * d;
    }
    return 1e3 * std::sqrt(acc / static_cast<double>(estimate.size() - start));
}

ConvergenceFit convergence_fit(std::span<const double> rmse_series) {
    const std::size_t n = rmse_series.size();
    if (n < 10) throw Error(ErrorCode::InvalidParams, "need at least ten points to fit");

    double lo = rmse_series[0], hi = rmse_series[0], mean = 0.0;
    for (double v : rmse_series) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        mean += v;
    }
    mean /= static_cast<double>(n);
    if (hi - lo <= 1e-12 * std::max(1.0, hi)) {
        throw Error(ErrorCode::DegenerateFit, "series is constant");
    }

    // Inner linear least squares for (floor, c) given the rate; outer golden
    // search on the rate. The sum-of-squares is smooth and single-dipped for
    // geometric-decay-plus-floor data.
    auto sse_for = [&](double rate, double* floor_out, double* c_out) {
        double s1 = static_cast<double>(n), sr = 0.0, srr = 0.0, sy = 0.0, sry = 0.0;
        double rk = 1.0;
        for (std::size_t k = 0; k < n; ++k) {
            sr += rk;
            srr += rk * rk;
            sy += rmse_series[k];
            sry += rk * rmse_series[k];
            rk *= rate;
        }
        const double det = s1 * srr - sr * sr;
        if (std::abs(det) < 1e-300) return std::numeric_limits<double>::max();
        const double floor = (srr * sy - sr * sry) / det;
        const double c = (s1 * sry - sr * sy) / det;
        double sse = 0.0;
        rk = 1.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double e = rmse_series[k] - floor - c * rk;
            sse += e * e;
            rk *= rate;
        }
        if (floor_out) *floor_out = floor;
        if (c_out) *c_out = c;
        return sse;
    };

    double best_rate = 0.5, best_sse = std::numeric_limits<double>::max();
    for (double rate = 0.005; rate < 0.9999; rate += 0.005) {
        const double sse = sse_for(rate, nullptr, nullptr);
        if (sse < best_sse) {
            best_sse = sse;
            best_rate = rate;
        }
    }
    double a = std::max(1e-4, best_rate - 0.005), b = std::min(0.99999, best_rate + 0.005);
    for (int iter = 0; iter < 60; ++iter) {
        const double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
        if (sse_for(m1, nullptr, nullptr) < sse_for(m2, nullptr, nullptr)) {
            b = m2;
        } else {
            a = m1;
        }
    }
    ConvergenceFit fit;
    fit.rate = 0.5 * (a + b);
    const double sse = sse_for(fit.rate, &fit.floor_mm, nullptr);
    double total = 0.0;
    for (double v : rmse_series) total += (v - mean) * (v - mean);
    fit.r2 = total > 0.0 ? 1.0 - sse / total : 0.0;
    return fit;
}

void write_svg_chart(const std::filesystem::path& path, const std::string& title,
                     const std::vector<std::pair<std::string, std::vector<double>>>& series,
                     const std::vector<double>& x) {
    constexpr int kWidth = 800, kHeight = 500;
    constexpr int kLeft = 60, kRight = 20, kTop = 40, kBottom = 40;
    static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf"};

    double ymin = 0.0, ymax = 1.0, xmin = 0.0, xmax = 1.0;
    bool first = true;
    for (const auto& [name, ys] : series) {
        for (double v : ys) {
            if (first) {
                ymin = ymax = v;
                first = false;
            }
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    }
    if (!x.empty()) {
        xmin = x.front();
        xmax = x.back();
    }
    if (ymax - ymin < 1e-300) ymax = ymin + 1.0;
    if (xmax - xmin < 1e-300) xmax = xmin + 1.0;

    auto px = [&](double v) {
        return kLeft + (v - xmin) / (xmax - xmin) * (kWidth - kLeft - kRight);
    };
    auto py = [&](double v) {
        return kHeight - kBottom - (v - ymin) / (ymax - ymin) * (kHeight - kTop - kBottom);
    };

    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
        << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
        << title << "</text>\n"
        << "<line x1=\"" << kLeft << "\" y1=\"" << kHeight - kBottom << "\" x2=\""
        << kWidth - kRight << "\" y2=\"" << kHeight - kBottom
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n"
        << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
        << kHeight - kBottom << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out.precision(10);
    out << "<text x=\"" << kLeft << "\" y=\"" << kHeight - kBottom + 16
        << "\" font-size=\"11\">" << xmin << "</text>\n"
        << "<text x=\"" << kWidth - kRight << "\" y=\"" << kHeight - kBottom + 16
        << "\" text-anchor=\"end\" font-size=\"11\">" << xmax << "</text>\n"
        << "<text x=\"" << kLeft - 6 << "\" y=\"" << kHeight - kBottom
        << "\" text-anchor=\"end\" font-size=\"11\">" << ymin << "</text>\n"
        << "<text x=\"" << kLeft - 6 << "\" y=\"" << kTop + 6
        << "\" text-anchor=\"end\" font-size=\"11\">" << ymax << "</text>\n";

    int color = 0;
    int legend_y = kTop;
    for (const auto& [name, ys] : series) {
        out << "<polyline fill=\"none\" stroke=\"" << kColors[color % 7]
            << "\" stroke-width=\"1.2\" points=\"";
        const std::size_t stride = std::max<std::size_t>(1, ys.size() / 4000);
        for (std::size_t i = 0; i < ys.size(); i += stride) {
            const double xv = i < x.size() ? x[i] : static_cast<double>(i);
            out << px(xv) << ',' << py(ys[i]) << ' ';
        }
        out << "\"/>\n";
        out << "<text x=\"" << kWidth - kRight - 4 << "\" y=\"" << legend_y
            << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << kColors[color % 7] << "\">"
            << name << "</text>\n";
        legend_y += 16;
        ++color;
    }
    out << "</svg>\n";
}

void emit_figures(const fleet::FleetResults& results, const std::filesystem::path& out_dir,
                  std::span<const int> selected_positions) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot create " + out_dir.string());

    const std::size_t n_samples = results.road.size();
    std::vector<double> t(n_samples);
    for (std::size_t k = 0; k < n_samples; ++k)
        t[k] = results.road.dt * static_cast<double>(k);

    // Per-agent estimate vs truth and learning signals for the selection.
    for (int position : selected_positions) {
        if (position < 1 || position > static_cast<int>(results.agents.size())) continue;
        const auto& agent = results.agents[static_cast<std::size_t>(position - 1)];

        io::CsvWriter est(out_dir / ("estimate_vs_truth_agent_" + std::to_string(position) +
                                     ".csv"),
                          {"t", "z_r", "z_r_hat"});
        for (std::size_t k = 0; k < n_samples; ++k) {
            est.row({t[k], results.road.samples[k], agent.log.z_r_hat.samples[k]});
        }
        write_svg_chart(out_dir / ("estimate_vs_truth_agent_" + std::to_string(position) +
                                   ".svg"),
                        "road estimate vs truth, agent " + std::to_string(position),
                        {{"z_r", results.road.samples}, {"z_r_hat", agent.log.z_r_hat.samples}},
                        t);

        io::CsvWriter sig(out_dir / ("learning_signal_agent_" + std::to_string(position) +
                                     ".csv"),
                          {"t", "d_f"});
        for (std::size_t k = 0; k < n_samples; ++k) sig.row({t[k], agent.log.d_f.samples[k]});
        write_svg_chart(out_dir / ("learning_signal_agent_" + std::to_string(position) + ".svg"),
                        "learning signal, agent " + std::to_string(position),
                        {{"d_f", agent.log.d_f.samples}}, t);
    }

    // Error level per cascade slot.
    {
        io::CsvWriter rmse(out_dir / "rmse_vs_agent.csv", {"position", "j", "rmse_mm"});
        std::vector<double> positions, values;
        for (const auto& agent : results.agents) {
            rmse.row({static_cast<double>(agent.position), static_cast<double>(agent.j),
                      agent.rmse_mm});
            positions.push_back(agent.position);
            values.push_back(agent.rmse_mm);
        }
        write_svg_chart(out_dir / "rmse_vs_agent.svg", "road-estimate rmse per agent",
                        {{"rmse_mm", values}}, positions);
    }

    // First versus last agent estimation error.
    {
        const auto& first = results.agents.front();
        const auto& last = results.agents.back();
        std::vector<double> first_err(n_samples), last_err(n_samples);
        for (std::size_t k = 0; k < n_samples; ++k) {
            first_err[k] = 1e3 * (first.log.z_r_hat.samples[k] - results.road.samples[k]);
            last_err[k] = 1e3 * (last.log.z_r_hat.samples[k] - results.road.samples[k]);
        }
        io::CsvWriter err(out_dir / "first_last_error.csv",
                          {"t", "first_agent_error_mm", "last_agent_error_mm"});
        for (std::size_t k = 0; k < n_samples; ++k) err.row({t[k], first_err[k], last_err[k]});
        write_svg_chart(out_dir / "first_last_error.svg",
                        "road-estimate error, first vs last agent",
                        {{"first_mm", first_err}, {"last_mm", last_err}}, t);
    }
}

}  // namespace roadsense::report
