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

#include "core/lti/transfer_function.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>

#include "core/errors.hpp"

namespace roadsense::lti {

namespace {

// Radius (relative) for collapsing a polynomial's own roots into multiple
// roots before cross matching. A defective multiple root computed through
// float coefficients splits by a fractional power of machine eps times its
// conditioning (measured up to ~4e-5 for double roots of the closures built
// here), so this sits above that and two orders below physical root
// separations in this domain.
constexpr double kClusterRadius = 2e-4;

double root_scale(const std::complex<double>& r) {
    return std::max(1.0, std::abs(r));
}

// Conjugate-symmetric root bookkeeping: real roots and upper-half-plane
// representatives of conjugate pairs are clustered separately, so any
// cancellation automatically removes full pairs and reconstruction always
// yields real coefficients.
struct RootClusters {
    struct Cluster {
        std::complex<double> centroid;
        int multiplicity = 0;  // pairs count as one
    };
    std::vector<Cluster> reals;
    std::vector<Cluster> pairs;
};

RootClusters cluster_roots(const std::vector<std::complex<double>>& roots) {
    // A real multiple root of even order can split into a tight complex
    // quadruplet, so classification by the imaginary part alone uses the
    // cluster radius, and near-real pair clusters are folded into real ones
    // afterwards.
    std::vector<std::complex<double>> upper;
    std::vector<double> real_list;
    for (const auto& r : roots) {
        if (std::abs(r.imag()) <= kClusterRadius * root_scale(r)) {
            real_list.push_back(r.real());
        } else if (r.imag() > 0.0) {
            upper.push_back(r);
        }
    }

    RootClusters out;
    std::vector<bool> used(real_list.size(), false);
    for (size_t i = 0; i < real_list.size(); ++i) {
        if (used[i]) continue;
        double sum = real_list[i];
        int count = 1;
        used[i] = true;
        for (size_t j = i + 1; j < real_list.size(); ++j) {
            if (used[j]) continue;
            if (std::abs(real_list[j] - real_list[i]) <=
                kClusterRadius * root_scale(real_list[i])) {
                sum += real_list[j];
                ++count;
                used[j] = true;
            }
        }
        out.reals.push_back({{sum / count, 0.0}, count});
    }

    std::vector<bool> pused(upper.size(), false);
    for (size_t i = 0; i < upper.size(); ++i) {
        if (pused[i]) continue;
        std::complex<double> sum = upper[i];
        int count = 1;
        pused[i] = true;
        for (size_t j = i + 1; j < upper.size(); ++j) {
            if (pused[j]) continue;
            if (std::abs(upper[j] - upper[i]) <= kClusterRadius * root_scale(upper[i])) {
                sum += upper[j];
                ++count;
                pused[j] = true;
            }
        }
        const std::complex<double> centroid = sum / static_cast<double>(count);
        // A pair cluster hugging the real axis next to a real cluster is the
        // complex half of a split even-order real root; fold it in.
        bool folded = false;
        if (std::abs(centroid.imag()) <= kClusterRadius * root_scale(centroid)) {
            for (auto& rc : out.reals) {
                if (std::abs(rc.centroid.real() - centroid.real()) <=
                    kClusterRadius * root_scale(centroid)) {
                    rc.multiplicity += 2 * count;
                    folded = true;
                    break;
                }
            }
            if (!folded) {
                out.reals.push_back({{centroid.real(), 0.0}, 2 * count});
                folded = true;
            }
        }
        if (!folded) out.pairs.push_back({centroid, count});
    }
    return out;
}

// Cancels matching clusters between numerator and denominator under the
// given relative tolerance. Returns true when anything cancelled.
bool cancel_clusters(RootClusters& num, RootClusters& den, double tol) {
    bool cancelled = false;
    auto run = [&](std::vector<RootClusters::Cluster>& a,
                   std::vector<RootClusters::Cluster>& b) {
        for (auto& ca : a) {
            for (auto& cb : b) {
                if (ca.multiplicity == 0 || cb.multiplicity == 0) continue;
                if (std::abs(ca.centroid - cb.centroid) <=
                    tol * std::max(root_scale(ca.centroid), root_scale(cb.centroid))) {
                    const int m = std::min(ca.multiplicity, cb.multiplicity);
                    ca.multiplicity -= m;
                    cb.multiplicity -= m;
                    cancelled = cancelled || m > 0;
                }
            }
        }
    };
    run(num.reals, den.reals);
    run(num.pairs, den.pairs);
    return cancelled;
}

std::vector<std::complex<double>> flatten(const RootClusters& clusters) {
    std::vector<std::complex<double>> out;
    for (const auto& c : clusters.reals)
        for (int k = 0; k < c.multiplicity; ++k) out.push_back(c.centroid);
    for (const auto& c : clusters.pairs) {
        for (int k = 0; k < c.multiplicity; ++k) {
            out.push_back(c.centroid);
            out.push_back(std::conj(c.centroid));
        }
    }
    return out;
}

}  // namespace

TransferFunction::TransferFunction() : num_(), den_(Polynomial::constant(1.0)) {}

TransferFunction::TransferFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
    canonicalize();
}

TransferFunction TransferFunction::constant(double value) {
    return TransferFunction(Polynomial::constant(value), Polynomial::constant(1.0));
}

TransferFunction TransferFunction::from_coeffs(std::vector<double> num_ascending,
                                               std::vector<double> den_ascending) {
    return TransferFunction(Polynomial(std::move(num_ascending)),
                            Polynomial(std::move(den_ascending)));
}

int TransferFunction::relative_degree() const {
    if (num_.is_zero()) return Polynomial::kMaxDegree + 1;
    return den_.degree() - num_.degree();
}

double TransferFunction::dc_gain() const {
    const double d0 = den_.constant_term();
    if (std::abs(d0) <= 1e-14 * den_.max_abs_coeff()) {
        throw Error(ErrorCode::PoleAtOrigin, "denominator vanishes at s=0");
    }
    return num_.constant_term() / d0;
}

std::complex<double> TransferFunction::freq_response(double omega) const {
    const std::complex<double> s(0.0, omega);
    const std::complex<double> d = den_.eval(s);
    if (std::abs(d) <= 1e-12 * den_.eval_scale(std::abs(omega))) {
        throw Error(ErrorCode::PoleOnAxis,
                    "denominator negligible at omega=" + std::to_string(omega));
    }
    return num_.eval(s) / d;
}

TransferFunction TransferFunction::inverse() const {
    if (num_.is_zero()) throw Error(ErrorCode::ZeroNumerator, "cannot invert the zero function");
    return TransferFunction(den_, num_);
}

TransferFunction TransferFunction::simplified(double root_tol) const {
    if (num_.is_zero() || num_.degree() == 0 || den_.degree() == 0) return *this;

    RootClusters num_clusters = cluster_roots(num_.roots());
    RootClusters den_clusters = cluster_roots(den_.roots());
    if (!cancel_clusters(num_clusters, den_clusters, root_tol)) return *this;

    const double gain = num_.leading() / den_.leading();
    Polynomial new_num = Polynomial::from_roots(flatten(num_clusters), 1.0);
    Polynomial new_den = Polynomial::from_roots(flatten(den_clusters), 1.0);
    return TransferFunction(new_num * gain, new_den);
}

TransferFunction TransferFunction::operator*(const TransferFunction& other) const {
    if (is_zero() || other.is_zero()) return TransferFunction();
    // Cross-cancel identical factors first; compositions like B^-1 * B reuse
    // the same polynomial objects and never need the root solver.
    const bool cancel_nd = num_.degree() > 0 && num_.almost_equal(other.den_ * (num_.leading() / other.den_.leading()), 1e-13);
    const bool cancel_dn = den_.degree() > 0 && den_.almost_equal(other.num_ * (den_.leading() / other.num_.leading()), 1e-13);
    if (cancel_nd && cancel_dn) {
        const double g = (num_.leading() / other.den_.leading()) *
                         (other.num_.leading() / den_.leading());
        return TransferFunction::constant(g);
    }
    if (cancel_nd) {
        const double g = num_.leading() / other.den_.leading();
        return TransferFunction(other.num_ * g, den_).simplified();
    }
    if (cancel_dn) {
        const double g = other.num_.leading() / den_.leading();
        return TransferFunction(num_ * g, other.den_).simplified();
    }
    // Reduce each numerator against the opposite denominator before
    // multiplying. Cancelling on the operand factors keeps the root solver
    // on small well-conditioned polynomials; root extraction from the
    // expanded product is far less accurate.
    const TransferFunction cross_a = TransferFunction(num_, other.den_).simplified();
    const TransferFunction cross_b = TransferFunction(other.num_, den_).simplified();
    return TransferFunction(cross_a.num_ * cross_b.num_, cross_a.den_ * cross_b.den_);
}

TransferFunction TransferFunction::operator+(const TransferFunction& other) const {
    if (is_zero()) return other;
    if (other.is_zero()) return *this;
    // Denominators matching to the cancellation tolerance are treated as the
    // same factor. Multiplying them out instead would square any repeated
    // root they carry, putting it beyond what cluster matching can repair.
    if (den_.almost_equal(other.den_, kCancelTol)) {
        return TransferFunction(num_ + other.num_, den_).simplified();
    }
    return TransferFunction(num_ * other.den_ + other.num_ * den_, den_ * other.den_).simplified();
}

TransferFunction TransferFunction::operator-(const TransferFunction& other) const {
    return *this + (other * -1.0);
}

TransferFunction TransferFunction::operator*(double scalar) const {
    if (scalar == 0.0) return TransferFunction();
    return TransferFunction(num_ * scalar, den_);
}

bool TransferFunction::almost_equal(const TransferFunction& other, double rel_tol) const {
    return num_.almost_equal(other.num_, rel_tol) && den_.almost_equal(other.den_, rel_tol);
}

void TransferFunction::canonicalize() {
    if (den_.is_zero()) throw Error(ErrorCode::ZeroDenominator, "denominator polynomial is zero");
    if (num_.is_zero()) {
        den_ = Polynomial::constant(1.0);
        return;
    }
    const double lead = den_.leading();
    num_ = num_ * (1.0 / lead);
    den_ = den_ * (1.0 / lead);
}

TransferFunction tf_combine(const TransferFunction& a, const TransferFunction& b, CombineMode mode,
                            double root_tol) {
    switch (mode) {
        case CombineMode::series:
            return (a * b).simplified(root_tol);
        case CombineMode::parallel:
            return (a + b).simplified(root_tol);
        case CombineMode::feedback: {
            // a / (1 + a b), negative unity feedback through b.
            const TransferFunction ab = a * b;
            const Polynomial closure_num = ab.den() * a.num();
            const Polynomial closure_den = (ab.den() + ab.num()) * a.den();
            if (closure_den.is_zero())
                throw Error(ErrorCode::ZeroDenominator, "feedback closure denominator is zero");
            return TransferFunction(closure_num, closure_den).simplified(root_tol);
        }
    }
    throw Error(ErrorCode::InvalidParams, "unknown combine mode");
}

double dc_gain(const TransferFunction& a) {
    return a.dc_gain();
}

std::complex<double> freq_response(const TransferFunction& a, double omega) {
    return a.freq_response(omega);
}

TransferFunction tf_inverse(const TransferFunction& a) {
    return a.inverse();
}

void export_bode_csv(const TransferFunction& a, const std::vector<double>& omegas,
                     const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    out << "omega_rad_s,magnitude_db,phase_deg\n";
    out.precision(17);
    for (double w : omegas) {
        const std::complex<double> h = a.freq_response(w);
        out << w << ',' << 20.0 * std::log10(std::abs(h)) << ','
            << std::arg(h) * 180.0 / std::numbers::pi << '\n';
    }
}

std::vector<double> log_space(double lo, double hi, int count) {
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = lo;
        return out;
    }
    const double llo = std::log10(lo), lhi = std::log10(hi);
    for (int i = 0; i < count; ++i)
        out[i] = std::pow(10.0, llo + (lhi - llo) * i / (count - 1));
    return out;
}

}  // namespace roadsense::lti
