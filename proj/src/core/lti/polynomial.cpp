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

#include "core/lti/polynomial.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "core/errors.hpp"

namespace roadsense::lti {

namespace {

// Coefficients smaller than this (relative to the largest) are treated as
// exact zeros when trimming the leading end.
constexpr double kTrimRel = 1e-14;

}  // namespace

Polynomial::Polynomial(std::initializer_list<double> ascending)
    : coeffs_(ascending) {
    trim();
}

Polynomial::Polynomial(std::vector<double> ascending) : coeffs_(std::move(ascending)) {
    trim();
}

Polynomial Polynomial::constant(double value) {
    return Polynomial{value};
}

Polynomial Polynomial::variable() {
    return Polynomial{0.0, 1.0};
}

Polynomial Polynomial::from_roots(const std::vector<std::complex<double>>& roots, double lead,
                                  double imag_tol) {
    std::vector<std::complex<double>> c{lead};
    for (const auto& r : roots) {
        std::vector<std::complex<double>> next(c.size() + 1, 0.0);
        for (size_t i = 0; i < c.size(); ++i) {
            next[i + 1] += c[i];
            next[i] -= c[i] * r;
        }
        c = std::move(next);
    }
    std::vector<double> real_coeffs(c.size());
    double scale = 0.0;
    for (const auto& v : c) scale = std::max(scale, std::abs(v));
    for (size_t i = 0; i < c.size(); ++i) {
        if (std::abs(c[i].imag()) > imag_tol * std::max(1.0, scale)) {
            throw Error(ErrorCode::InvalidParams,
                        "from_roots: roots are not closed under conjugation");
        }
        real_coeffs[i] = c[i].real();
    }
    return Polynomial(std::move(real_coeffs));
}

double Polynomial::max_abs_coeff() const {
    double m = 0.0;
    for (double c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

double Polynomial::eval(double s) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
    return acc;
}

std::complex<double> Polynomial::eval(std::complex<double> s) const {
    std::complex<double> acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
    return acc;
}

double Polynomial::eval_scale(double abs_s) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * abs_s + std::abs(*it);
    return acc;
}

std::vector<std::complex<double>> Polynomial::roots() const {
    const int n = degree();
    if (n <= 0) return {};

    // Monic normalized copy to keep the companion matrix well scaled.
    Eigen::VectorXd monic(n);
    for (int i = 0; i < n; ++i) monic[i] = coeffs_[i] / coeffs_.back();

    // Variable scaling s = sigma * x with sigma near the Cauchy root bound;
    // polynomials whose roots span several decades produce companion
    // matrices too imbalanced for balancing alone.
    double sigma = 0.0;
    for (int i = 0; i < n; ++i) {
        if (monic[i] != 0.0)
            sigma = std::max(sigma, std::pow(std::abs(monic[i]), 1.0 / (n - i)));
    }
    if (sigma <= 0.0) sigma = 1.0;
    sigma = std::clamp(sigma, 1e-6, 1e9);
    double power = 1.0;
    for (int i = n - 1; i >= 0; --i) {
        power *= sigma;  // sigma^(n-i)
        monic[i] /= power;
    }

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n - 1; ++i) companion(i + 1, i) = 1.0;
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -monic[i];

    // Parlett–Reinsch style balancing: diagonal similarity with powers of two
    // until row and column norms are roughly equal. Companion matrices of
    // polynomials with widely spread coefficients need this for accurate
    // eigenvalues.
    bool converged = false;
    while (!converged) {
        converged = true;
        for (int i = 0; i < n; ++i) {
            double row = 0.0, col = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                row += std::abs(companion(i, j));
                col += std::abs(companion(j, i));
            }
            if (row == 0.0 || col == 0.0) continue;
            double f = 1.0;
            const double s = row + col;
            while (col < row / 2.0) {
                col *= 2.0;
                row /= 2.0;
                f *= 2.0;
            }
            while (col > row * 2.0) {
                col /= 2.0;
                row *= 2.0;
                f /= 2.0;
            }
            if (row + col < 0.95 * s) {
                converged = false;
                companion.row(i) /= f;
                companion.col(i) *= f;
            }
        }
    }

    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
    std::vector<std::complex<double>> out(n);
    for (int i = 0; i < n; ++i) out[i] = sigma * solver.eigenvalues()[i];
    return out;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
    std::vector<double> out(std::max(coeffs_.size(), other.coeffs_.size()), 0.0);
    for (size_t i = 0; i < coeffs_.size(); ++i) out[i] += coeffs_[i];
    for (size_t i = 0; i < other.coeffs_.size(); ++i) out[i] += other.coeffs_[i];
    return Polynomial(std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
    std::vector<double> out(std::max(coeffs_.size(), other.coeffs_.size()), 0.0);
    for (size_t i = 0; i < coeffs_.size(); ++i) out[i] += coeffs_[i];
    for (size_t i = 0; i < other.coeffs_.size(); ++i) out[i] -= other.coeffs_[i];
    return Polynomial(std::move(out));
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
    if (is_zero() || other.is_zero()) return Polynomial();
    const int result_degree = degree() + other.degree();
    if (result_degree > kMaxDegree) {
        throw Error(ErrorCode::DegreeCapExceeded,
                    "product degree " + std::to_string(result_degree) + " exceeds cap " +
                        std::to_string(kMaxDegree));
    }
    std::vector<double> out(coeffs_.size() + other.coeffs_.size() - 1, 0.0);
    for (size_t i = 0; i < coeffs_.size(); ++i)
        for (size_t j = 0; j < other.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * other.coeffs_[j];
    return Polynomial(std::move(out));
}

Polynomial Polynomial::operator*(double scalar) const {
    if (scalar == 0.0) return Polynomial();
    std::vector<double> out = coeffs_;
    for (double& c : out) c *= scalar;
    return Polynomial(std::move(out));
}

bool Polynomial::almost_equal(const Polynomial& other, double rel_tol) const {
    const double scale = std::max(max_abs_coeff(), other.max_abs_coeff());
    if (scale == 0.0) return true;
    const size_t n = std::max(coeffs_.size(), other.coeffs_.size());
    for (size_t i = 0; i < n; ++i) {
        const double a = i < coeffs_.size() ? coeffs_[i] : 0.0;
        const double b = i < other.coeffs_.size() ? other.coeffs_[i] : 0.0;
        if (std::abs(a - b) > rel_tol * scale) return false;
    }
    return true;
}

void Polynomial::trim() {
    const double scale = max_abs_coeff();
    while (!coeffs_.empty() && std::abs(coeffs_.back()) <= kTrimRel * scale) coeffs_.pop_back();
    if (coeffs_.size() == 1 && coeffs_[0] == 0.0) coeffs_.clear();
}

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
    return a * b;
}

}  // namespace roadsense::lti
