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

#include <complex>
#include <filesystem>
#include <vector>

#include "core/lti/polynomial.hpp"

namespace roadsense::lti {

enum class CombineMode { series, parallel, feedback };

/// Rational function num/den in the Laplace variable. Canonical form: the
/// denominator's leading coefficient is 1 and near-common num/den roots are
/// cancelled (see simplified()). Immutable after construction.
class TransferFunction {
  public:
    /// Default relative root distance below which a numerator root and a
    /// denominator root are treated as a common factor and cancelled.
    static constexpr double kCancelTol = 1e-9;

    TransferFunction();  // the zero function 0/1
    TransferFunction(Polynomial num, Polynomial den);

    static TransferFunction constant(double value);
    static TransferFunction from_coeffs(std::vector<double> num_ascending,
                                        std::vector<double> den_ascending);

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }

    /// deg(den) - deg(num). Negative means improper. The zero function
    /// reports a large positive value (it is proper).
    int relative_degree() const;
    bool is_proper() const { return relative_degree() >= 0; }
    bool is_zero() const { return num_.is_zero(); }

    /// num(0)/den(0); throws PoleAtOrigin when den(0) vanishes.
    double dc_gain() const;
    /// num(iw)/den(iw); throws PoleOnAxis when den(iw) is negligible
    /// relative to its coefficient scale at |iw|.
    std::complex<double> freq_response(double omega) const;

    /// Swaps numerator and denominator. Result may be improper; callers must
    /// check relative_degree() before realization. Throws ZeroNumerator.
    TransferFunction inverse() const;

    /// Cancels near-common num/den roots. Root matching is multiplicity
    /// aware: roots of each polynomial are first collapsed into clusters
    /// (a double root recovered from float coefficients splits by ~sqrt(eps);
    /// the cluster centroid restores it to first order), then cluster
    /// centroids are paired across num/den within `root_tol` relative
    /// distance. When nothing cancels the original coefficients are kept
    /// bit-for-bit; otherwise both polynomials are rebuilt from the surviving
    /// roots.
    TransferFunction simplified(double root_tol = kCancelTol) const;

    TransferFunction operator*(const TransferFunction& other) const;
    TransferFunction operator+(const TransferFunction& other) const;
    TransferFunction operator-(const TransferFunction& other) const;
    TransferFunction operator*(double scalar) const;
    TransferFunction operator-() const { return *this * -1.0; }

    std::vector<std::complex<double>> poles() const { return den_.roots(); }
    std::vector<std::complex<double>> zeros() const { return num_.roots(); }

    bool almost_equal(const TransferFunction& other, double rel_tol = 1e-12) const;

  private:
    void canonicalize();

    Polynomial num_;
    Polynomial den_;
};

/// series = a*b; parallel = a+b; feedback = a/(1+a*b) (negative unity
/// feedback through b). The result is canonicalized with near-common root
/// cancellation under `root_tol`.
TransferFunction tf_combine(const TransferFunction& a, const TransferFunction& b, CombineMode mode,
                            double root_tol = TransferFunction::kCancelTol);

double dc_gain(const TransferFunction& a);
std::complex<double> freq_response(const TransferFunction& a, double omega);
TransferFunction tf_inverse(const TransferFunction& a);

/// Writes CSV with header omega_rad_s,magnitude_db,phase_deg.
void export_bode_csv(const TransferFunction& a, const std::vector<double>& omegas,
                     const std::filesystem::path& path);

/// Log-spaced grid in [lo, hi], endpoints included.
std::vector<double> log_space(double lo, double hi, int count);

}  // namespace roadsense::lti
