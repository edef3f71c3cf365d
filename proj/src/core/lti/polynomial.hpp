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
#include <initializer_list>
#include <vector>

namespace roadsense::lti {

/// Real polynomial in the Laplace variable with coefficients stored in
/// ascending powers. The zero polynomial is the empty coefficient list and
/// reports degree() == -1 (conceptually degree minus infinity). Nonzero
/// polynomials keep a nonzero leading (last) coefficient.
class Polynomial {
  public:
    /// Degree growth across compositions is capped; exceeding the cap throws
    /// DegreeCapExceeded so runaway closures fail loudly instead of drifting
    /// into ill-conditioned arithmetic.
    static constexpr int kMaxDegree = 40;

    Polynomial() = default;  // zero polynomial
    Polynomial(std::initializer_list<double> ascending);
    explicit Polynomial(std::vector<double> ascending);

    static Polynomial constant(double value);
    /// The polynomial "s".
    static Polynomial variable();
    /// Builds lead * prod (s - r_i). Roots must come in conjugate pairs (or be
    /// real up to `imag_tol`); the result is coerced to real coefficients.
    static Polynomial from_roots(const std::vector<std::complex<double>>& roots, double lead,
                                 double imag_tol = 1e-7);

    const std::vector<double>& coeffs() const { return coeffs_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    double leading() const { return coeffs_.empty() ? 0.0 : coeffs_.back(); }
    double constant_term() const { return coeffs_.empty() ? 0.0 : coeffs_.front(); }
    /// Largest absolute coefficient (0 for the zero polynomial).
    double max_abs_coeff() const;

    double eval(double s) const;
    std::complex<double> eval(std::complex<double> s) const;
    /// Scale bound sum_i |c_i| |s|^i, used for relative smallness tests of
    /// evaluations near roots.
    double eval_scale(double abs_s) const;

    /// All complex roots, via a balanced companion matrix.
    std::vector<std::complex<double>> roots() const;

    Polynomial operator+(const Polynomial& other) const;
    Polynomial operator-(const Polynomial& other) const;
    Polynomial operator*(const Polynomial& other) const;
    Polynomial operator*(double scalar) const;
    Polynomial operator-() const { return *this * -1.0; }

    bool almost_equal(const Polynomial& other, double rel_tol) const;

  private:
    void trim();

    std::vector<double> coeffs_;
};

/// Convolution of coefficient lists; degree adds for nonzero inputs.
Polynomial poly_mul(const Polynomial& a, const Polynomial& b);

}  // namespace roadsense::lti
