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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "core/errors.hpp"
#include "core/lti/transfer_function.hpp"

using roadsense::Error;
using roadsense::ErrorCode;
using roadsense::lti::CombineMode;
using roadsense::lti::Polynomial;
using roadsense::lti::TransferFunction;
using roadsense::lti::tf_combine;

namespace {

TransferFunction first_order_lag() {
    return TransferFunction::from_coeffs({1.0}, {1.0, 1.0});  // 1/(s+1)
}

TransferFunction random_stable_tf(std::mt19937_64& rng, int max_order = 3) {
    std::uniform_real_distribution<double> pole(-8.0, -0.2);
    std::uniform_real_distribution<double> gain(0.2, 3.0);
    const int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_order));
    Polynomial den = Polynomial::constant(1.0);
    for (int i = 0; i < n; ++i) den = den * Polynomial{-pole(rng), 1.0};
    Polynomial num = Polynomial::constant(gain(rng));
    for (int i = 0; i + 1 < n; ++i) {
        if (rng() % 2 == 0) num = num * Polynomial{-pole(rng), 1.0};
    }
    return TransferFunction(num, den);
}

}  // namespace

TEST_CASE("canonical form keeps the denominator monic") {
    const TransferFunction tf = TransferFunction::from_coeffs({4.0}, {2.0, 2.0});
    CHECK(tf.den().leading() == doctest::Approx(1.0));
    CHECK(tf.num().constant_term() == doctest::Approx(2.0));
    CHECK(tf.dc_gain() == doctest::Approx(2.0));
}

TEST_CASE("series combination cancels exact inverse factors") {
    const TransferFunction a = first_order_lag();
    const TransferFunction b = TransferFunction::from_coeffs({1.0, 1.0}, {1.0});  // (s+1)/1
    const TransferFunction c = tf_combine(a, b, CombineMode::series);
    CHECK(c.num().degree() == 0);
    CHECK(c.den().degree() == 0);
    CHECK(c.dc_gain() == doctest::Approx(1.0));
}

TEST_CASE("parallel combination of identical lags doubles the gain") {
    const TransferFunction c = tf_combine(first_order_lag(), first_order_lag(), CombineMode::parallel);
    CHECK(c.den().degree() == 1);
    CHECK(c.num().degree() == 0);
    CHECK(c.dc_gain() == doctest::Approx(2.0));
}

TEST_CASE("unity feedback around an integrator gain") {
    const double k = 3.7;
    const TransferFunction a = TransferFunction::from_coeffs({k}, {0.0, 1.0});  // K/s
    const TransferFunction c = tf_combine(a, TransferFunction::constant(1.0), CombineMode::feedback);
    // K/(s+K)
    CHECK(c.num().degree() == 0);
    CHECK(c.den().degree() == 1);
    CHECK(c.dc_gain() == doctest::Approx(1.0));
    CHECK(c.den().constant_term() == doctest::Approx(k));
}

TEST_CASE("feedback with zero-making closure throws ZeroDenominator") {
    // a = 1, b = -1 gives 1 + ab = 0 identically.
    CHECK_THROWS_AS(
        (void)tf_combine(TransferFunction::constant(1.0), TransferFunction::constant(-1.0),
                         CombineMode::feedback),
        Error);
}

TEST_CASE("inverse swaps numerator and denominator and is an involution") {
    const TransferFunction tf = TransferFunction::from_coeffs({2.0}, {1.0, 1.0});
    const TransferFunction inv = tf.inverse();
    CHECK(inv.relative_degree() == -1);
    CHECK(inv.num().degree() == 1);
    const TransferFunction back = inv.inverse();
    CHECK(back.almost_equal(tf, 1e-14));
    CHECK_THROWS_AS((void)TransferFunction().inverse(), Error);
}

TEST_CASE("dc gain evaluates the constant-term ratio") {
    CHECK(TransferFunction::constant(1.0).dc_gain() == doctest::Approx(1.0));
    const TransferFunction integ = TransferFunction::from_coeffs({1.0}, {0.0, 1.0});
    CHECK_THROWS_AS((void)integ.dc_gain(), Error);
    try {
        (void)integ.dc_gain();
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::PoleAtOrigin);
    }
}

TEST_CASE("frequency response of a first-order lag at its corner") {
    const std::complex<double> h = first_order_lag().freq_response(1.0);
    CHECK(std::abs(h) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(std::arg(h) * 180.0 / std::numbers::pi == doctest::Approx(-45.0));
}

TEST_CASE("frequency response at omega zero equals dc gain when defined") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 10; ++i) {
        const TransferFunction tf = random_stable_tf(rng);
        CHECK(tf.freq_response(0.0).real() == doctest::Approx(tf.dc_gain()));
        CHECK(tf.freq_response(0.0).imag() == doctest::Approx(0.0));
    }
}

TEST_CASE("frequency response on a pole raises PoleOnAxis") {
    const TransferFunction osc = TransferFunction::from_coeffs({1.0}, {4.0, 0.0, 1.0});
    CHECK_THROWS_AS((void)osc.freq_response(2.0), Error);
    CHECK(std::abs(osc.freq_response(1.0)) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("series combination is associative up to canonicalization") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 25; ++trial) {
        const TransferFunction a = random_stable_tf(rng, 2);
        const TransferFunction b = random_stable_tf(rng, 2);
        const TransferFunction c = random_stable_tf(rng, 2);
        const TransferFunction left = tf_combine(tf_combine(a, b, CombineMode::series), c,
                                                 CombineMode::series);
        const TransferFunction right = tf_combine(a, tf_combine(b, c, CombineMode::series),
                                                  CombineMode::series);
        CHECK(left.almost_equal(right, 1e-12));
    }
}

TEST_CASE("parallel combination is commutative") {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 25; ++trial) {
        const TransferFunction a = random_stable_tf(rng, 2);
        const TransferFunction b = random_stable_tf(rng, 2);
        CHECK(tf_combine(a, b, CombineMode::parallel)
                  .almost_equal(tf_combine(b, a, CombineMode::parallel), 1e-12));
    }
}

TEST_CASE("canonicalization is idempotent") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 25; ++trial) {
        const TransferFunction a = random_stable_tf(rng);
        const TransferFunction b = random_stable_tf(rng);
        const TransferFunction once = tf_combine(a, b, CombineMode::series);
        const TransferFunction twice = once.simplified();
        CHECK(once.almost_equal(twice, 1e-12));
    }
}

TEST_CASE("simplified collapses repeated common factors") {
    // (s+2)^2 (s+5) / [(s+2)^2 (s+7)] -> (s+5)/(s+7)
    const Polynomial sq = Polynomial{2.0, 1.0} * Polynomial{2.0, 1.0};
    const TransferFunction tf(sq * Polynomial{5.0, 1.0}, sq * Polynomial{7.0, 1.0});
    const TransferFunction simple = tf.simplified();
    CHECK(simple.num().degree() == 1);
    CHECK(simple.den().degree() == 1);
    CHECK(simple.dc_gain() == doctest::Approx(5.0 / 7.0));
}

TEST_CASE("simplified leaves distinct nearby-but-separate roots alone") {
    const TransferFunction tf(Polynomial{1.001, 1.0}, Polynomial{1.0, 1.0});
    const TransferFunction simple = tf.simplified();
    CHECK(simple.num().degree() == 1);
    CHECK(simple.den().degree() == 1);
}

TEST_CASE("bode export writes the expected header and row count") {
    namespace fs = std::filesystem;
    const fs::path path = fs::temp_directory_path() / "roadsense_bode_test.csv";
    const auto omegas = roadsense::lti::log_space(0.1, 100.0, 20);
    roadsense::lti::export_bode_csv(first_order_lag(), omegas, path);
    std::ifstream in(path);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "omega_rad_s,magnitude_db,phase_deg");
    int rows = 0;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 20);
    fs::remove(path);
}
