// SPDX-License-Identifier: Apache-2.0
//
// fadesec - Monte Carlo key-rate analysis for fading-channel secret keys
// Copyright (C) 2026 The fadesec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <catch2/catch_amalgamated.hpp>

#include "fadesec/special_math.hpp"
#include "fadesec/random.hpp"

#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <limits>
#include <vector>

using namespace fadesec;

namespace
{
    // Truncated power series sum_k (-1)^k (x/2)^(2k+n) / (k! (k+n)!) in long double, 60 terms
    double series_oracle(double x, int n)
    {
        long double half = (long double)x / 2.0L;
        long double term = 1.0L;
        for (int i = 1; i <= n; ++i)
            term *= half / (long double)i;
        long double sum = term;
        for (int k = 1; k < 60; ++k)
        {
            term *= -half * half / ((long double)k * (long double)(k + n));
            sum += term;
        }
        return double(sum);
    }

    double bisect_root(double lo, double hi, int order)
    {
        for (int i = 0; i < 200; ++i)
        {
            const double mid = 0.5 * (lo + hi);
            if ((series_oracle(lo, order) < 0.0) == (series_oracle(mid, order) < 0.0))
                lo = mid;
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    }
}

TEST_CASE("bessel_j0 - reference values")
{
    CHECK(bessel_j0(0.0) == 1.0);
    CHECK(std::abs(bessel_j0(1.0) - 0.7651976866) < 1e-10);
    CHECK(std::abs(bessel_j0(1.0) - series_oracle(1.0, 0)) < 1e-14);

    const double root = bisect_root(2.0, 3.0, 0);
    CHECK(std::abs(root - 2.4048255577) < 1e-9);
    CHECK(std::abs(bessel_j0(2.4048255577)) < 1e-8);
    CHECK(std::abs(bessel_j0(-1.0) - bessel_j0(1.0)) == 0.0);
}

TEST_CASE("bessel_j1 - reference values")
{
    CHECK(bessel_j1(0.0) == 0.0);
    CHECK(std::abs(bessel_j1(1.0) - 0.4400505857) < 1e-10);

    const double root = bisect_root(3.0, 4.5, 1);
    CHECK(std::abs(root - 3.8317059702) < 1e-9);
    CHECK(std::abs(bessel_j1(3.8317059702)) < 1e-8);
}

TEST_CASE("bessel - agrees with the series oracle on the series range")
{
    double worst0 = 0.0, worst1 = 0.0;
    for (double x = -12.0; x <= 12.0; x += 0.0137)
    {
        worst0 = std::max(worst0, std::abs(bessel_j0(x) - series_oracle(x, 0)));
        worst1 = std::max(worst1, std::abs(bessel_j1(x) - series_oracle(x, 1)));
    }
    CHECK(worst0 < 1e-9);
    CHECK(worst1 < 1e-9);
}

TEST_CASE("bessel - agrees with Boost.Math up to |x| = 100")
{
    double worst0 = 0.0, worst1 = 0.0;
    for (double x = 0.0; x <= 100.0; x += 0.01)
    {
        worst0 = std::max(worst0, std::abs(bessel_j0(x) - boost::math::cyl_bessel_j(0, x)));
        worst1 = std::max(worst1, std::abs(bessel_j1(x) - boost::math::cyl_bessel_j(1, x)));
        worst1 = std::max(worst1, std::abs(bessel_j1(-x) + boost::math::cyl_bessel_j(1, x)));
    }
    CHECK(worst0 < 1e-9);
    CHECK(worst1 < 1e-9);
}

TEST_CASE("bessel - branches agree at the switch point")
{
    const double x = bessel_series_limit;
    const double above = std::nextafter(x, 100.0);
    CHECK(std::abs(bessel_j0(x) - bessel_j0(above)) < 1e-9);
    CHECK(std::abs(bessel_j1(x) - bessel_j1(above)) < 1e-9);
    CHECK(std::abs(bessel_j0(above) - series_oracle(above, 0)) < 1e-9);
    CHECK(std::abs(bessel_j1(above) - series_oracle(above, 1)) < 1e-9);
}

TEST_CASE("bessel - bounds and recurrence")
{
    auto rng = make_stream(7, StreamId::validation, 0);
    std::uniform_real_distribution<double> u(0.0, 100.0);
    for (int i = 0; i < 20000; ++i)
    {
        const double x = u(rng);
        REQUIRE(std::abs(bessel_j0(x)) <= 1.0);
        REQUIRE(std::abs(bessel_j1(x)) <= 0.6);
        REQUIRE(bessel_j1(-x) == -bessel_j1(x));
    }

    // J0 + J2 = 2 J1 / x with J2 from the oracle
    for (double x = 0.05; x <= 12.0; x += 0.05)
        REQUIRE(std::abs(bessel_j0(x) + series_oracle(x, 2) - 2.0 * bessel_j1(x) / x) < 1e-7);
}

TEST_CASE("bessel - rejects non-finite input")
{
    CHECK_THROWS_AS(bessel_j0(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
    CHECK_THROWS_AS(bessel_j1(std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST_CASE("rayleigh - cdf and quantile")
{
    const auto unit = RayleighParams::unit_power();
    CHECK(rayleigh_cdf(0.0, unit) == 0.0);
    CHECK(std::abs(rayleigh_quantile(0.5, unit) - 0.8325546112) < 1e-10);
    CHECK(std::abs(rayleigh_quantile(0.5, unit) - std::sqrt(std::log(2.0))) < 1e-15);
    CHECK(std::abs(unit.median() - rayleigh_quantile(0.5, unit)) < 1e-15);
    CHECK(std::abs(rayleigh_cdf(rayleigh_quantile(0.9, unit), unit) - 0.9) < 1e-14);

    for (double sigma : {0.3, std::sqrt(0.5), 2.0})
    {
        const RayleighParams p(sigma);
        for (double r = 1e-3 * sigma; r <= 6.0 * sigma; r += 0.01 * sigma)
            REQUIRE(std::abs(rayleigh_quantile(rayleigh_cdf(r, p), p) - r) <= 1e-10 * r);
    }

    CHECK_THROWS_AS(rayleigh_quantile(1.0, unit), std::domain_error);
    CHECK_THROWS_AS(rayleigh_quantile(-0.1, unit), std::domain_error);
    CHECK_THROWS_AS(RayleighParams(0.0), std::invalid_argument);
}

TEST_CASE("ks_statistic - small cases")
{
    const std::vector<double> one{0.5};
    CHECK(ks_statistic(one, [](double x)
                       { return x; }) == Catch::Approx(0.5));

    const std::vector<double> a{1.0, 2.0, 3.0}, b{1.0, 2.0, 3.0}, c{10.0, 11.0};
    CHECK(ks_statistic_two_sample(a, b) == 0.0);
    CHECK(ks_statistic_two_sample(a, c) == 1.0);
    CHECK_THROWS_AS(ks_statistic(std::vector<double>{}, [](double x)
                                 { return x; }),
                    std::invalid_argument);
}
