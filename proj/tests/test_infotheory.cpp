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

#include "fadesec/infotheory.hpp"
#include "fadesec/random.hpp"
#include "fadesec/special_math.hpp"

#include <cmath>

using namespace fadesec;

namespace
{
    double h2(double p)
    {
        if (p <= 0.0 || p >= 1.0)
            return 0.0;
        return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
    }

    // Direct sum over the 8 cells, independent of the library's marginal code
    double cmi_oracle(const JointCounts &c)
    {
        const double n = double(c.total());
        double pxz[2][2] = {}, pyz[2][2] = {}, pz[2] = {};
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
                for (int z = 0; z < 2; ++z)
                {
                    const double p = double(c.cell(x, y, z)) / n;
                    pxz[x][z] += p;
                    pyz[y][z] += p;
                    pz[z] += p;
                }
        double sum = 0.0;
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
                for (int z = 0; z < 2; ++z)
                {
                    const double p = double(c.cell(x, y, z)) / n;
                    if (p > 0.0)
                        sum += p * std::log2(p * pz[z] / (pxz[x][z] * pyz[y][z]));
                }
        return sum;
    }

    JointCounts random_table(RandomStream &rng)
    {
        std::uniform_int_distribution<int> u(0, 50);
        JointCounts c;
        for (int i = 0; i < 8; ++i)
            c.add((i >> 2) & 1, (i >> 1) & 1, i & 1, std::uint64_t(u(rng)));
        if (c.total() == 0)
            c.add(0, 0, 0);
        return c;
    }
}

TEST_CASE("JointCounts and accumulate")
{
    JointCounts c;
    c.add(1, 0, 1, 3);
    c.add(0, 0, 0);
    CHECK(c.total() == 4);
    CHECK(c.cell(1, 0, 1) == 3);
    CHECK(c.cells()[5] == 3);
    CHECK_THROWS_AS(c.add(2, 0, 0), std::invalid_argument);

    const std::vector<TrialRecord> records{
        {Symbol::one, Symbol::zero, Symbol::one},
        {Symbol::one, Symbol::zero, Symbol::one},
        {Symbol::zero, Symbol::zero, Symbol::one},
    };
    const auto a = accumulate(records);
    CHECK(a.total() == 3);
    CHECK(a.cell(1, 0, 1) == 2);
    CHECK(a.cell(0, 0, 1) == 1);

    CHECK_THROWS_AS(accumulate(std::vector<TrialRecord>{}), std::invalid_argument);
    const std::vector<TrialRecord> dropped{{Symbol::drop, Symbol::zero, Symbol::one}};
    CHECK_THROWS_AS(accumulate(dropped), std::invalid_argument);
}

TEST_CASE("entropy_of - examples")
{
    JointCounts uniform;
    for (int i = 0; i < 8; ++i)
        uniform.add((i >> 2) & 1, (i >> 1) & 1, i & 1, 5);
    CHECK(entropy_of(uniform, margin::x | margin::y | margin::z) == Catch::Approx(3.0));
    CHECK(entropy_of(uniform, margin::x) == Catch::Approx(1.0));
    CHECK_THROWS_AS(entropy_of(uniform, 0), std::invalid_argument);

    JointCounts point;
    point.add(1, 1, 0, 10);
    CHECK(entropy_of(point, margin::x | margin::y | margin::z) == 0.0);
}

TEST_CASE("conditional_mi - examples")
{
    SECTION("X = Y uniform, Z independent")
    {
        JointCounts c;
        for (int b = 0; b < 2; ++b)
            for (int z = 0; z < 2; ++z)
                c.add(b, b, z, 25);
        CHECK(conditional_mi(c) == Catch::Approx(1.0));
        CHECK(mutual_information(c) == Catch::Approx(1.0));
    }
    SECTION("X = Y = Z")
    {
        JointCounts c;
        c.add(0, 0, 0, 50);
        c.add(1, 1, 1, 50);
        CHECK(std::abs(conditional_mi(c)) < 1e-12);
        CHECK(mutual_information(c) == Catch::Approx(1.0));
    }
    SECTION("independent X and Y")
    {
        JointCounts c;
        for (int i = 0; i < 8; ++i)
            c.add((i >> 2) & 1, (i >> 1) & 1, i & 1, 7);
        CHECK(std::abs(conditional_mi(c)) < 1e-12);
        CHECK(std::abs(mutual_information(c)) < 1e-12);
    }
    SECTION("binary symmetric channel, crossover 0.11")
    {
        // Exact proportions: 1000 samples, X uniform, 11 % flipped, Z constant
        JointCounts c;
        c.add(0, 0, 0, 445);
        c.add(0, 1, 0, 55);
        c.add(1, 1, 0, 445);
        c.add(1, 0, 0, 55);
        CHECK(std::abs(conditional_mi(c) - (1.0 - h2(0.11))) < 1e-12);
        CHECK(std::abs(1.0 - h2(0.11) - 0.500084) < 1e-6);
    }
    SECTION("sampled binary symmetric channel")
    {
        auto rng = make_stream(1, StreamId::validation, 0);
        std::bernoulli_distribution coin(0.5), flip(0.11);
        JointCounts c;
        for (int i = 0; i < 1000000; ++i)
        {
            const int x = coin(rng);
            c.add(x, x ^ int(flip(rng)), coin(rng));
        }
        CHECK(std::abs(conditional_mi(c) - (1.0 - h2(0.11))) < 0.01);
    }
}

TEST_CASE("conditional_mi - identity and divergence forms agree")
{
    auto rng = make_stream(2, StreamId::validation, 0);
    for (int i = 0; i < 1000; ++i)
    {
        const auto c = random_table(rng);
        const double identity = conditional_mi(c);
        REQUIRE(identity >= 0.0);
        REQUIRE(std::abs(identity - conditional_mi_divergence(c)) <= 1e-10);
        REQUIRE(std::abs(identity - std::max(0.0, cmi_oracle(c))) <= 1e-10);
    }
}

TEST_CASE("conditional_mi - chain rule and copies")
{
    auto rng = make_stream(3, StreamId::validation, 0);
    for (int i = 0; i < 200; ++i)
    {
        const auto c = random_table(rng);
        // I(X;Y,Z) = I(X;Z) + I(X;Y|Z)
        const double h_x = entropy_of(c, margin::x);
        const double i_x_yz = h_x + entropy_of(c, margin::y | margin::z) -
                              entropy_of(c, margin::x | margin::y | margin::z);
        const double i_x_z = h_x + entropy_of(c, margin::z) - entropy_of(c, margin::x | margin::z);
        REQUIRE(std::abs(i_x_yz - (i_x_z + conditional_mi(c))) < 1e-10);
        REQUIRE(conditional_mi(c) <= std::min(entropy_of(c, margin::x), entropy_of(c, margin::y)) + 1e-12);
    }

    // Eve holds an exact copy of Bob's bit
    JointCounts copy;
    std::uniform_int_distribution<int> u(1, 30);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            copy.add(x, y, y, std::uint64_t(u(rng)));
    CHECK(std::abs(conditional_mi(copy)) < 1e-12);
}

TEST_CASE("JointCounts - merging partial tables")
{
    auto rng = make_stream(4, StreamId::validation, 0);
    const auto a = random_table(rng);
    const auto b = random_table(rng);
    JointCounts merged = a;
    merged += b;
    CHECK(merged.total() == a.total() + b.total());
    JointCounts manual;
    for (int i = 0; i < 8; ++i)
        manual.add((i >> 2) & 1, (i >> 1) & 1, i & 1, a.cells()[i] + b.cells()[i]);
    CHECK(merged == manual);
    CHECK(conditional_mi(merged) == Catch::Approx(cmi_oracle(manual)).margin(1e-12));
}

TEST_CASE("kl_divergence - known values and errors")
{
    const auto edges = uniform_edges(2, 0.0, 1.0);
    const Histogram p(edges, {0.5, 0.5}), q(edges, {0.75, 0.25});
    CHECK(kl_divergence(p, q) == Catch::Approx(0.5 * std::log2(0.5 / 0.75) + 0.5 * std::log2(0.5 / 0.25)));
    CHECK(std::abs(kl_divergence(q, p) - 0.188722) < 1e-6);
    CHECK(kl_divergence(p, p) == 0.0);

    const Histogram r(edges, {1.0, 0.0});
    CHECK(kl_divergence(r, p) == Catch::Approx(1.0));
    CHECK_THROWS_AS(kl_divergence(p, r), AbsoluteContinuityError);

    const Histogram wide(uniform_edges(2, 0.0, 2.0), {0.5, 0.5});
    CHECK_THROWS_AS(kl_divergence(p, wide), std::invalid_argument);
    CHECK_THROWS_AS(Histogram(edges, {0.5, 0.6}), std::invalid_argument);
    CHECK_THROWS_AS(Histogram(edges, {-0.5, 1.5}), std::invalid_argument);
}

TEST_CASE("empirical_pdf")
{
    const std::vector<double> samples{0.1, 0.2, 0.6, 5.0, -1.0};
    const auto h = empirical_pdf(samples, 2, 0.0, 1.0);
    CHECK(h.masses()[0] == Catch::Approx(0.6));
    CHECK(h.masses()[1] == Catch::Approx(0.4));

    const auto s = empirical_pdf(std::vector<double>{0.1}, 2, 0.0, 1.0, Smoothing::add_half);
    CHECK(s.masses()[0] == Catch::Approx(0.75));
    CHECK(s.masses()[1] == Catch::Approx(0.25));

    CHECK_THROWS_AS(empirical_pdf(samples, 1, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(empirical_pdf(std::vector<double>{}, 4, 0.0, 1.0), std::invalid_argument);

    // Exact Rayleigh draws against the binned closed form
    auto rng = make_stream(5, StreamId::validation, 0);
    const auto unit = RayleighParams::unit_power();
    std::vector<double> draws(1000000);
    for (auto &v : draws)
        v = rayleigh_quantile(std::generate_canonical<double, 53>(rng), unit);
    const auto edges = uniform_edges(100, 0.0, 3.0);
    const auto ref = Histogram::from_cdf(edges, [&](double r)
                                         { return rayleigh_cdf(r, unit); });
    CHECK(kl_divergence(empirical_pdf(draws, 100, 0.0, 3.0), ref) < 0.001);
}
