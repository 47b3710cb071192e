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

#include "fadesec/validation.hpp"
#include "fadesec/special_math.hpp"

#include <cmath>
#include <cstdio>

namespace
{
    using namespace fadesec;

    std::string describe(const char *fmt, double a, double b)
    {
        char buf[128];
        std::snprintf(buf, sizeof buf, fmt, a, b);
        return buf;
    }

    CheckResult rayleigh_convergence(const ExperimentConfig &base, ChannelModel model)
    {
        // Each amplitude at a random time in [0, 1) s, so the AoA model enters through the Doppler term
        const DopplerConfig doppler = DopplerConfig::from_hz(base.doppler_hz);
        std::vector<double> amplitudes(100000);
        for (std::size_t i = 0; i < amplitudes.size(); ++i)
        {
            auto rng = make_stream(base.seed, StreamId::validation, i);
            const auto realization = draw_realization(20, model, rng);
            const double t = std::generate_canonical<double, 53>(rng);
            amplitudes[i] = std::abs(envelope_at(realization, doppler, t));
        }
        const auto unit = RayleighParams::unit_power();
        const double ks = ks_statistic(amplitudes, [&](double r)
                                       { return rayleigh_cdf(r, unit); });
        return {"rayleigh_convergence_n20_" + std::string(to_string(model)), ks < 0.01,
                describe("KS = %.5f (limit %.2f)", ks, 0.01)};
    }

    std::vector<CheckResult> acf_checks(const ExperimentConfig &base, const RunOptions &options)
    {
        std::vector<CheckResult> out;
        ExperimentConfig cfg = base;
        cfg.model = ChannelModel::clarke;
        if (!(cfg.doppler_hz > 0.0))
            cfg.doppler_hz = 10.0;

        cfg.n_paths = 20;
        const auto n20 = run_acf_experiment(cfg, options);
        out.push_back({"acf_first_order_n20", n20.rmse_first_order < 0.02,
                       describe("RMSE vs J0 = %.5f (limit %.2f)", n20.rmse_first_order, 0.02)});

        cfg.n_paths = 6;
        const auto n6 = run_acf_experiment(cfg, options);
        out.push_back({"acf_squared_envelope_n6", n6.rmse_squared < 0.05,
                       describe("RMSE vs 1 + J0^2 (1 - 1/N) = %.5f (limit %.2f)", n6.rmse_squared, 0.05)});
        const double lag0 = n6.rows.front().squared_envelope;
        out.push_back({"acf_squared_envelope_lag0_n6", std::abs(lag0 - (2.0 - 1.0 / 6.0)) <= 0.02,
                       describe("lag 0 = %.5f (expected %.5f +- 0.02)", lag0, 2.0 - 1.0 / 6.0)});
        out.push_back({"acf_finite_n_term_resolved_n6", n6.rmse_squared < n6.rmse_squared_infinite,
                       describe("RMSE finite-N %.5f < infinite-N %.5f", n6.rmse_squared, n6.rmse_squared_infinite)});
        return out;
    }

    std::vector<CheckResult> estimator_checks(const ExperimentConfig &cfg)
    {
        std::vector<CheckResult> out;
        auto rng = make_stream(cfg.seed, StreamId::validation, 0);

        // X uniform, Y = X flipped with probability 0.11, Z independent
        JointCounts bsc;
        std::bernoulli_distribution flip(0.11), coin(0.5);
        for (int i = 0; i < 1000000; ++i)
        {
            const int x = coin(rng);
            const int y = x ^ int(flip(rng));
            bsc.add(x, y, int(coin(rng)));
        }
        const double hb = -(0.11 * std::log2(0.11) + 0.89 * std::log2(0.89));
        const double cmi = conditional_mi(bsc);
        out.push_back({"estimator_bsc_cmi", std::abs(cmi - (1.0 - hb)) <= 0.01,
                       describe("I(X;Y|Z) = %.5f bits (expected %.5f +- 0.01)", cmi, 1.0 - hb)});

        double worst = 0.0;
        bool negative = false;
        std::uniform_int_distribution<std::uint64_t> cell(0, 50);
        for (int t = 0; t < 1000; ++t)
        {
            JointCounts c;
            for (int i = 0; i < 8; ++i)
                c.add(i >> 2, (i >> 1) & 1, i & 1, cell(rng));
            if (c.total() == 0)
                continue;
            const double identity = entropy_of(c, margin::x | margin::z) + entropy_of(c, margin::y | margin::z) -
                                    entropy_of(c, margin::z) - entropy_of(c, margin::x | margin::y | margin::z);
            worst = std::max(worst, std::abs(identity - conditional_mi_divergence(c)));
            negative = negative || conditional_mi(c) < 0.0 || mutual_information(c) < 0.0;
        }
        out.push_back({"estimator_identity_vs_divergence", worst <= 1e-10 && !negative,
                       describe("max |difference| = %.3g bits over 1000 tables (limit %.0e)", worst, 1e-10)});

        const Histogram p({0.0, 1.0, 2.0}, {0.75, 0.25}), q({0.0, 1.0, 2.0}, {0.5, 0.5});
        const double kl = kl_divergence(p, q);
        const double expected = 0.75 * std::log2(1.5) + 0.25 * std::log2(0.5);
        out.push_back({"estimator_kl_known_value", std::abs(kl - expected) < 1e-12,
                       describe("D = %.6f bits (expected %.6f)", kl, expected)});
        return out;
    }
}

std::vector<fadesec::CheckResult> fadesec::run_validation(const ExperimentConfig &cfg, const RunOptions &options)
{
    std::vector<CheckResult> results;
    results.push_back({"bessel_j0_first_root", std::abs(bessel_j0(2.404825557695773)) < 1e-8, "J0(2.4048255577)"});
    results.push_back({"bessel_j1_first_root", std::abs(bessel_j1(3.831705970207512)) < 1e-8, "J1(3.8317059702)"});
    results.push_back(rayleigh_convergence(cfg, ChannelModel::clarke));
    results.push_back(rayleigh_convergence(cfg, ChannelModel::refined));
    for (auto &r : acf_checks(cfg, options))
        results.push_back(std::move(r));
    for (auto &r : estimator_checks(cfg))
        results.push_back(std::move(r));
    return results;
}
