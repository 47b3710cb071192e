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

#pragma once

#include <functional>
#include <span>

namespace fadesec
{
    // Bessel functions of the first kind, orders 0 and 1.
    // Absolute error is below 1e-9 for |x| <= 100; non-finite input throws std::domain_error.
    double bessel_j0(double x);
    double bessel_j1(double x);

    // Argument where evaluation switches from the power series to the Hankel expansion
    inline constexpr double bessel_series_limit = 12.0;

    // Rayleigh distribution with scale sigma, E[r^2] = 2 sigma^2.
    // A unit-power complex channel has sigma^2 = 1/2.
    class RayleighParams
    {
    public:
        explicit RayleighParams(double sigma);

        static RayleighParams unit_power();

        double sigma() const { return sigma_; }
        double median() const;

    private:
        double sigma_;
    };

    double rayleigh_cdf(double r, const RayleighParams &p);
    double rayleigh_quantile(double q, const RayleighParams &p);

    // One-sample Kolmogorov-Smirnov statistic sup |F_n - F|. Sorts a copy of the samples.
    double ks_statistic(std::span<const double> samples, const std::function<double(double)> &cdf);

    // Two-sample Kolmogorov-Smirnov statistic.
    double ks_statistic_two_sample(std::span<const double> a, std::span<const double> b);
}
