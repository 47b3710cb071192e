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

#include "fadesec/special_math.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace
{
    void require_finite(double x, const char *name)
    {
        if (!std::isfinite(x))
            throw std::domain_error(std::string(name) + ": argument must be finite");
    }

    // sum_k (-1)^k (x/2)^(2k+order) / (k! (k+order)!)
    double bessel_series(double x, int order)
    {
        const double half = 0.5 * x;
        const double half_sq = half * half;
        double term = (order == 0) ? 1.0 : half;
        double sum = term;
        for (int k = 1; k < 80; ++k)
        {
            term *= -half_sq / (double(k) * double(k + order));
            sum += term;
            if (std::abs(term) < 1e-17 * std::max(1.0, std::abs(sum)))
                break;
        }
        return sum;
    }

    // Hankel asymptotic expansion, x > 0. The P and Q series are truncated at their smallest term.
    double bessel_hankel(double x, int order)
    {
        const double mu = 4.0 * double(order * order);
        const double inv8x = 1.0 / (8.0 * x);

        double p = 1.0, q = 0.0;
        double a = 1.0; // a_k / (8x)^k
        double last = 1.0;
        for (int k = 1; k < 60; ++k)
        {
            const double odd = double(2 * k - 1);
            a *= (mu - odd * odd) * inv8x / double(k);
            const double mag = std::abs(a);
            if (mag >= last)
                break;
            last = mag;
            // k odd terms feed Q, k even terms feed P, alternating sign per pair
            if (k % 2 == 1)
                q += ((k / 2) % 2 == 0) ? a : -a;
            else
                p += ((k / 2) % 2 == 0) ? a : -a;
            if (mag < 1e-17)
                break;
        }

        const double chi = x - (0.5 * order + 0.25) * std::numbers::pi;
        return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
    }
}

double fadesec::bessel_j0(double x)
{
    require_finite(x, "bessel_j0");
    const double ax = std::abs(x);
    if (ax <= bessel_series_limit)
        return bessel_series(ax, 0);
    return bessel_hankel(ax, 0);
}

double fadesec::bessel_j1(double x)
{
    require_finite(x, "bessel_j1");
    const double ax = std::abs(x);
    const double v = (ax <= bessel_series_limit) ? bessel_series(ax, 1) : bessel_hankel(ax, 1);
    return x < 0.0 ? -v : v;
}

fadesec::RayleighParams::RayleighParams(double sigma) : sigma_(sigma)
{
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw std::invalid_argument("RayleighParams: sigma must be positive and finite");
}

fadesec::RayleighParams fadesec::RayleighParams::unit_power()
{
    return RayleighParams(std::sqrt(0.5));
}

double fadesec::RayleighParams::median() const
{
    return sigma_ * std::sqrt(2.0 * std::numbers::ln2);
}

double fadesec::rayleigh_cdf(double r, const RayleighParams &p)
{
    if (std::isnan(r))
        throw std::domain_error("rayleigh_cdf: NaN argument");
    if (r <= 0.0)
        return 0.0;
    const double s = p.sigma();
    return -std::expm1(-r * r / (2.0 * s * s));
}

double fadesec::rayleigh_quantile(double q, const RayleighParams &p)
{
    if (!(q >= 0.0 && q < 1.0))
        throw std::domain_error("rayleigh_quantile: probability must lie in [0, 1)");
    const double s = p.sigma();
    return s * std::sqrt(-2.0 * std::log1p(-q));
}

double fadesec::ks_statistic(std::span<const double> samples, const std::function<double(double)> &cdf)
{
    if (samples.empty())
        throw std::invalid_argument("ks_statistic: no samples");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());

    const double n = double(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i)
    {
        const double f = cdf(sorted[i]);
        d = std::max(d, std::max(double(i + 1) / n - f, f - double(i) / n));
    }
    return d;
}

double fadesec::ks_statistic_two_sample(std::span<const double> a, std::span<const double> b)
{
    if (a.empty() || b.empty())
        throw std::invalid_argument("ks_statistic_two_sample: no samples");
    std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());

    const double na = double(sa.size()), nb = double(sb.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < sa.size() && j < sb.size())
    {
        const double v = std::min(sa[i], sb[j]);
        while (i < sa.size() && sa[i] <= v)
            ++i;
        while (j < sb.size() && sb[j] <= v)
            ++j;
        d = std::max(d, std::abs(double(i) / na - double(j) / nb));
    }
    return d;
}
