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

#include "fadesec/adversary.hpp"
#include "fadesec/special_math.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

void fadesec::ApertureConfig::validate() const
{
    if (!(diameter > 0.0) || !std::isfinite(diameter))
        throw std::invalid_argument("ApertureConfig: diameter must be positive");
    if (!(wavelength > 0.0) || !std::isfinite(wavelength))
        throw std::invalid_argument("ApertureConfig: wavelength must be positive");
    if (!(pointing_sigma >= 0.0) || !std::isfinite(pointing_sigma))
        throw std::invalid_argument("ApertureConfig: pointing_sigma must be non-negative");
}

fadesec::InterceptionPlan::InterceptionPlan(std::vector<std::size_t> indices) : indices_(std::move(indices))
{
    auto sorted = indices_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("InterceptionPlan: path indices must be unique");
}

fadesec::InterceptionPlan fadesec::InterceptionPlan::first(std::size_t count)
{
    std::vector<std::size_t> idx(count);
    for (std::size_t i = 0; i < count; ++i)
        idx[i] = i;
    return InterceptionPlan(std::move(idx));
}

void fadesec::InterceptionPlan::validate_for(std::size_t n_paths) const
{
    for (auto i : indices_)
        if (i >= n_paths)
            throw std::invalid_argument("InterceptionPlan: path index " + std::to_string(i) +
                                        " out of range for " + std::to_string(n_paths) + " paths");
}

double fadesec::aperture_gain(double beta, const ApertureConfig &cfg)
{
    if (!std::isfinite(beta))
        throw std::domain_error("aperture_gain: beta must be finite");

    const double x = std::numbers::pi * cfg.diameter * std::sin(beta) / cfg.wavelength;
    double gain;
    if (std::abs(x) < 1e-4)
        gain = 1.0 - x * x / 8.0; // next term x^4/192 is below double resolution here
    else
        gain = 2.0 * bessel_j1(x) / x;

    if (cfg.obliquity_enabled)
        gain *= 0.5 * (1.0 + std::cos(beta));
    return gain;
}

fadesec::Complex fadesec::intercept_and_combine(const ScatteringRealization &realization, const InterceptionPlan &plan,
                                                const ApertureConfig &cfg, const DopplerConfig &doppler, double t,
                                                RandomStream &rng)
{
    plan.validate_for(realization.size());

    const auto paths = realization.paths();
    const double wt = doppler.w_d() * t;
    const std::size_t clutter_rays = cfg.interference_paths > 0 ? cfg.interference_paths - 1 : 0;

    Complex sum{0.0, 0.0};
    for (auto n : plan.indices())
    {
        const double pointing_error = cfg.pointing_sigma * standard_normal(rng);
        const PathRay &ray = paths[n];
        sum += aperture_gain(pointing_error, cfg) * std::polar(1.0, wt * std::cos(ray.aoa) + ray.phase);

        for (std::size_t k = 0; k < clutter_rays; ++k)
        {
            const double beta = uniform_angle(rng);
            const double phase = uniform_angle(rng);
            sum += aperture_gain(beta, cfg) * std::polar(1.0, phase);
        }
    }
    const Complex estimate = sum / std::sqrt(double(realization.size()));
    return add_receiver_noise(estimate, cfg.eve_noise, rng);
}
