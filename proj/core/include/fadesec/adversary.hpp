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

#include "fadesec/fading.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace fadesec
{
    // Geometry and imperfections of Eve's circular-aperture interceptors. All apertures share it.
    struct ApertureConfig
    {
        double diameter = 1.0;         // [m]
        double wavelength = 0.1;       // [m]
        double pointing_sigma = 0.0;   // std. dev. of the boresight error [rad]
        NoiseLevel eve_noise = NoiseLevel::noiseless();
        bool obliquity_enabled = false; // multiply the pattern by (1 + cos beta) / 2
        std::size_t interference_paths = 1; // paths reaching each aperture, including the intercepted ray

        // Throws std::invalid_argument on a non-positive diameter or wavelength or a negative pointing error
        void validate() const;
    };

    // Indices of the last-scattered paths Eve points an aperture at
    class InterceptionPlan
    {
    public:
        InterceptionPlan() = default;
        explicit InterceptionPlan(std::vector<std::size_t> indices);

        // Paths 0..count-1
        static InterceptionPlan first(std::size_t count);

        std::span<const std::size_t> indices() const { return indices_; }
        std::size_t size() const { return indices_.size(); }
        bool empty() const { return indices_.empty(); }

        // Throws if any index is out of range for a realization with n_paths paths
        void validate_for(std::size_t n_paths) const;

    private:
        std::vector<std::size_t> indices_;
    };

    // Far-field amplitude pattern 2 J1(x) / x, x = pi d sin(beta) / lambda, of a uniformly illuminated
    // circular aperture. Equals 1 on boresight. Negative in odd side lobes.
    double aperture_gain(double beta, const ApertureConfig &cfg);

    // Eve's phase-adjusted reconstruction of Bob's envelope. Every intercepted ray enters the main lobe of its
    // own aperture with a Gaussian pointing error; each aperture also collects interference_paths - 1 clutter
    // rays with uniform arrival angle and phase. Eve's detectors are stationary and the adjusting phase restores
    // Bob's Doppler and path phase exactly. Receiver noise is added to the combined signal.
    //
    // Random draws, in order: per intercepted path one normal (pointing) then (angle, phase) per clutter ray;
    // finally one normal pair for noise. Draws are consumed even when the corresponding effect is disabled.
    Complex intercept_and_combine(const ScatteringRealization &realization, const InterceptionPlan &plan,
                                  const ApertureConfig &cfg, const DopplerConfig &doppler, double t,
                                  RandomStream &rng);
}
