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

#include "fadesec/keygen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

std::string_view fadesec::to_string(Symbol s)
{
    switch (s)
    {
    case Symbol::zero:
        return "0";
    case Symbol::one:
        return "1";
    case Symbol::drop:
        return "drop";
    }
    return "?";
}

fadesec::ThresholdScheme::ThresholdScheme(double median_m, double threshold_t, double entropy_s)
    : median_(median_m), threshold_(threshold_t), entropy_(entropy_s)
{
    if (!(median_m >= 0.0) || !std::isfinite(median_m))
        throw std::invalid_argument("ThresholdScheme: median must be finite and non-negative");
    if (!(threshold_t >= 0.0) || !std::isfinite(threshold_t))
        throw std::invalid_argument("ThresholdScheme: threshold must be finite and non-negative");
    if (!(entropy_s >= 0.0) || !std::isfinite(entropy_s))
        throw std::invalid_argument("ThresholdScheme: entropy factor must be finite and non-negative");
    if (median_m - threshold_t < 0.0)
        throw std::invalid_argument("ThresholdScheme: threshold exceeds median");
}

fadesec::ThresholdScheme fadesec::calibrate(std::span<const double> amplitude_samples, double threshold_t)
{
    if (amplitude_samples.empty())
        throw std::invalid_argument("calibrate: no amplitude samples");
    if (!(threshold_t >= 0.0))
        throw std::invalid_argument("calibrate: threshold must be non-negative");

    std::vector<double> sorted(amplitude_samples.begin(), amplitude_samples.end());
    std::sort(sorted.begin(), sorted.end());
    if (!(sorted.front() >= 0.0) || !std::isfinite(sorted.back()))
        throw std::invalid_argument("calibrate: amplitudes must be finite and non-negative");

    const std::size_t n = sorted.size();
    const double median = (n % 2 == 1) ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    if (threshold_t >= median)
        throw std::invalid_argument("calibrate: threshold must be below the empirical median");

    // Choose the upper cut so that exactly as many samples lie above it as below median - T
    const double lower = median - threshold_t;
    const auto below = std::size_t(std::lower_bound(sorted.begin(), sorted.end(), lower) - sorted.begin());
    const double upper = sorted[n - below - 1];
    const double entropy = std::max(0.0, upper - median - threshold_t);

    return ThresholdScheme(median, threshold_t, entropy);
}

double fadesec::threshold_for_noise(const NoiseLevel &noise, double multiple)
{
    if (!(multiple >= 0.0))
        throw std::invalid_argument("threshold_for_noise: multiple must be non-negative");
    return multiple * noise.quadrature_sigma();
}

fadesec::Symbol fadesec::quantize_legit(double r, const ThresholdScheme &scheme)
{
    if (!(r >= 0.0))
        throw std::invalid_argument("quantize_legit: amplitude must be non-negative");
    if (r < scheme.lower_bound())
        return Symbol::zero;
    if (r > scheme.upper_bound())
        return Symbol::one;
    return Symbol::drop;
}

fadesec::Symbol fadesec::quantize_eve(double r, const ThresholdScheme &scheme)
{
    if (!(r >= 0.0))
        throw std::invalid_argument("quantize_eve: amplitude must be non-negative");
    return r < scheme.median_m() ? Symbol::zero : Symbol::one;
}

fadesec::TrialRecord::TrialRecord(Symbol alice, Symbol bob, Symbol eve)
    : alice_(alice), bob_(bob), eve_(eve), kept_(alice != Symbol::drop && bob != Symbol::drop)
{
    if (eve == Symbol::drop)
        throw std::invalid_argument("TrialRecord: Eve always decides, her symbol cannot be drop");
}
