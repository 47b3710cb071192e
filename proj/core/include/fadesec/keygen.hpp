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

#include <cstdint>
#include <span>
#include <string_view>

namespace fadesec
{
    enum class Symbol : std::uint8_t
    {
        zero = 0,
        one = 1,
        drop = 2,
    };

    std::string_view to_string(Symbol s);

    // Amplitude quantizer shared by Alice and Bob. Amplitudes below median - threshold map to 0,
    // above median + threshold + entropy to 1, anything in between is dropped. The entropy offset
    // balances the two tail probabilities so kept bits are equiprobable.
    class ThresholdScheme
    {
    public:
        ThresholdScheme(double median_m, double threshold_t, double entropy_s);

        double median_m() const { return median_; }
        double threshold_t() const { return threshold_; }
        double entropy_s() const { return entropy_; }

        double lower_bound() const { return median_ - threshold_; }
        double upper_bound() const { return median_ + threshold_ + entropy_; }

    private:
        double median_;
        double threshold_;
        double entropy_;
    };

    // Fits median and entropy offset to calibration amplitudes for a fixed threshold.
    // Throws std::invalid_argument on empty or negative samples, or threshold_t >= empirical median.
    ThresholdScheme calibrate(std::span<const double> amplitude_samples, double threshold_t);

    // Threshold as a multiple of the per-quadrature noise standard deviation
    double threshold_for_noise(const NoiseLevel &noise, double multiple);

    Symbol quantize_legit(double r, const ThresholdScheme &scheme);

    // Eve decides on every sample using the public median, ties go to One
    Symbol quantize_eve(double r, const ThresholdScheme &scheme);

    // Symbols of one Monte Carlo trial. A trial is kept only when neither Alice nor Bob drops it.
    class TrialRecord
    {
    public:
        TrialRecord(Symbol alice, Symbol bob, Symbol eve);

        Symbol alice() const { return alice_; }
        Symbol bob() const { return bob_; }
        Symbol eve() const { return eve_; }
        bool kept() const { return kept_; }

    private:
        Symbol alice_;
        Symbol bob_;
        Symbol eve_;
        bool kept_;
    };
}
