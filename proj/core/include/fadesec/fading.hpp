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

#include "fadesec/random.hpp"

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace fadesec
{
    using Complex = std::complex<double>;

    enum class ChannelModel
    {
        clarke,  // AoA and phase i.i.d. uniform
        refined, // AoA confined to one sector of width 2 pi / N per path
    };

    std::string_view to_string(ChannelModel model);
    ChannelModel channel_model_from_string(std::string_view name);

    // Wraps an angle into [-pi, pi)
    double wrap_angle(double a);

    struct PathRay
    {
        double aoa;   // angle of arrival relative to the receiver velocity [rad]
        double phase; // path phase [rad]
    };

    // One draw of the last-scattered paths shared by Alice and Bob
    class ScatteringRealization
    {
    public:
        ScatteringRealization(std::vector<PathRay> paths, ChannelModel model);

        std::span<const PathRay> paths() const { return paths_; }
        std::size_t size() const { return paths_.size(); }
        ChannelModel model() const { return model_; }

    private:
        std::vector<PathRay> paths_;
        ChannelModel model_;
    };

    // Maximum Doppler frequency of the receiver in rad/s
    class DopplerConfig
    {
    public:
        explicit DopplerConfig(double w_d = 0.0);
        static DopplerConfig from_hz(double doppler_hz);

        double w_d() const { return w_d_; }

    private:
        double w_d_;
    };

    // Receiver noise relative to unit signal power. An empty SNR means a noiseless receiver.
    class NoiseLevel
    {
    public:
        static NoiseLevel noiseless() { return NoiseLevel(std::nullopt); }
        static NoiseLevel from_snr_db(double snr_db);

        bool is_noiseless() const { return !snr_db_; }
        std::optional<double> snr_db() const { return snr_db_; }

        // Total complex noise power 10^(-snr/10), zero when noiseless
        double power() const;
        // Standard deviation of each quadrature, sqrt(power / 2)
        double quadrature_sigma() const;

        bool operator==(const NoiseLevel &) const = default;

    private:
        explicit NoiseLevel(std::optional<double> snr_db) : snr_db_(snr_db) {}
        std::optional<double> snr_db_;
    };

    struct Quadratures
    {
        double r_i;
        double r_q;
        double amplitude;
        double phase;
    };

    ScatteringRealization draw_realization(std::size_t n_paths, ChannelModel model, RandomStream &rng);

    // g(t) = 1/sqrt(N) sum_n exp(j (w_d t cos(aoa_n) + phase_n))
    Complex envelope_at(const ScatteringRealization &realization, const DopplerConfig &doppler, double t);

    Quadratures quadratures_of(Complex g);

    // Adds circularly-symmetric Gaussian noise. Always consumes exactly one normal pair from rng,
    // noiseless or not, so coupled runs stay aligned.
    Complex add_receiver_noise(Complex g, const NoiseLevel &noise, RandomStream &rng);

    struct AcfPoint
    {
        double first_order;      // Re E[g(t) g*(t+tau)] / Re E[|g(t)|^2]
        double squared_envelope; // E[|g(t)|^2 |g(t+tau)|^2]
    };

    // Accumulates lag products over any number of uniformly sampled series. Each series contributes
    // all of its (t, t + lag) pairs.
    class AcfAccumulator
    {
    public:
        explicit AcfAccumulator(std::size_t max_lag);

        void add(std::span<const Complex> series);
        std::vector<AcfPoint> result() const;

        AcfAccumulator &operator+=(const AcfAccumulator &other);

        std::size_t max_lag() const { return max_lag_; }

    private:
        std::size_t max_lag_;
        std::vector<double> first_sum_;
        std::vector<double> square_sum_;
        std::vector<double> pair_count_;
    };

    // Autocorrelation of a single series for lags 0..max_lag. Throws if series.size() <= max_lag.
    std::vector<AcfPoint> empirical_acf(std::span<const Complex> series, std::size_t max_lag);
}
