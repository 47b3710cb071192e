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

#include "fadesec/fading.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

using std::numbers::pi;

std::string_view fadesec::to_string(ChannelModel model)
{
    return model == ChannelModel::clarke ? "clarke" : "refined";
}

fadesec::ChannelModel fadesec::channel_model_from_string(std::string_view name)
{
    if (name == "clarke")
        return ChannelModel::clarke;
    if (name == "refined")
        return ChannelModel::refined;
    throw std::invalid_argument("unknown channel model '" + std::string(name) + "', expected clarke or refined");
}

double fadesec::wrap_angle(double a)
{
    double w = std::remainder(a, 2.0 * pi); // [-pi, pi]
    if (w >= pi)
        w -= 2.0 * pi;
    return w;
}

fadesec::ScatteringRealization::ScatteringRealization(std::vector<PathRay> paths, ChannelModel model)
    : paths_(std::move(paths)), model_(model)
{
    if (paths_.empty())
        throw std::invalid_argument("ScatteringRealization: at least one path is required");
    for (const auto &p : paths_)
    {
        if (!(p.aoa >= -pi && p.aoa < pi) || !(p.phase >= -pi && p.phase < pi))
            throw std::invalid_argument("ScatteringRealization: path angles must lie in [-pi, pi)");
    }
}

fadesec::DopplerConfig::DopplerConfig(double w_d) : w_d_(w_d)
{
    if (!(w_d >= 0.0) || !std::isfinite(w_d))
        throw std::invalid_argument("DopplerConfig: maximum Doppler must be finite and non-negative");
}

fadesec::DopplerConfig fadesec::DopplerConfig::from_hz(double doppler_hz)
{
    return DopplerConfig(2.0 * pi * doppler_hz);
}

fadesec::NoiseLevel fadesec::NoiseLevel::from_snr_db(double snr_db)
{
    if (!std::isfinite(snr_db))
        throw std::invalid_argument("NoiseLevel: SNR must be finite");
    return NoiseLevel(snr_db);
}

double fadesec::NoiseLevel::power() const
{
    return snr_db_ ? std::pow(10.0, -*snr_db_ / 10.0) : 0.0;
}

double fadesec::NoiseLevel::quadrature_sigma() const
{
    return std::sqrt(0.5 * power());
}

fadesec::ScatteringRealization fadesec::draw_realization(std::size_t n_paths, ChannelModel model, RandomStream &rng)
{
    if (n_paths == 0)
        throw std::invalid_argument("draw_realization: n_paths must be at least 1");

    std::vector<PathRay> paths(n_paths);
    const double n = double(n_paths);
    for (std::size_t i = 0; i < n_paths; ++i)
    {
        if (model == ChannelModel::clarke)
        {
            paths[i].aoa = uniform_angle(rng);
        }
        else
        {
            const double theta = uniform_angle(rng);
            paths[i].aoa = wrap_angle((2.0 * pi * double(i + 1) + theta) / n);
        }
        paths[i].phase = uniform_angle(rng);
    }
    return ScatteringRealization(std::move(paths), model);
}

fadesec::Complex fadesec::envelope_at(const ScatteringRealization &realization, const DopplerConfig &doppler, double t)
{
    const double wt = doppler.w_d() * t;
    Complex sum{0.0, 0.0};
    for (const auto &p : realization.paths())
        sum += std::polar(1.0, wt * std::cos(p.aoa) + p.phase);
    return sum / std::sqrt(double(realization.size()));
}

fadesec::Quadratures fadesec::quadratures_of(Complex g)
{
    return {g.real(), g.imag(), std::abs(g), std::arg(g)};
}

fadesec::Complex fadesec::add_receiver_noise(Complex g, const NoiseLevel &noise, RandomStream &rng)
{
    const auto [a, b] = standard_normal_pair(rng);
    if (noise.is_noiseless())
        return g;
    const double s = noise.quadrature_sigma();
    return g + Complex(s * a, s * b);
}

fadesec::AcfAccumulator::AcfAccumulator(std::size_t max_lag)
    : max_lag_(max_lag), first_sum_(max_lag + 1, 0.0), square_sum_(max_lag + 1, 0.0), pair_count_(max_lag + 1, 0.0)
{
}

void fadesec::AcfAccumulator::add(std::span<const Complex> series)
{
    if (series.size() <= max_lag_)
        throw std::invalid_argument("AcfAccumulator: series length must exceed max_lag");

    std::vector<double> power(series.size());
    for (std::size_t i = 0; i < series.size(); ++i)
        power[i] = std::norm(series[i]);

    for (std::size_t lag = 0; lag <= max_lag_; ++lag)
    {
        const std::size_t pairs = series.size() - lag;
        double first = 0.0, square = 0.0;
        for (std::size_t i = 0; i < pairs; ++i)
        {
            const Complex a = series[i], b = series[i + lag];
            first += a.real() * b.real() + a.imag() * b.imag(); // Re(a conj(b))
            square += power[i] * power[i + lag];
        }
        first_sum_[lag] += first;
        square_sum_[lag] += square;
        pair_count_[lag] += double(pairs);
    }
}

fadesec::AcfAccumulator &fadesec::AcfAccumulator::operator+=(const AcfAccumulator &other)
{
    if (other.max_lag_ != max_lag_)
        throw std::invalid_argument("AcfAccumulator: cannot merge accumulators with different max_lag");
    for (std::size_t lag = 0; lag <= max_lag_; ++lag)
    {
        first_sum_[lag] += other.first_sum_[lag];
        square_sum_[lag] += other.square_sum_[lag];
        pair_count_[lag] += other.pair_count_[lag];
    }
    return *this;
}

std::vector<fadesec::AcfPoint> fadesec::AcfAccumulator::result() const
{
    if (pair_count_[0] == 0.0)
        throw std::logic_error("AcfAccumulator: no series accumulated");

    const double norm0 = first_sum_[0] / pair_count_[0];
    std::vector<AcfPoint> out(max_lag_ + 1);
    for (std::size_t lag = 0; lag <= max_lag_; ++lag)
    {
        out[lag].first_order = first_sum_[lag] / pair_count_[lag] / norm0;
        out[lag].squared_envelope = square_sum_[lag] / pair_count_[lag];
    }
    return out;
}

std::vector<fadesec::AcfPoint> fadesec::empirical_acf(std::span<const Complex> series, std::size_t max_lag)
{
    AcfAccumulator acc(max_lag);
    acc.add(series);
    return acc.result();
}
