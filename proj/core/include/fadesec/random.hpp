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

#include <cstdint>
#include <numbers>
#include <random>

namespace fadesec
{
    using RandomStream = std::mt19937_64;

    // Stream identifiers keep the experiments' random streams disjoint for the same seed.
    enum class StreamId : std::uint64_t
    {
        sweep_trials = 1,
        calibration = 2,
        pdf = 3,
        acf = 4,
        validation = 5,
    };

    // Mixes (seed, stream, index) into an engine seed. Each Monte Carlo trial gets its own engine
    // so results do not depend on how trials are distributed over workers.
    constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index)
    {
        auto mix = [](std::uint64_t z)
        {
            z += 0x9e3779b97f4a7c15ULL;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            return z ^ (z >> 31);
        };
        return mix(mix(mix(seed) ^ stream) ^ index);
    }

    inline RandomStream make_stream(std::uint64_t seed, StreamId stream, std::uint64_t index)
    {
        return RandomStream(derive_seed(seed, static_cast<std::uint64_t>(stream), index));
    }

    // Uniform on [-pi, pi)
    inline double uniform_angle(RandomStream &rng)
    {
        const double u = std::generate_canonical<double, 53>(rng);
        const double a = std::numbers::pi * (2.0 * u - 1.0);
        return a < std::numbers::pi ? a : -std::numbers::pi;
    }

    inline double standard_normal(RandomStream &rng)
    {
        std::normal_distribution<double> dist(0.0, 1.0);
        return dist(rng);
    }

    // Pair of independent standard normals, drawn from one distribution object so both halves of
    // the generated pair are used.
    struct NormalPair
    {
        double first;
        double second;
    };

    inline NormalPair standard_normal_pair(RandomStream &rng)
    {
        std::normal_distribution<double> dist(0.0, 1.0);
        const double a = dist(rng);
        const double b = dist(rng);
        return {a, b};
    }
}
