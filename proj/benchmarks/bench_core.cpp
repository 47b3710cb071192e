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

#include "fadesec/experiment.hpp"
#include "fadesec/special_math.hpp"

#include <benchmark/benchmark.h>

using namespace fadesec;

static void BM_BesselJ0(benchmark::State &state)
{
    double x = 0.0;
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(bessel_j0(x));
        x = x < 40.0 ? x + 0.37 : 0.0;
    }
}
BENCHMARK(BM_BesselJ0);

static void BM_BesselJ1(benchmark::State &state)
{
    double x = 0.0;
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(bessel_j1(x));
        x = x < 40.0 ? x + 0.37 : 0.0;
    }
}
BENCHMARK(BM_BesselJ1);

static void BM_Envelope(benchmark::State &state)
{
    auto rng = make_stream(1, StreamId::validation, 0);
    const auto r = draw_realization(std::size_t(state.range(0)), ChannelModel::clarke, rng);
    const auto doppler = DopplerConfig::from_hz(10.0);
    double t = 0.0;
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(envelope_at(r, doppler, t));
        t += 1e-3;
    }
}
BENCHMARK(BM_Envelope)->Arg(6)->Arg(20);

static void BM_Trial(benchmark::State &state)
{
    ExperimentConfig cfg;
    cfg.n_paths = std::size_t(state.range(0));
    cfg.intercepted_count = cfg.n_paths;
    const ThresholdScheme scheme(0.86, 0.3, 0.04);
    std::uint64_t i = 0;
    for (auto _ : state)
    {
        auto rng = make_stream(1, StreamId::sweep_trials, i++);
        benchmark::DoNotOptimize(run_trial(cfg, 1.0, scheme, rng));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Trial)->Arg(6)->Arg(20);

static void BM_ConditionalMi(benchmark::State &state)
{
    JointCounts c;
    for (int i = 0; i < 8; ++i)
        c.add((i >> 2) & 1, (i >> 1) & 1, i & 1, std::uint64_t(10 + i));
    for (auto _ : state)
        benchmark::DoNotOptimize(conditional_mi(c));
}
BENCHMARK(BM_ConditionalMi);

BENCHMARK_MAIN();
