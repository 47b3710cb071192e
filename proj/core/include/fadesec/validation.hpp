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

#include "fadesec/experiment.hpp"

#include <string>
#include <vector>

namespace fadesec
{
    struct CheckResult
    {
        std::string name;
        bool passed = false;
        std::string detail;
    };

    // Self-tests of the channel statistics and estimators: Rayleigh convergence, first-order and
    // squared-envelope autocorrelation against their closed forms, and estimator sanity on synthetic
    // binary channels. Uses cfg.seed and the acf_* settings.
    std::vector<CheckResult> run_validation(const ExperimentConfig &cfg, const RunOptions &options = {});
}
