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

#include <ostream>
#include <string>
#include <vector>

namespace fadesec::cli
{
    // Exit codes
    inline constexpr int exit_ok = 0;
    inline constexpr int exit_runtime_error = 1;
    inline constexpr int exit_config_error = 2;
    inline constexpr int exit_validation_failed = 3;

    // Environment variable consulted for the worker count when neither --workers nor the config sets it
    inline constexpr const char *workers_env = "FADESEC_WORKERS";

    // Parses argv (including the program name), runs the subcommand and returns the exit status.
    // Summaries go to `out`, one-line diagnostics to `err`.
    int parse_and_dispatch(const std::vector<std::string> &argv, std::ostream &out, std::ostream &err);
}
