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

#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fadesec
{
    class ConfigError : public std::runtime_error
    {
    public:
        enum class Kind
        {
            syntax,
            unknown_key,
            type_mismatch,
            constraint,
        };

        ConfigError(Kind kind, std::string key, const std::string &detail);

        Kind kind() const { return kind_; }
        const std::string &key() const { return key_; }

    private:
        Kind kind_;
        std::string key_;
    };

    // Applies one key = value setting. Keys are the ExperimentConfig field names except
    // snr_db, eve_snr_db (number or "noiseless") and workers, which goes to RunOptions.
    // diameters_m takes a comma list or log:<first>:<last>:<count>.
    void apply_setting(ExperimentConfig &cfg, RunOptions &options, std::string_view key, std::string_view value);

    // Reads "key = value" lines; blank lines and '#' comments are skipped. Later keys override earlier ones.
    // Does not validate cross-field constraints.
    void read_config(std::istream &in, ExperimentConfig &cfg, RunOptions &options);

    // Reverses the "# config key = value" echo lines of an output file
    ExperimentConfig parse_config_echo(std::istream &in);

    // Every result-affecting setting as (key, text); values round-trip through apply_setting
    std::vector<std::pair<std::string, std::string>> render_config(const ExperimentConfig &cfg);
}
