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

#include <catch2/catch_amalgamated.hpp>

#include "fadesec/config.hpp"

#include <sstream>

using namespace fadesec;

namespace
{
    ConfigError::Kind kind_of(const std::string &text)
    {
        ExperimentConfig cfg;
        RunOptions options;
        std::istringstream in(text);
        try
        {
            read_config(in, cfg, options);
            cfg.validate();
        }
        catch (const ConfigError &e)
        {
            return e.kind();
        }
        FAIL("no ConfigError for: " << text);
        return ConfigError::Kind::syntax;
    }

    std::string key_of(const std::string &text)
    {
        ExperimentConfig cfg;
        RunOptions options;
        std::istringstream in(text);
        try
        {
            read_config(in, cfg, options);
            cfg.validate();
        }
        catch (const ConfigError &e)
        {
            CHECK(std::string(e.what()).find(e.key()) != std::string::npos);
            return e.key();
        }
        return "";
    }
}

TEST_CASE("read_config - values and comments")
{
    ExperimentConfig cfg;
    RunOptions options;
    std::istringstream in("# comment\n"
                          "n_paths = 20   # trailing\n"
                          "\n"
                          "  model=refined\n"
                          "eve_snr_db = noiseless\n"
                          "diameters_m = 0.5, 1, 2\n"
                          "interference_paths = 12\n"
                          "obliquity = true\n"
                          "workers = 3\n"
                          "seed = 9\n"
                          "seed = 10\n");
    read_config(in, cfg, options);
    CHECK(cfg.n_paths == 20);
    CHECK(cfg.model == ChannelModel::refined);
    CHECK(cfg.eve_snr.is_noiseless());
    CHECK(cfg.diameters_m == std::vector<double>{0.5, 1.0, 2.0});
    CHECK(cfg.resolved_interference_paths() == 12);
    CHECK(cfg.obliquity);
    CHECK(options.workers == 3);
    CHECK(cfg.seed == 10);
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("apply_setting - log grid")
{
    ExperimentConfig cfg;
    RunOptions options;
    apply_setting(cfg, options, "diameters_m", "log:0.1:10:21");
    REQUIRE(cfg.diameters_m.size() == 21);
    for (std::size_t i = 0; i < 21; ++i)
        CHECK(cfg.diameters_m[i] == Catch::Approx(default_diameters()[i]));
}

TEST_CASE("config errors - kinds and offending key")
{
    using Kind = ConfigError::Kind;
    CHECK(kind_of("n_paths 6\n") == Kind::syntax);
    CHECK(kind_of("bogus_key = 1\n") == Kind::unknown_key);
    CHECK(kind_of("n_paths = six\n") == Kind::type_mismatch);
    CHECK(kind_of("snr_db = loud\n") == Kind::type_mismatch);
    CHECK(kind_of("model = jakes\n") == Kind::type_mismatch);
    CHECK(kind_of("trials = -5\n") == Kind::type_mismatch);
    CHECK(kind_of("n_paths = 0\n") == Kind::constraint);
    CHECK(kind_of("n_paths = 4\nintercepted_count = 5\n") == Kind::constraint);
    CHECK(kind_of("diameters_m = 1, -2\n") == Kind::constraint);
    CHECK(kind_of("pdf_samples = 100\n") == Kind::constraint);

    CHECK(key_of("bogus_key = 1\n") == "bogus_key");
    CHECK(key_of("n_paths = six\n") == "n_paths");
    CHECK(key_of("n_paths = 4\nintercepted_count = 5\n") == "intercepted_count");
    CHECK(key_of("wavelength_m = 0\n") == "wavelength_m");
}

TEST_CASE("render_config - round trip")
{
    ExperimentConfig cfg;
    cfg.n_paths = 20;
    cfg.intercepted_count = 19;
    cfg.model = ChannelModel::refined;
    cfg.eve_snr = NoiseLevel::noiseless();
    cfg.pointing_sigma_rad = 1.0 / 3.0;
    cfg.diameters_m = {0.1, std::sqrt(2.0)};
    cfg.interference_paths = 12;
    cfg.pdf_paths = {1, 6, 20};
    cfg.seed = 0xFFFFFFFFFFFFull;

    std::ostringstream text;
    for (const auto &[key, value] : render_config(cfg))
        text << key << " = " << value << "\n";

    ExperimentConfig back;
    RunOptions options;
    std::istringstream in(text.str());
    read_config(in, back, options);
    CHECK(back == cfg);

    std::ostringstream echo;
    for (const auto &[key, value] : render_config(cfg))
        echo << "# config " << key << " = " << value << "\n";
    echo << "diameter_m,cmi_bits\n";
    std::istringstream echo_in(echo.str());
    CHECK(parse_config_echo(echo_in) == cfg);

    for (const auto &[key, value] : render_config(cfg))
        CHECK(key != "workers");
}
