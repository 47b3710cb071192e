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

#include "fadesec/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace
{
    using fadesec::ConfigError;
    using Kind = ConfigError::Kind;

    std::string_view trim(std::string_view s)
    {
        const auto first = s.find_first_not_of(" \t\r\n");
        if (first == std::string_view::npos)
            return {};
        const auto last = s.find_last_not_of(" \t\r\n");
        return s.substr(first, last - first + 1);
    }

    std::vector<std::string_view> split(std::string_view s, char sep)
    {
        std::vector<std::string_view> parts;
        std::size_t start = 0;
        while (true)
        {
            const auto pos = s.find(sep, start);
            parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
            if (pos == std::string_view::npos)
                break;
            start = pos + 1;
        }
        return parts;
    }

    [[noreturn]] void mismatch(std::string_view key, std::string_view value, const char *expected)
    {
        throw ConfigError(Kind::type_mismatch, std::string(key),
                          "expected " + std::string(expected) + ", got '" + std::string(value) + "'");
    }

    std::uint64_t parse_count(std::string_view key, std::string_view value)
    {
        std::uint64_t v = 0;
        const auto *end = value.data() + value.size();
        const auto [ptr, ec] = std::from_chars(value.data(), end, v);
        if (value.empty() || ec != std::errc() || ptr != end)
            mismatch(key, value, "a non-negative integer");
        return v;
    }

    double parse_real(std::string_view key, std::string_view value)
    {
        double v = 0.0;
        const auto *end = value.data() + value.size();
        const auto [ptr, ec] = std::from_chars(value.data(), end, v);
        if (value.empty() || ec != std::errc() || ptr != end || !std::isfinite(v))
            mismatch(key, value, "a finite real number");
        return v;
    }

    bool parse_flag(std::string_view key, std::string_view value)
    {
        if (value == "true" || value == "on" || value == "yes" || value == "1")
            return true;
        if (value == "false" || value == "off" || value == "no" || value == "0")
            return false;
        mismatch(key, value, "true or false");
    }

    fadesec::NoiseLevel parse_noise(std::string_view key, std::string_view value)
    {
        if (value == "noiseless")
            return fadesec::NoiseLevel::noiseless();
        return fadesec::NoiseLevel::from_snr_db(parse_real(key, value));
    }

    std::vector<double> parse_diameters(std::string_view key, std::string_view value)
    {
        std::vector<double> out;
        if (value.starts_with("log:"))
        {
            const auto parts = split(value.substr(4), ':');
            if (parts.size() != 3)
                mismatch(key, value, "log:<first>:<last>:<count>");
            const double first = parse_real(key, parts[0]);
            const double last = parse_real(key, parts[1]);
            const auto count = parse_count(key, parts[2]);
            if (!(first > 0.0 && last > 0.0) || count < 1)
                throw ConfigError(Kind::constraint, std::string(key), "log grid needs positive ends and count >= 1");
            for (std::uint64_t i = 0; i < count; ++i)
            {
                const double f = count == 1 ? 0.0 : double(i) / double(count - 1);
                out.push_back(first * std::pow(last / first, f));
            }
            return out;
        }
        for (auto part : split(value, ','))
            out.push_back(parse_real(key, part));
        return out;
    }

    std::string exact(double v)
    {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }

    std::string noise_text(const fadesec::NoiseLevel &n)
    {
        return n.is_noiseless() ? "noiseless" : exact(*n.snr_db());
    }

    [[noreturn]] void violated(const char *key, const char *detail)
    {
        throw ConfigError(Kind::constraint, key, detail);
    }

    const char *kind_name(Kind kind)
    {
        switch (kind)
        {
        case Kind::syntax:
            return "syntax error";
        case Kind::unknown_key:
            return "unknown key";
        case Kind::type_mismatch:
            return "type mismatch";
        case Kind::constraint:
            return "constraint violation";
        }
        return "error";
    }
}

fadesec::ConfigError::ConfigError(Kind kind, std::string key, const std::string &detail)
    : std::runtime_error(std::string(kind_name(kind)) + " for '" + key + "': " + detail), kind_(kind),
      key_(std::move(key))
{
}

void fadesec::apply_setting(ExperimentConfig &cfg, RunOptions &options, std::string_view key, std::string_view value)
{
    value = trim(value);
    key = trim(key);

    if (key == "n_paths")
        cfg.n_paths = parse_count(key, value);
    else if (key == "intercepted_count")
        cfg.intercepted_count = parse_count(key, value);
    else if (key == "model")
    {
        if (value != "clarke" && value != "refined")
            mismatch(key, value, "clarke or refined");
        cfg.model = channel_model_from_string(value);
    }
    else if (key == "snr_db")
        cfg.snr = parse_noise(key, value);
    else if (key == "eve_snr_db")
        cfg.eve_snr = parse_noise(key, value);
    else if (key == "doppler_hz")
        cfg.doppler_hz = parse_real(key, value);
    else if (key == "wavelength_m")
        cfg.wavelength_m = parse_real(key, value);
    else if (key == "pointing_sigma_rad")
        cfg.pointing_sigma_rad = parse_real(key, value);
    else if (key == "threshold_multiple")
        cfg.threshold_multiple = parse_real(key, value);
    else if (key == "diameters_m")
        cfg.diameters_m = parse_diameters(key, value);
    else if (key == "trials")
        cfg.trials = parse_count(key, value);
    else if (key == "calibration_samples")
        cfg.calibration_samples = parse_count(key, value);
    else if (key == "seed")
        cfg.seed = parse_count(key, value);
    else if (key == "obliquity")
        cfg.obliquity = parse_flag(key, value);
    else if (key == "interference_paths")
    {
        if (value == "auto")
            cfg.interference_paths.reset();
        else
            cfg.interference_paths = parse_count(key, value);
    }
    else if (key == "pdf_paths")
    {
        cfg.pdf_paths.clear();
        for (auto part : split(value, ','))
            cfg.pdf_paths.push_back(parse_count(key, part));
    }
    else if (key == "pdf_missing")
        cfg.pdf_missing = parse_count(key, value);
    else if (key == "pdf_samples")
        cfg.pdf_samples = parse_count(key, value);
    else if (key == "pdf_bins")
        cfg.pdf_bins = parse_count(key, value);
    else if (key == "pdf_range_max")
        cfg.pdf_range_max = parse_real(key, value);
    else if (key == "acf_max_lag_rad")
        cfg.acf_max_lag_rad = parse_real(key, value);
    else if (key == "acf_step_rad")
        cfg.acf_step_rad = parse_real(key, value);
    else if (key == "acf_realizations")
        cfg.acf_realizations = parse_count(key, value);
    else if (key == "acf_series_length")
        cfg.acf_series_length = parse_count(key, value);
    else if (key == "workers")
        options.workers = unsigned(parse_count(key, value));
    else
        throw ConfigError(Kind::unknown_key, std::string(key), "not a recognised setting");
}

void fadesec::read_config(std::istream &in, ExperimentConfig &cfg, RunOptions &options)
{
    std::string line;
    int line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        std::string_view text = line;
        if (const auto hash = text.find('#'); hash != std::string_view::npos)
            text = text.substr(0, hash);
        text = trim(text);
        if (text.empty())
            continue;
        const auto eq = text.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(Kind::syntax, "line " + std::to_string(line_no), "expected 'key = value'");
        apply_setting(cfg, options, text.substr(0, eq), text.substr(eq + 1));
    }
}

fadesec::ExperimentConfig fadesec::parse_config_echo(std::istream &in)
{
    constexpr std::string_view prefix = "# config ";
    std::ostringstream body;
    std::string line;
    while (std::getline(in, line))
        if (std::string_view(line).starts_with(prefix))
            body << line.substr(prefix.size()) << "\n";

    ExperimentConfig cfg;
    RunOptions ignored;
    std::istringstream echo(body.str());
    read_config(echo, cfg, ignored);
    return cfg;
}

std::vector<std::pair<std::string, std::string>> fadesec::render_config(const ExperimentConfig &cfg)
{
    auto join = [](const auto &values, auto &&fmt)
    {
        std::string s;
        for (std::size_t i = 0; i < values.size(); ++i)
            s += (i ? "," : "") + fmt(values[i]);
        return s;
    };
    auto count = [](auto v)
    { return std::to_string(v); };

    return {
        {"n_paths", count(cfg.n_paths)},
        {"intercepted_count", count(cfg.intercepted_count)},
        {"model", std::string(to_string(cfg.model))},
        {"snr_db", noise_text(cfg.snr)},
        {"eve_snr_db", noise_text(cfg.eve_snr)},
        {"doppler_hz", exact(cfg.doppler_hz)},
        {"wavelength_m", exact(cfg.wavelength_m)},
        {"pointing_sigma_rad", exact(cfg.pointing_sigma_rad)},
        {"threshold_multiple", exact(cfg.threshold_multiple)},
        {"diameters_m", join(cfg.diameters_m, exact)},
        {"trials", count(cfg.trials)},
        {"calibration_samples", count(cfg.calibration_samples)},
        {"seed", count(cfg.seed)},
        {"obliquity", cfg.obliquity ? "true" : "false"},
        {"interference_paths", cfg.interference_paths ? count(*cfg.interference_paths) : "auto"},
        {"pdf_paths", join(cfg.pdf_paths, count)},
        {"pdf_missing", count(cfg.pdf_missing)},
        {"pdf_samples", count(cfg.pdf_samples)},
        {"pdf_bins", count(cfg.pdf_bins)},
        {"pdf_range_max", exact(cfg.pdf_range_max)},
        {"acf_max_lag_rad", exact(cfg.acf_max_lag_rad)},
        {"acf_step_rad", exact(cfg.acf_step_rad)},
        {"acf_realizations", count(cfg.acf_realizations)},
        {"acf_series_length", count(cfg.acf_series_length)},
    };
}

void fadesec::ExperimentConfig::validate() const
{
    if (n_paths < 1)
        violated("n_paths", "must be at least 1");
    if (intercepted_count > n_paths)
        violated("intercepted_count", "cannot exceed n_paths");
    if (!(doppler_hz >= 0.0))
        violated("doppler_hz", "must be non-negative");
    if (!(wavelength_m > 0.0))
        violated("wavelength_m", "must be positive");
    if (!(pointing_sigma_rad >= 0.0))
        violated("pointing_sigma_rad", "must be non-negative");
    if (!(threshold_multiple >= 0.0))
        violated("threshold_multiple", "must be non-negative");
    if (diameters_m.empty())
        violated("diameters_m", "needs at least one diameter");
    for (double d : diameters_m)
        if (!(d > 0.0))
            violated("diameters_m", "diameters must be positive");
    if (trials < 1)
        violated("trials", "must be at least 1");
    if (calibration_samples < 1)
        violated("calibration_samples", "must be at least 1");
    if (pdf_paths.empty())
        violated("pdf_paths", "needs at least one path count");
    for (auto n : pdf_paths)
        if (n < 1)
            violated("pdf_paths", "path counts must be at least 1");
    if (pdf_samples < 10000)
        violated("pdf_samples", "must be at least 10000");
    if (pdf_bins < 2)
        violated("pdf_bins", "must be at least 2");
    if (!(pdf_range_max > 0.0))
        violated("pdf_range_max", "must be positive");
    if (!(acf_step_rad > 0.0))
        violated("acf_step_rad", "must be positive");
    if (!(acf_max_lag_rad >= 0.0))
        violated("acf_max_lag_rad", "must be non-negative");
    if (acf_realizations < 1000)
        violated("acf_realizations", "must be at least 1000");
}
