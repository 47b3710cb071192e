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

#include "cli.hpp"

#include "fadesec/config.hpp"
#include "fadesec/experiment.hpp"
#include "fadesec/validation.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <optional>

namespace
{
    using namespace fadesec;

    struct Invocation
    {
        std::string config_path;
        std::vector<std::string> overrides;
        std::string output_path;
        std::optional<std::uint64_t> seed;
        std::optional<unsigned> workers;
    };

    void add_common_options(CLI::App &sub, Invocation &inv, bool output_required)
    {
        sub.add_option("-c,--config", inv.config_path, "Configuration file (key = value lines)");
        sub.add_option("-s,--set", inv.overrides, "Override a setting, key=value (repeatable)")->take_all();
        auto *out = sub.add_option("-o,--out", inv.output_path, "Output file");
        if (output_required)
            out->required();
        sub.add_option("--seed", inv.seed, "Override the random seed");
        sub.add_option("-j,--workers", inv.workers, "Worker threads (default: $FADESEC_WORKERS or all cores)");
    }

    std::pair<ExperimentConfig, RunOptions> load(const Invocation &inv)
    {
        ExperimentConfig cfg;
        RunOptions options;
        if (const char *env = std::getenv(cli::workers_env))
            apply_setting(cfg, options, "workers", env);

        if (!inv.config_path.empty())
        {
            std::ifstream in(inv.config_path);
            if (!in)
                throw std::runtime_error("cannot open config file '" + inv.config_path + "'");
            read_config(in, cfg, options);
        }
        for (const auto &o : inv.overrides)
        {
            const auto eq = o.find('=');
            if (eq == std::string::npos)
                throw ConfigError(ConfigError::Kind::syntax, o, "override must be key=value");
            apply_setting(cfg, options, o.substr(0, eq), o.substr(eq + 1));
        }
        if (inv.seed)
            cfg.seed = *inv.seed;
        if (inv.workers)
            options.workers = *inv.workers;
        cfg.validate();
        return {cfg, options};
    }

    std::ofstream open_output(const std::string &path)
    {
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot open output file '" + path + "'");
        return out;
    }

    void print_scheme(std::ostream &out, const ThresholdScheme &s)
    {
        out << "scheme: median_m = " << format_value(s.median_m()) << ", threshold_t = " << format_value(s.threshold_t())
            << ", entropy_s = " << format_value(s.entropy_s()) << "\n";
    }

    int run_sweep_command(const Invocation &inv, std::ostream &out)
    {
        const auto [cfg, options] = load(inv);
        const auto start = std::chrono::steady_clock::now();
        const auto result = run_sweep(cfg, options);
        auto file = open_output(inv.output_path);
        write_sweep_csv(file, cfg, result);

        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        print_scheme(out, result.scheme);
        out << "diameter_m  cmi_bits  mi_bits  kept_fraction\n";
        for (const auto &r : result.rows)
            out << format_value(r.diameter) << "  " << format_value(r.cmi_bits) << "  " << format_value(r.mi_bits)
                << "  " << format_value(r.kept_fraction) << "\n";
        for (double d : result.cmi_above_mi)
            out << "note: cmi_bits exceeds mi_bits at diameter " << format_value(d) << " m\n";
        out << "wrote " << inv.output_path << " (" << result.rows.size() << " rows, " << format_value(secs) << " s)\n";
        return cli::exit_ok;
    }

    int run_pdf_command(const Invocation &inv, std::ostream &out)
    {
        const auto [cfg, options] = load(inv);
        const auto result = run_pdf_experiment(cfg, options);
        auto file = open_output(inv.output_path);
        write_pdf_csv(file, cfg, result);
        for (const auto &c : result.curves)
            out << c.label << ": D(curve||Rayleigh) = " << format_value(c.kl_bits)
                << " bits, D(Rayleigh||curve) = " << format_value(c.kl_reverse_bits) << " bits\n";
        out << "wrote " << inv.output_path << "\n";
        return cli::exit_ok;
    }

    int run_acf_command(const Invocation &inv, std::ostream &out)
    {
        const auto [cfg, options] = load(inv);
        const auto result = run_acf_experiment(cfg, options);
        auto file = open_output(inv.output_path);
        write_acf_csv(file, cfg, result);
        out << "rmse first_order = " << format_value(result.rmse_first_order)
            << ", squared_envelope = " << format_value(result.rmse_squared)
            << " (infinite-N formula " << format_value(result.rmse_squared_infinite) << ")\n";
        out << "wrote " << inv.output_path << "\n";
        return cli::exit_ok;
    }

    int run_calibrate_command(const Invocation &inv, std::ostream &out)
    {
        const auto [cfg, options] = load(inv);
        const auto scheme = calibrate_for(cfg, options);
        print_scheme(out, scheme);
        if (!inv.output_path.empty())
        {
            auto file = open_output(inv.output_path);
            for (const auto &[key, value] : render_config(cfg))
                file << "# config " << key << " = " << value << "\n";
            file << "median_m,threshold_t,entropy_s\n"
                 << format_value(scheme.median_m()) << ',' << format_value(scheme.threshold_t()) << ','
                 << format_value(scheme.entropy_s()) << "\n";
        }
        return cli::exit_ok;
    }

    int run_validate_command(const Invocation &inv, std::ostream &out)
    {
        const auto [cfg, options] = load(inv);
        const auto checks = run_validation(cfg, options);
        bool all = true;
        std::ofstream file;
        if (!inv.output_path.empty())
            file = open_output(inv.output_path);
        for (const auto &c : checks)
        {
            const std::string line = std::string(c.passed ? "PASS " : "FAIL ") + c.name + ": " + c.detail + "\n";
            out << line;
            if (file.is_open())
                file << line;
            all = all && c.passed;
        }
        return all ? cli::exit_ok : cli::exit_validation_failed;
    }
}

int fadesec::cli::parse_and_dispatch(const std::vector<std::string> &argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Monte Carlo key-rate analysis of fading-channel secret keys under aperture interception"};
    app.require_subcommand(1, 1);

    Invocation inv;
    auto *sweep = app.add_subcommand("sweep", "CMI versus Eve's aperture diameter");
    auto *pdf = app.add_subcommand("pdf", "Amplitude pdfs for few-path channels versus Rayleigh");
    auto *acf = app.add_subcommand("acf", "Empirical autocorrelations versus closed forms");
    auto *calibrate = app.add_subcommand("calibrate", "Calibrate the threshold scheme and print it");
    auto *validate = app.add_subcommand("validate", "Run channel and estimator self-tests");
    add_common_options(*sweep, inv, true);
    add_common_options(*pdf, inv, true);
    add_common_options(*acf, inv, true);
    add_common_options(*calibrate, inv, false);
    add_common_options(*validate, inv, false);

    std::vector<std::string> args(argv.rbegin(), argv.rend());
    if (!args.empty())
        args.pop_back(); // program name
    try
    {
        app.parse(args);
    }
    catch (const CLI::CallForHelp &)
    {
        out << app.help();
        return exit_ok;
    }
    catch (const CLI::ParseError &e)
    {
        err << "fadesec: error: " << e.what() << "\n";
        return exit_config_error;
    }

    try
    {
        if (*sweep)
            return run_sweep_command(inv, out);
        if (*pdf)
            return run_pdf_command(inv, out);
        if (*acf)
            return run_acf_command(inv, out);
        if (*calibrate)
            return run_calibrate_command(inv, out);
        return run_validate_command(inv, out);
    }
    catch (const ConfigError &e)
    {
        err << "fadesec: config error: " << e.what() << "\n";
        return exit_config_error;
    }
    catch (const std::exception &e)
    {
        err << "fadesec: error: " << e.what() << "\n";
        return exit_runtime_error;
    }
}
