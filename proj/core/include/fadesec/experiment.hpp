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

#include "fadesec/adversary.hpp"
#include "fadesec/fading.hpp"
#include "fadesec/infotheory.hpp"
#include "fadesec/keygen.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace fadesec
{
    // 21 log-spaced diameters with d / lambda from 1 to 100 at lambda = 0.1 m
    std::vector<double> default_diameters();

    // Full parameter set of a run. Field names mirror the config file keys.
    struct ExperimentConfig
    {
        std::size_t n_paths = 6;
        std::size_t intercepted_count = 6;
        ChannelModel model = ChannelModel::clarke;
        NoiseLevel snr = NoiseLevel::from_snr_db(17.0);     // Alice and Bob
        NoiseLevel eve_snr = NoiseLevel::from_snr_db(17.0); // each of Eve's receivers
        double doppler_hz = 10.0;
        double wavelength_m = 0.1;
        double pointing_sigma_rad = 0.002;
        double threshold_multiple = 3.0;
        std::vector<double> diameters_m = default_diameters();
        std::uint64_t trials = 100000;
        std::uint64_t calibration_samples = 1000000;
        std::uint64_t seed = 1;
        bool obliquity = false;
        std::optional<std::size_t> interference_paths; // unset: equal to n_paths

        // pdf experiment
        std::vector<std::size_t> pdf_paths = {6};
        std::size_t pdf_missing = 1;
        std::uint64_t pdf_samples = 1000000;
        std::size_t pdf_bins = 100;
        double pdf_range_max = 3.0;

        // acf experiment
        double acf_max_lag_rad = 10.0;
        double acf_step_rad = 0.1;
        std::uint64_t acf_realizations = 10000;
        std::size_t acf_series_length = 1001;

        std::size_t resolved_interference_paths() const { return interference_paths.value_or(n_paths); }

        // Throws ConfigError (see config.hpp) naming the first offending key
        void validate() const;

        bool operator==(const ExperimentConfig &) const = default;
    };

    // Execution settings that must not influence results
    struct RunOptions
    {
        unsigned workers = 0; // 0: hardware concurrency
    };

    unsigned resolve_workers(unsigned requested);

    ApertureConfig aperture_for(const ExperimentConfig &cfg, double diameter);

    // Amplitudes |g + n| seen by Bob under the configuration's channel and noise
    std::vector<double> calibration_amplitudes(const ExperimentConfig &cfg, const RunOptions &options = {});

    ThresholdScheme calibrate_for(const ExperimentConfig &cfg, const RunOptions &options = {});

    // One independent channel draw, observed by Alice, Bob and Eve at t = 0
    TrialRecord run_trial(const ExperimentConfig &cfg, double diameter, const ThresholdScheme &scheme,
                          RandomStream &rng);

    struct SweepRow
    {
        double diameter = 0.0;
        double cmi_bits = 0.0;
        double cmi_stderr = 0.0;
        double mi_bits = 0.0;
        double mi_stderr = 0.0;
        double key_rate_bound_bits = 0.0; // min(mi_bits, cmi_bits)
        double kept_fraction = 0.0;
        double ab_mismatch = 0.0;       // among kept trials
        double eve_bob_agreement = 0.0; // among kept trials
        std::uint64_t trials_kept = 0;
    };

    struct SweepResult
    {
        ThresholdScheme scheme;
        std::vector<SweepRow> rows;
        // Diameters where cmi_bits exceeded mi_bits; expected empty, reported rather than enforced
        std::vector<double> cmi_above_mi;
    };

    inline constexpr std::size_t stderr_batches = 20;

    SweepResult run_sweep(const ExperimentConfig &cfg, const RunOptions &options = {});

    // Same sweep with an externally supplied scheme, skipping calibration
    SweepResult run_sweep(const ExperimentConfig &cfg, const ThresholdScheme &scheme, const RunOptions &options = {});

    struct PdfCurve
    {
        std::string label;
        std::size_t n_paths = 0;
        std::size_t paths_received = 0; // fewer than n_paths for the interception curves
        Histogram pdf;
        double kl_bits = 0.0;         // D(curve || Rayleigh)
        double kl_reverse_bits = 0.0; // D(Rayleigh || curve), curve smoothed with add-half
    };

    struct PdfResult
    {
        Histogram rayleigh;
        std::vector<PdfCurve> curves;
    };

    // Amplitude pdfs for each n_paths entry plus, where possible, the curve of an Eve who perfectly intercepts
    // all but pdf_missing of the paths.
    PdfResult run_pdf_experiment(const ExperimentConfig &cfg, const RunOptions &options = {});

    struct AcfRow
    {
        double lag_rad = 0.0; // w_d tau
        double first_order = 0.0;
        double first_order_theory = 0.0; // J0
        double squared_envelope = 0.0;
        double squared_theory = 0.0;          // 1 + J0^2 (1 - 1/N)
        double squared_theory_infinite = 0.0; // 1 + J0^2
    };

    struct AcfResult
    {
        std::vector<AcfRow> rows;
        double rmse_first_order = 0.0;
        double rmse_squared = 0.0;
        double rmse_squared_infinite = 0.0;
    };

    AcfResult run_acf_experiment(const ExperimentConfig &cfg, const RunOptions &options = {});

    // CSV writers. Metadata goes into '#' lines ahead of the header: tool version, the config echo and,
    // for sweeps, the calibrated scheme.
    void write_sweep_csv(std::ostream &out, const ExperimentConfig &cfg, const SweepResult &result);
    void write_pdf_csv(std::ostream &out, const ExperimentConfig &cfg, const PdfResult &result);
    void write_acf_csv(std::ostream &out, const ExperimentConfig &cfg, const AcfResult &result);

    // Six significant digits
    std::string format_value(double v);
}
