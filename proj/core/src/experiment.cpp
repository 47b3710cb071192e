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
#include "fadesec/config.hpp"
#include "fadesec/special_math.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#ifndef FADESEC_VERSION
#define FADESEC_VERSION "unknown"
#endif

namespace
{
    using namespace fadesec;

    // Samples per random stream for the bulk sampling loops (calibration, pdf)
    constexpr std::uint64_t samples_per_stream = 4096;

    // Runs fn(chunk) for chunk in [0, chunk_count) on up to `workers` threads.
    // fn(worker, chunk) receives the worker slot so callers can keep per-worker state.
    template <class Fn>
    void parallel_chunks(std::uint64_t chunk_count, unsigned workers, Fn &&fn)
    {
        workers = unsigned(std::min<std::uint64_t>(std::max(1u, workers), std::max<std::uint64_t>(1, chunk_count)));
        std::atomic<std::uint64_t> next{0};
        std::exception_ptr error;
        std::mutex error_mutex;

        auto body = [&](unsigned worker)
        {
            try
            {
                for (std::uint64_t c = next++; c < chunk_count; c = next++)
                    fn(worker, c);
            }
            catch (...)
            {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                next = chunk_count;
            }
        };

        if (workers == 1)
        {
            body(0);
        }
        else
        {
            std::vector<std::jthread> pool;
            pool.reserve(workers);
            for (unsigned w = 0; w < workers; ++w)
                pool.emplace_back(body, w);
        }
        if (error)
            std::rethrow_exception(error);
    }

    // Integer tallies for one diameter. Merging is order-independent.
    struct DiameterTally
    {
        std::array<JointCounts, stderr_batches> batches{};
        std::uint64_t kept = 0;
        std::uint64_t ab_mismatch = 0;
        std::uint64_t eve_bob_agree = 0;

        DiameterTally &operator+=(const DiameterTally &o)
        {
            for (std::size_t b = 0; b < stderr_batches; ++b)
                batches[b] += o.batches[b];
            kept += o.kept;
            ab_mismatch += o.ab_mismatch;
            eve_bob_agree += o.eve_bob_agree;
            return *this;
        }
    };

    // Batch means standard error of an estimator over the non-empty batches
    template <class Estimator>
    double batch_stderr(const std::array<JointCounts, stderr_batches> &batches, Estimator &&estimate)
    {
        std::vector<double> values;
        for (const auto &b : batches)
            if (b.total() > 0)
                values.push_back(estimate(b));
        if (values.size() < 2)
            return 0.0;
        double mean = 0.0;
        for (double v : values)
            mean += v;
        mean /= double(values.size());
        double ss = 0.0;
        for (double v : values)
            ss += (v - mean) * (v - mean);
        const double k = double(values.size());
        return std::sqrt(ss / (k - 1.0) / k);
    }

    SweepRow summarize(double diameter, std::uint64_t trials, const DiameterTally &t)
    {
        SweepRow row;
        row.diameter = diameter;
        row.trials_kept = t.kept;
        row.kept_fraction = double(t.kept) / double(trials);

        JointCounts total;
        for (const auto &b : t.batches)
            total += b;
        if (total.total() > 0)
        {
            row.cmi_bits = conditional_mi(total);
            row.mi_bits = mutual_information(total);
            row.cmi_stderr = batch_stderr(t.batches, [](const JointCounts &c)
                                          { return conditional_mi(c); });
            row.mi_stderr = batch_stderr(t.batches, [](const JointCounts &c)
                                         { return mutual_information(c); });
            row.ab_mismatch = double(t.ab_mismatch) / double(t.kept);
            row.eve_bob_agreement = double(t.eve_bob_agree) / double(t.kept);
        }
        row.key_rate_bound_bits = std::min(row.mi_bits, row.cmi_bits);
        return row;
    }

    void write_metadata(std::ostream &out, std::string_view command, const ExperimentConfig &cfg)
    {
        out << "# fadesec " << FADESEC_VERSION << "\n";
        out << "# command = " << command << "\n";
        for (const auto &[key, value] : render_config(cfg))
            out << "# config " << key << " = " << value << "\n";
    }

    std::string format_exact(double v)
    {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }

    std::uint64_t stream_count(std::uint64_t samples)
    {
        return (samples + samples_per_stream - 1) / samples_per_stream;
    }
}

std::vector<double> fadesec::default_diameters()
{
    std::vector<double> d(21);
    for (std::size_t i = 0; i < d.size(); ++i)
        d[i] = 0.1 * std::pow(10.0, 2.0 * double(i) / 20.0);
    return d;
}

unsigned fadesec::resolve_workers(unsigned requested)
{
    if (requested > 0)
        return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

fadesec::ApertureConfig fadesec::aperture_for(const ExperimentConfig &cfg, double diameter)
{
    ApertureConfig ap;
    ap.diameter = diameter;
    ap.wavelength = cfg.wavelength_m;
    ap.pointing_sigma = cfg.pointing_sigma_rad;
    ap.eve_noise = cfg.eve_snr;
    ap.obliquity_enabled = cfg.obliquity;
    ap.interference_paths = cfg.resolved_interference_paths();
    ap.validate();
    return ap;
}

std::vector<double> fadesec::calibration_amplitudes(const ExperimentConfig &cfg, const RunOptions &options)
{
    if (cfg.calibration_samples == 0)
        throw ConfigError(ConfigError::Kind::constraint, "calibration_samples", "must be at least 1");

    std::vector<double> amplitudes(cfg.calibration_samples);
    const DopplerConfig doppler = DopplerConfig::from_hz(cfg.doppler_hz);
    parallel_chunks(stream_count(amplitudes.size()), resolve_workers(options.workers),
                    [&](unsigned, std::uint64_t chunk)
                    {
                        auto rng = make_stream(cfg.seed, StreamId::calibration, chunk);
                        const std::uint64_t begin = chunk * samples_per_stream;
                        const std::uint64_t end = std::min<std::uint64_t>(begin + samples_per_stream, amplitudes.size());
                        for (std::uint64_t i = begin; i < end; ++i)
                        {
                            const auto realization = draw_realization(cfg.n_paths, cfg.model, rng);
                            const Complex g = envelope_at(realization, doppler, 0.0);
                            amplitudes[i] = std::abs(add_receiver_noise(g, cfg.snr, rng));
                        }
                    });
    return amplitudes;
}

fadesec::ThresholdScheme fadesec::calibrate_for(const ExperimentConfig &cfg, const RunOptions &options)
{
    const auto amplitudes = calibration_amplitudes(cfg, options);
    return calibrate(amplitudes, threshold_for_noise(cfg.snr, cfg.threshold_multiple));
}

namespace
{
    TrialRecord trial_core(const ExperimentConfig &cfg, const ApertureConfig &ap, const InterceptionPlan &plan,
                           const DopplerConfig &doppler, const ThresholdScheme &scheme, RandomStream &rng)
    {
        const auto realization = draw_realization(cfg.n_paths, cfg.model, rng);
        const Complex g = envelope_at(realization, doppler, 0.0);
        const double alice = std::abs(add_receiver_noise(g, cfg.snr, rng));
        const double bob = std::abs(add_receiver_noise(g, cfg.snr, rng));
        const double eve = std::abs(intercept_and_combine(realization, plan, ap, doppler, 0.0, rng));
        return TrialRecord(quantize_legit(alice, scheme), quantize_legit(bob, scheme), quantize_eve(eve, scheme));
    }
}

fadesec::TrialRecord fadesec::run_trial(const ExperimentConfig &cfg, double diameter, const ThresholdScheme &scheme,
                                        RandomStream &rng)
{
    const ApertureConfig ap = aperture_for(cfg, diameter);
    const InterceptionPlan plan = InterceptionPlan::first(cfg.intercepted_count);
    return trial_core(cfg, ap, plan, DopplerConfig::from_hz(cfg.doppler_hz), scheme, rng);
}

fadesec::SweepResult fadesec::run_sweep(const ExperimentConfig &cfg, const RunOptions &options)
{
    cfg.validate();
    return run_sweep(cfg, calibrate_for(cfg, options), options);
}

fadesec::SweepResult fadesec::run_sweep(const ExperimentConfig &cfg, const ThresholdScheme &scheme,
                                        const RunOptions &options)
{
    cfg.validate();
    const unsigned workers = resolve_workers(options.workers);
    const InterceptionPlan plan = InterceptionPlan::first(cfg.intercepted_count);
    const DopplerConfig doppler = DopplerConfig::from_hz(cfg.doppler_hz);
    constexpr std::uint64_t trials_per_chunk = 1024;
    const std::uint64_t chunks = (cfg.trials + trials_per_chunk - 1) / trials_per_chunk;
    const std::uint64_t batches = std::min<std::uint64_t>(stderr_batches, cfg.trials);

    SweepResult result{scheme, {}, {}};
    for (double diameter : cfg.diameters_m)
    {
        const ApertureConfig ap = aperture_for(cfg, diameter);
        std::vector<DiameterTally> per_worker(workers);

        parallel_chunks(chunks, workers, [&](unsigned worker, std::uint64_t chunk)
                        {
            DiameterTally &tally = per_worker[worker];
            const std::uint64_t begin = chunk * trials_per_chunk;
            const std::uint64_t end = std::min(begin + trials_per_chunk, cfg.trials);
            for (std::uint64_t i = begin; i < end; ++i)
            {
                // Streams depend on the trial index only, so every diameter sees the same channels
                auto rng = make_stream(cfg.seed, StreamId::sweep_trials, i);
                const TrialRecord rec = trial_core(cfg, ap, plan, doppler, scheme, rng);
                if (!rec.kept())
                    continue;
                tally.batches[i * batches / cfg.trials].add(int(rec.alice()), int(rec.bob()), int(rec.eve()));
                ++tally.kept;
                tally.ab_mismatch += rec.alice() != rec.bob();
                tally.eve_bob_agree += rec.eve() == rec.bob();
            } });

        DiameterTally total;
        for (const auto &t : per_worker)
            total += t;
        result.rows.push_back(summarize(diameter, cfg.trials, total));
        if (result.rows.back().cmi_bits > result.rows.back().mi_bits)
            result.cmi_above_mi.push_back(diameter);
    }
    return result;
}

fadesec::PdfResult fadesec::run_pdf_experiment(const ExperimentConfig &cfg, const RunOptions &options)
{
    cfg.validate();
    const unsigned workers = resolve_workers(options.workers);
    const auto edges = uniform_edges(cfg.pdf_bins, 0.0, cfg.pdf_range_max);
    const auto unit = RayleighParams::unit_power();
    PdfResult result{Histogram::from_cdf(edges, [&](double r)
                                         { return rayleigh_cdf(r, unit); }),
                     {}};

    // Perfect interception: no pointing error, no clutter, no noise
    ApertureConfig ideal;
    ideal.diameter = 1.0;
    ideal.wavelength = 1.0;
    ideal.interference_paths = 1;

    const DopplerConfig doppler = DopplerConfig::from_hz(cfg.doppler_hz);
    for (std::size_t k = 0; k < cfg.pdf_paths.size(); ++k)
    {
        const std::size_t n = cfg.pdf_paths[k];
        const bool with_intercept = n > cfg.pdf_missing;
        const InterceptionPlan plan = InterceptionPlan::first(with_intercept ? n - cfg.pdf_missing : 0);

        std::vector<double> full(cfg.pdf_samples), partial(with_intercept ? cfg.pdf_samples : 0);
        parallel_chunks(stream_count(cfg.pdf_samples), workers, [&](unsigned, std::uint64_t chunk)
                        {
            auto rng = make_stream(cfg.seed, StreamId::pdf, (std::uint64_t(k) << 40) | chunk);
            const std::uint64_t begin = chunk * samples_per_stream;
            const std::uint64_t end = std::min<std::uint64_t>(begin + samples_per_stream, cfg.pdf_samples);
            for (std::uint64_t i = begin; i < end; ++i)
            {
                const auto realization = draw_realization(n, cfg.model, rng);
                full[i] = std::abs(envelope_at(realization, doppler, 0.0));
                if (with_intercept)
                    partial[i] = std::abs(intercept_and_combine(realization, plan, ideal, doppler, 0.0, rng));
            } });

        auto make_curve = [&](std::string label, std::size_t received, const std::vector<double> &samples)
        {
            PdfCurve c{std::move(label), n, received, empirical_pdf(samples, cfg.pdf_bins, 0.0, cfg.pdf_range_max), 0.0, 0.0};
            c.kl_bits = kl_divergence(c.pdf, result.rayleigh);
            const auto smoothed = empirical_pdf(samples, cfg.pdf_bins, 0.0, cfg.pdf_range_max, Smoothing::add_half);
            c.kl_reverse_bits = kl_divergence(result.rayleigh, smoothed);
            return c;
        };

        result.curves.push_back(make_curve("n" + std::to_string(n), n, full));
        if (with_intercept)
        {
            const std::size_t received = n - cfg.pdf_missing;
            result.curves.push_back(make_curve("n" + std::to_string(n) + "_intercept" + std::to_string(received),
                                               received, partial));
        }
    }
    return result;
}

fadesec::AcfResult fadesec::run_acf_experiment(const ExperimentConfig &cfg, const RunOptions &options)
{
    cfg.validate();
    if (!(cfg.doppler_hz > 0.0))
        throw ConfigError(ConfigError::Kind::constraint, "doppler_hz", "acf experiment needs a positive Doppler");

    const auto max_lag = std::size_t(std::llround(cfg.acf_max_lag_rad / cfg.acf_step_rad));
    if (cfg.acf_series_length <= max_lag)
        throw ConfigError(ConfigError::Kind::constraint, "acf_series_length", "must exceed the number of lags");

    const DopplerConfig doppler = DopplerConfig::from_hz(cfg.doppler_hz);
    const double dt = cfg.acf_step_rad / doppler.w_d();

    // Floating-point sums are merged per fixed chunk in chunk order so results do not depend on scheduling
    constexpr std::uint64_t realizations_per_chunk = 64;
    const std::uint64_t chunks = (cfg.acf_realizations + realizations_per_chunk - 1) / realizations_per_chunk;
    std::vector<AcfAccumulator> partial(chunks, AcfAccumulator(max_lag));

    parallel_chunks(chunks, resolve_workers(options.workers), [&](unsigned, std::uint64_t chunk)
                    {
        std::vector<Complex> series(cfg.acf_series_length);
        const std::uint64_t begin = chunk * realizations_per_chunk;
        const std::uint64_t end = std::min(begin + realizations_per_chunk, cfg.acf_realizations);
        for (std::uint64_t r = begin; r < end; ++r)
        {
            auto rng = make_stream(cfg.seed, StreamId::acf, r);
            const auto realization = draw_realization(cfg.n_paths, cfg.model, rng);
            for (std::size_t i = 0; i < series.size(); ++i)
                series[i] = envelope_at(realization, doppler, double(i) * dt);
            partial[chunk].add(series);
        } });

    AcfAccumulator total(max_lag);
    for (const auto &p : partial)
        total += p;
    const auto points = total.result();

    AcfResult result;
    const double inv_n = 1.0 / double(cfg.n_paths);
    double se1 = 0.0, se2 = 0.0, se2inf = 0.0;
    for (std::size_t lag = 0; lag <= max_lag; ++lag)
    {
        AcfRow row;
        row.lag_rad = double(lag) * cfg.acf_step_rad;
        const double j0 = bessel_j0(row.lag_rad);
        row.first_order = points[lag].first_order;
        row.first_order_theory = j0;
        row.squared_envelope = points[lag].squared_envelope;
        row.squared_theory = 1.0 + j0 * j0 * (1.0 - inv_n);
        row.squared_theory_infinite = 1.0 + j0 * j0;
        se1 += std::pow(row.first_order - row.first_order_theory, 2);
        se2 += std::pow(row.squared_envelope - row.squared_theory, 2);
        se2inf += std::pow(row.squared_envelope - row.squared_theory_infinite, 2);
        result.rows.push_back(row);
    }
    const double count = double(result.rows.size());
    result.rmse_first_order = std::sqrt(se1 / count);
    result.rmse_squared = std::sqrt(se2 / count);
    result.rmse_squared_infinite = std::sqrt(se2inf / count);
    return result;
}

std::string fadesec::format_value(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void fadesec::write_sweep_csv(std::ostream &out, const ExperimentConfig &cfg, const SweepResult &result)
{
    write_metadata(out, "sweep", cfg);
    out << "# scheme median_m = " << format_exact(result.scheme.median_m()) << "\n";
    out << "# scheme threshold_t = " << format_exact(result.scheme.threshold_t()) << "\n";
    out << "# scheme entropy_s = " << format_exact(result.scheme.entropy_s()) << "\n";
    out << "diameter_m,cmi_bits,cmi_stderr,mi_bits,mi_stderr,key_rate_bound_bits,kept_fraction,ab_mismatch,"
           "eve_bob_agreement,trials_kept\n";
    for (const auto &r : result.rows)
    {
        out << format_value(r.diameter) << ',' << format_value(r.cmi_bits) << ',' << format_value(r.cmi_stderr) << ','
            << format_value(r.mi_bits) << ',' << format_value(r.mi_stderr) << ',' << format_value(r.key_rate_bound_bits)
            << ',' << format_value(r.kept_fraction) << ',' << format_value(r.ab_mismatch) << ','
            << format_value(r.eve_bob_agreement) << ',' << r.trials_kept << "\n";
    }
}

void fadesec::write_pdf_csv(std::ostream &out, const ExperimentConfig &cfg, const PdfResult &result)
{
    write_metadata(out, "pdf", cfg);
    out << "bin_center,rayleigh";
    for (const auto &c : result.curves)
        out << ',' << c.label;
    out << "\n";
    for (std::size_t b = 0; b < result.rayleigh.bin_count(); ++b)
    {
        out << format_value(result.rayleigh.center(b)) << ',' << format_value(result.rayleigh.masses()[b]);
        for (const auto &c : result.curves)
            out << ',' << format_value(c.pdf.masses()[b]);
        out << "\n";
    }
    out << "# kl_summary curve,paths_received,kl_bits,kl_reverse_bits\n";
    for (const auto &c : result.curves)
        out << "# kl " << c.label << ',' << c.paths_received << ',' << format_value(c.kl_bits) << ','
            << format_value(c.kl_reverse_bits) << "\n";
}

void fadesec::write_acf_csv(std::ostream &out, const ExperimentConfig &cfg, const AcfResult &result)
{
    write_metadata(out, "acf", cfg);
    out << "# rmse first_order = " << format_value(result.rmse_first_order) << "\n";
    out << "# rmse squared_envelope = " << format_value(result.rmse_squared) << "\n";
    out << "# rmse squared_envelope_infinite_n = " << format_value(result.rmse_squared_infinite) << "\n";
    out << "lag_rad,first_order,first_order_theory,squared_envelope,squared_theory,squared_theory_infinite_n\n";
    for (const auto &r : result.rows)
        out << format_value(r.lag_rad) << ',' << format_value(r.first_order) << ','
            << format_value(r.first_order_theory) << ',' << format_value(r.squared_envelope) << ','
            << format_value(r.squared_theory) << ',' << format_value(r.squared_theory_infinite) << "\n";
}
