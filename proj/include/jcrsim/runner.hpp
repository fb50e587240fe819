// SPDX-License-Identifier: Apache-2.0
//
// jcrsim - joint chirp-radar/communication simulator
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

#ifndef JCRSIM_RUNNER_HPP
#define JCRSIM_RUNNER_HPP

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "jcrsim/comm.hpp"
#include "jcrsim/photonic.hpp"
#include "jcrsim/radar.hpp"
#include "jcrsim/scenario.hpp"
#include "jcrsim/signal.hpp"
#include "jcrsim/waveform.hpp"

namespace jcrsim {

inline constexpr const char *kVersionString = "0.1.0";
inline constexpr int kMetricsSchemaVersion = 1;

struct RunOptions {
    std::optional<std::uint64_t> seed;
    std::optional<double> sample_rate;
    std::optional<std::string> out_dir;
    int threads = 1;
};

struct Artifact {
    std::string filename;
    std::string kind; // "csv", "pgm" or "json"
    std::vector<unsigned char> bytes;
};

struct ResultBundle {
    Scenario scenario; // post-override echo
    nlohmann::json metrics;
    std::vector<Artifact> artifacts; // includes metrics.json
    double wall_time_s = 0.0;
};

// ---------------------------------------------------------------------------
// Formatting and artifact builders
// ---------------------------------------------------------------------------

namespace detail {

inline std::uint64_t fnv1a64(const unsigned char *data, std::size_t n)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < n; ++i)
    {
        h ^= static_cast<std::uint64_t>(data[i]);
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t v)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

inline std::string fmt(double x, const char *spec = "%.9e")
{
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, x);
    return buf;
}

inline void append_text(std::vector<unsigned char> &out, const std::string &s)
{
    out.insert(out.end(), s.begin(), s.end());
}

inline Artifact csv_artifact(const std::string &filename, const std::vector<std::string> &header,
                             const std::vector<std::vector<std::string>> &rows)
{
    Artifact a;
    a.filename = filename;
    a.kind = "csv";
    std::string line;
    for (std::size_t i = 0; i < header.size(); ++i)
    {
        if (i)
            line += ',';
        line += header[i];
    }
    line += '\n';
    append_text(a.bytes, line);
    for (const auto &row : rows)
    {
        line.clear();
        for (std::size_t i = 0; i < row.size(); ++i)
        {
            if (i)
                line += ',';
            line += row[i];
        }
        line += '\n';
        append_text(a.bytes, line);
    }
    return a;
}

inline Artifact json_artifact(const std::string &filename, const nlohmann::json &j)
{
    Artifact a;
    a.filename = filename;
    a.kind = "json";
    append_text(a.bytes, j.dump(2));
    a.bytes.push_back('\n');
    return a;
}

// 16-bit big-endian binary PGM; dB values (image peak = 0 dB) are clamped to
// [-dynamic_range, 0] and mapped linearly onto [0, 65535].
inline Artifact pgm_artifact(const std::string &filename, const IsarImage &img,
                             double dynamic_range_db)
{
    Artifact a;
    a.filename = filename;
    a.kind = "pgm";
    const std::size_t rows = img.num_range;
    const std::size_t cols = img.num_cross;
    append_text(a.bytes,
                "P5\n" + std::to_string(cols) + " " + std::to_string(rows) + "\n65535\n");
    a.bytes.reserve(a.bytes.size() + rows * cols * 2);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
        {
            double db = img.db_at(r, c);
            if (db < -dynamic_range_db)
                db = -dynamic_range_db;
            if (db > 0.0)
                db = 0.0;
            const double scaled = (db + dynamic_range_db) / dynamic_range_db * 65535.0;
            const auto v = static_cast<std::uint16_t>(std::lround(scaled));
            a.bytes.push_back(static_cast<unsigned char>(v >> 8));
            a.bytes.push_back(static_cast<unsigned char>(v & 0xff));
        }
    return a;
}

inline nlohmann::json axes_json(const IsarImage &img, double dynamic_range_db)
{
    nlohmann::json j;
    j["rows"] = img.num_range;
    j["cols"] = img.num_cross;
    j["row_axis"] = "range_m";
    j["col_axis"] = "cross_range_m";
    j["range_axis_m"] = img.range_axis;
    j["cross_axis_m"] = img.cross_axis;
    j["db_min"] = -dynamic_range_db;
    j["db_max"] = 0.0;
    j["mapping"] = "pixel = round((db - db_min) / (db_max - db_min) * 65535), db clamped";
    j["predicted_range_resolution_m"] = img.predicted.range_m;
    j["predicted_cross_resolution_m"] = img.predicted.cross_range_m;
    return j;
}

// JSON cannot represent infinities; encode them as strings.
inline nlohmann::json json_number(double x)
{
    if (std::isfinite(x))
        return x;
    return x > 0 ? "inf" : "-inf";
}

} // namespace detail

// ---------------------------------------------------------------------------
// Shared pieces
// ---------------------------------------------------------------------------

namespace detail {

inline std::uint64_t noise_seed_of(std::uint64_t seed)
{
    return seed ^ 0x6a09e667f3bcc909ULL; // decorrelates noise from payload bits
}

// Payload for the scenario: pseudorandom bits, or a constant-phase frame
// (all-zero bits) when the bit rate is zero, which models an unmodulated
// chirp while keeping the Y arm driven.
inline QpskFrame scenario_frame(const Scenario &s, int num_periods)
{
    const LfmParams lfm = scenario_lfm(s);
    const double nrz = scenario_nrz_level(s);
    if (s.waveform.bit_rate > 0.0)
        return gen_qpsk_frame(s.waveform.bit_rate, lfm, num_periods, s.seed, nrz);
    QpskFrame f = gen_qpsk_frame(105.26315789e6, lfm, num_periods, s.seed, nrz);
    std::fill(f.i_bits.begin(), f.i_bits.end(), std::uint8_t{0});
    std::fill(f.q_bits.begin(), f.q_bits.end(), std::uint8_t{0});
    return f;
}

// Two-sided spectrum rows (ascending frequency) for complex envelopes.
inline std::vector<std::vector<std::string>> spectrum_rows_two_sided(const Spectrum &spec,
                                                                     const std::vector<double> &db)
{
    const std::size_t n = spec.bins.size();
    std::vector<std::vector<std::string>> rows;
    rows.reserve(n);
    const auto push = [&](std::size_t i) {
        rows.push_back({fmt(spec.frequency_at(i), "%.6e"), fmt(db[i], "%.4f")});
    };
    for (std::size_t i = n / 2 + 1; i < n; ++i)
        push(i);
    for (std::size_t i = 0; i <= n / 2; ++i)
        push(i);
    return rows;
}

// Positive-frequency spectrum rows for real signals.
inline std::vector<std::vector<std::string>> spectrum_rows_one_sided(const Spectrum &spec,
                                                                     const std::vector<double> &db)
{
    const std::size_t n = spec.bins.size();
    std::vector<std::vector<std::string>> rows;
    rows.reserve(n / 2 + 1);
    for (std::size_t i = 0; i <= n / 2; ++i)
        rows.push_back({fmt(spec.frequency_at(i), "%.6e"), fmt(db[i], "%.4f")});
    return rows;
}

// -20 dB occupancy edges over the positive half of a spectrum.
inline std::pair<double, double> occupied_band(const Spectrum &spec, const std::vector<double> &db,
                                               double threshold_db = -20.0)
{
    const std::size_t n = spec.bins.size();
    double lo = 0.0, hi = 0.0;
    bool found = false;
    for (std::size_t i = 0; i <= n / 2; ++i)
        if (db[i] >= threshold_db)
        {
            if (!found)
            {
                lo = spec.frequency_at(i);
                found = true;
            }
            hi = spec.frequency_at(i);
        }
    return {lo, hi};
}

// ---------------------------------------------------------------------------
// Experiment drivers
// ---------------------------------------------------------------------------

inline void run_spectra_experiment(const Scenario &s, int /*threads*/, nlohmann::json &m,
                                   std::vector<Artifact> &arts)
{
    const LfmParams lfm = scenario_lfm(s);
    const double fs = s.waveform.sample_rate;
    const PhotonicChainConfig chain = scenario_chain(s);
    const QpskFrame frame = scenario_frame(s, 1);

    const auto [v1, v2] = gen_lfm_pair_period(lfm, fs);
    const auto [iw, qw] = render_iq(frame, fs, 1);

    const SampledSignal ex = xdpmzm_field(chain.carrier, v1, v2, chain.modulator);
    const SampledSignal ey = ydpmzm_field(chain.carrier, iw, qw, chain.modulator);
    const SampledSignal combined = pol_combine(ex, ey);
    const SampledSignal current = photodetect(combined, chain.detector);
    const SampledSignal joint =
        extract_joint_signal(current, chain.ebpf_lo, chain.ebpf_hi, chain.ebpf_taps);

    const auto spectrum_of = [](const SampledSignal &sig) { return fft(apply_window(sig, Window::hann)); };
    const Spectrum sx = spectrum_of(ex);
    const Spectrum sy = spectrum_of(ey);
    const Spectrum sc = spectrum_of(combined);
    const Spectrum si = spectrum_of(current);
    const Spectrum sj = spectrum_of(joint);

    const std::vector<std::string> head = {"freq_hz", "magnitude_db"};
    arts.push_back(csv_artifact("optical_x_spectrum.csv", head,
                                spectrum_rows_two_sided(sx, spectrum_magnitude_db(sx))));
    arts.push_back(csv_artifact("optical_y_spectrum.csv", head,
                                spectrum_rows_two_sided(sy, spectrum_magnitude_db(sy))));
    arts.push_back(csv_artifact("optical_combined_spectrum.csv", head,
                                spectrum_rows_two_sided(sc, spectrum_magnitude_db(sc))));
    arts.push_back(csv_artifact("photocurrent_spectrum.csv", head,
                                spectrum_rows_one_sided(si, spectrum_magnitude_db(si))));
    const std::vector<double> joint_db = spectrum_magnitude_db(sj);
    arts.push_back(csv_artifact("joint_spectrum.csv", head, spectrum_rows_one_sided(sj, joint_db)));

    // Band bookkeeping on unwindowed spectra (honest power integrals).
    const Spectrum px = fft(ex);
    const Spectrum pj = fft(joint);
    const Spectrum pi = fft(current);
    const double guard = 0.2e9;
    const double f_lo = lfm.f0;
    const double f_hi = lfm.f_max();
    const double p_carrier = band_power_fraction(px, -guard, guard);
    const double p_minus1 = band_power_fraction(px, -f_hi - guard, -f_lo + guard);
    const double p_plus1 = band_power_fraction(px, f_lo - guard, f_hi + guard);
    const double floor_frac = 1.0e-30;
    m["carrier_suppression_db"] =
        10.0 * std::log10(p_minus1 / std::max(p_carrier, floor_frac));
    m["upper_sideband_suppression_db"] =
        10.0 * std::log10(p_minus1 / std::max(p_plus1, floor_frac));
    // Real electrical signals split power evenly across +/- frequencies;
    // count both halves of each band.
    const auto real_band = [](const Spectrum &spec, double lo, double hi) {
        return band_power_fraction(spec, lo, hi) + band_power_fraction(spec, -hi, -lo);
    };
    m["joint_band_power_fraction"] = real_band(pj, f_lo - guard, f_hi + guard);
    // Skip the DC bin: the photocurrent's mean tells nothing about occupancy.
    const double df = pi.freq_resolution;
    m["photocurrent_baseband_fraction"] = real_band(pi, df, 1.5e9);
    m["photocurrent_chirp_band_fraction"] = real_band(pi, f_lo - guard, f_hi + guard);
    const auto [olo, ohi] = occupied_band(sj, joint_db);
    m["joint_band_lo_hz"] = olo;
    m["joint_band_hi_hz"] = ohi;
}

inline void run_ranging_experiment(const Scenario &s, int threads, nlohmann::json &m,
                                   std::vector<Artifact> &arts)
{
    const LfmParams lfm = scenario_lfm(s);
    const QpskFrame frame = scenario_frame(s, s.radar.num_pulses);
    const TargetScene scene = scenario_scene(s);
    const JointTxConfig tx = scenario_tx(s);
    const RadarProcParams proc = scenario_radar_proc(s);

    const auto pulses = collect_pulse_matrix(lfm, frame, scene, tx, proc, s.waveform.sample_rate,
                                             s.radar.num_pulses, threads);
    const RangeProfile profile = range_profile(pulses[0], lfm.chirp_rate(), 8, s.radar.window);

    const auto n_targets = static_cast<int>(scene.scatterers.size());
    std::vector<double> beats = estimate_beat_frequencies(profile, n_targets);
    std::vector<double> est = estimate_distances(profile, n_targets);
    std::sort(beats.begin(), beats.end());
    std::sort(est.begin(), est.end());

    std::vector<double> truth;
    truth.reserve(scene.scatterers.size());
    for (const auto &sc : scene.scatterers)
        truth.push_back(scatterer_range(scene, sc, 0.0));
    std::sort(truth.begin(), truth.end());

    std::vector<double> errors(truth.size());
    double max_err = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i)
    {
        errors[i] = est[i] - truth[i];
        max_err = std::max(max_err, std::abs(errors[i]));
    }

    std::vector<std::vector<std::string>> rows;
    rows.reserve(profile.beat_frequencies.size());
    for (std::size_t i = 0; i < profile.beat_frequencies.size(); ++i)
        rows.push_back({fmt(profile.beat_frequencies[i], "%.6e"), fmt(profile.distance_at(i)),
                        fmt(profile.magnitude_db[i], "%.4f")});
    arts.push_back(csv_artifact("range_profile.csv", {"beat_hz", "distance_m", "magnitude_db"}, rows));

    m["true_distances_m"] = truth;
    m["estimated_distances_m"] = est;
    m["beat_frequencies_hz"] = beats;
    m["errors_m"] = errors;
    m["max_abs_error_m"] = max_err;
    m["pisr_db"] = profile_pisr_db(profile);
}

inline void run_isar_experiment(const Scenario &s, int threads, nlohmann::json &m,
                                std::vector<Artifact> &arts)
{
    const LfmParams lfm = scenario_lfm(s);
    const QpskFrame frame = scenario_frame(s, s.radar.num_pulses);
    const TargetScene scene = scenario_scene(s);
    const JointTxConfig tx = scenario_tx(s);
    const RadarProcParams proc = scenario_radar_proc(s);

    const auto pulses = collect_pulse_matrix(lfm, frame, scene, tx, proc, s.waveform.sample_rate,
                                             s.radar.num_pulses, threads);

    IsarOptions opt;
    opt.window = s.radar.window;
    opt.range_pad = s.radar.range_pad;
    opt.doppler_pad = s.radar.doppler_pad;
    const double lambda = kSpeedOfLight / (lfm.f0 + lfm.bandwidth / 2.0);
    const double tr = static_cast<double>(s.radar.num_pulses) * lfm.period;
    const IsarImage img = isar_image(pulses, lfm.chirp_rate(), lambda, tr, scene.omega, opt);

    const auto report = extract_image_peaks(img, static_cast<int>(scene.scatterers.size()),
                                            2 * s.radar.range_pad, 2 * s.radar.doppler_pad);

    arts.push_back(pgm_artifact("isar_image.pgm", img, s.outputs.dynamic_range_db));
    arts.push_back(json_artifact("isar_image.axes.json", axes_json(img, s.outputs.dynamic_range_db)));

    m["predicted_range_resolution_m"] = img.predicted.range_m;
    m["predicted_cross_resolution_m"] = img.predicted.cross_range_m;
    m["aperture_rad"] = tr * scene.omega;
    m["wavelength_m"] = lambda;
    m["contrast_db"] = image_contrast_db(img);
    nlohmann::json peaks = nlohmann::json::array();
    double min_peak = 0.0;
    for (const auto &p : report.peaks)
    {
        peaks.push_back({{"range_m", p.range_m},
                         {"cross_range_m", p.cross_range_m},
                         {"level_db", p.level_db}});
        min_peak = std::min(min_peak, p.level_db);
    }
    m["peaks"] = peaks;
    m["residual_max_db"] = report.residual_max_db;
    m["peak_margin_db"] = min_peak - report.residual_max_db;
}

inline void run_loopback_experiment(const Scenario &s, int threads, nlohmann::json &m,
                                    std::vector<Artifact> &arts)
{
    const LfmParams lfm = scenario_lfm(s);
    const QpskFrame frame = scenario_frame(s, std::max(1, s.waveform.num_periods));

    CommRunConfig run;
    run.tx = scenario_tx(s);
    run.channel = s.comm.channel;
    run.sample_rate = s.waveform.sample_rate;
    run.noise_seed = noise_seed_of(s.seed);
    run.threads = threads;
    const DemodResult res = run_comm_chain(lfm, frame, run);

    std::vector<std::vector<std::string>> crows;
    crows.reserve(res.constellation.size());
    for (const auto &z : res.constellation)
        crows.push_back({fmt(z.real(), "%.6f"), fmt(z.imag(), "%.6f")});
    arts.push_back(csv_artifact("constellation.csv", {"i", "q"}, crows));

    // Recovered baseband against the transmitted rails over the display
    // window (gain-normalized so both live on the +/-1 grid).
    const double if_rate = res.baseband.sample_rate;
    const auto n_window = std::min(
        res.baseband.size(),
        static_cast<std::size_t>(std::llround(s.outputs.display_window * if_rate)));
    const std::size_t n_active_if = detail::active_samples_per_period(lfm, if_rate);
    std::vector<std::vector<std::string>> wrows;
    wrows.reserve(n_window);
    for (std::size_t n = 0; n < n_window; ++n)
    {
        const double t = static_cast<double>(n) / if_rate;
        const cplx z = res.baseband.samples[n] / res.gain;
        double ti = 0.0, tq = 0.0;
        if (n < n_active_if)
        {
            const int sym = detail::symbol_of_sample(n, n_active_if, frame.symbols_per_chirp);
            ti = frame.i_level(sym) / frame.nrz_level;
            tq = frame.q_level(sym) / frame.nrz_level;
        }
        wrows.push_back({fmt(t), fmt(z.real(), "%.6f"), fmt(z.imag(), "%.6f"),
                         fmt(ti, "%.6f"), fmt(tq, "%.6f")});
    }
    arts.push_back(csv_artifact("baseband_waveform.csv",
                                {"t_s", "rx_i", "rx_q", "tx_i", "tx_q"}, wrows));

    std::vector<std::vector<std::string>> brows;
    const std::size_t n_syms = res.constellation.size();
    brows.reserve(n_syms);
    for (std::size_t sym = 0; sym < n_syms; ++sym)
        brows.push_back({std::to_string(sym), std::to_string(int(frame.i_bits[sym])),
                         std::to_string(int(frame.q_bits[sym])),
                         std::to_string(int(res.decided_bits[2 * sym])),
                         std::to_string(int(res.decided_bits[2 * sym + 1]))});
    arts.push_back(csv_artifact("recovered_bits.csv",
                                {"symbol", "tx_i_bit", "tx_q_bit", "rx_i_bit", "rx_q_bit"}, brows));

    m["evm_percent"] = res.evm_percent;
    m["ber"] = res.ber;
    m["bit_errors"] = res.bit_errors;
    m["total_bits"] = res.total_bits;
    m["gain_magnitude"] = std::abs(res.gain);
    m["gain_phase_rad"] = std::arg(res.gain);
}

inline void run_evm_experiment(const Scenario &s, int threads, nlohmann::json &m,
                               std::vector<Artifact> &arts)
{
    EvmSweepConfig cfg;
    cfg.base_lfm = scenario_lfm(s);
    cfg.run.tx = scenario_tx(s);
    cfg.run.channel = s.comm.channel;
    cfg.run.sample_rate = s.waveform.sample_rate;
    cfg.run.noise_seed = noise_seed_of(s.seed);
    cfg.run.threads = threads;
    cfg.m1 = s.link.m1;
    cfg.m2_level = s.link.m2_level;
    cfg.min_bits = s.comm.min_bits;
    cfg.data_seed = s.seed;

    std::vector<double> bandwidths = s.comm.sweep_bandwidths;
    if (bandwidths.empty())
        bandwidths = {s.waveform.lfm.bandwidth};
    std::vector<double> bit_rates = s.comm.sweep_bit_rates;
    if (bit_rates.empty())
        bit_rates = {s.waveform.bit_rate};
    std::vector<double> snrs = s.comm.sweep_snrs_db;
    if (s.experiment == ExperimentKind::evm_grid || snrs.empty())
        snrs = {s.comm.channel.snr_db};

    const auto points = run_evm_sweep(bandwidths, bit_rates, snrs, cfg);

    std::vector<std::vector<std::string>> rows;
    rows.reserve(points.size());
    nlohmann::json jpoints = nlohmann::json::array();
    for (const auto &p : points)
    {
        rows.push_back({fmt(p.bandwidth, "%.6e"), fmt(p.bit_rate, "%.8e"), fmt(p.snr_db, "%.4f"),
                        fmt(p.evm_percent, "%.6f"), fmt(p.ber), std::to_string(p.total_bits)});
        jpoints.push_back({{"bandwidth_hz", p.bandwidth},
                           {"bit_rate_bps", p.bit_rate},
                           {"snr_db", json_number(p.snr_db)},
                           {"evm_percent", p.evm_percent},
                           {"ber", p.ber},
                           {"total_bits", p.total_bits}});
    }
    arts.push_back(csv_artifact(
        "evm_points.csv",
        {"bandwidth_hz", "bit_rate_bps", "snr_db", "evm_percent", "ber", "total_bits"}, rows));
    m["points"] = jpoints;

    if (s.experiment == ExperimentKind::evm_grid)
        for (const auto &p : points)
        {
            char tag[64];
            std::snprintf(tag, sizeof tag, "constellation_bw%.0fMHz_rb%.2fMbps.csv",
                          p.bandwidth / 1.0e6, p.bit_rate / 1.0e6);
            std::vector<std::vector<std::string>> crows;
            crows.reserve(p.constellation.size());
            for (const auto &z : p.constellation)
                crows.push_back({fmt(z.real(), "%.6f"), fmt(z.imag(), "%.6f")});
            arts.push_back(csv_artifact(tag, {"i", "q"}, crows));
        }
}

inline void run_phase_sweep_experiment(const Scenario &s, int threads, nlohmann::json &m,
                                       std::vector<Artifact> &arts)
{
    PhaseSweepConfig cfg;
    cfg.lfm = scenario_lfm(s);
    cfg.sample_rate = s.waveform.sample_rate;
    cfg.num_pulses = s.radar.num_pulses;
    cfg.omega = s.radar.omega;
    cfg.proc = scenario_radar_proc(s);
    cfg.image_opt.window = s.radar.window;
    cfg.image_opt.range_pad = s.radar.range_pad;
    cfg.image_opt.doppler_pad = s.radar.doppler_pad;
    cfg.seed = s.seed;
    cfg.amp = scenario_tx(s).amp;
    cfg.threads = threads;

    std::vector<double> symbol_durations;
    symbol_durations.reserve(s.radar.sweep_bit_rates.size());
    for (const double rb : s.radar.sweep_bit_rates)
        symbol_durations.push_back(2.0 / rb);

    const auto table = phase_term_sweep(s.radar.sweep_distances, symbol_durations, cfg);

    std::vector<std::vector<std::string>> rows;
    rows.reserve(table.size());
    nlohmann::json jrows = nlohmann::json::array();
    for (const auto &r : table)
    {
        rows.push_back({fmt(r.distance_m, "%.8f"), fmt(r.symbol_duration, "%.6e"),
                        fmt(r.delay_ratio, "%.6f"), fmt(r.contrast_db, "%.4f"),
                        fmt(r.baseline_contrast_db, "%.4f"), fmt(r.contrast_delta_db, "%.4f"),
                        fmt(r.pisr_db, "%.4f")});
        jrows.push_back({{"distance_m", r.distance_m},
                         {"symbol_duration_s", r.symbol_duration},
                         {"delay_ratio", r.delay_ratio},
                         {"contrast_db", r.contrast_db},
                         {"baseline_contrast_db", r.baseline_contrast_db},
                         {"contrast_delta_db", r.contrast_delta_db},
                         {"pisr_db", r.pisr_db}});
    }
    arts.push_back(csv_artifact("phase_sweep.csv",
                                {"distance_m", "symbol_duration_s", "delay_ratio", "contrast_db",
                                 "baseline_contrast_db", "contrast_delta_db", "pisr_db"},
                                rows));
    m["rows"] = jrows;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Orchestration
// ---------------------------------------------------------------------------

// Executes a validated scenario and renders every artifact in memory.
// Deterministic for a fixed (scenario, seed): artifacts depend only on the
// scenario and seed, never on wall time or thread count.
inline ResultBundle run_scenario(const Scenario &scenario, const RunOptions &opts = {})
{
    Scenario s = scenario;
    if (opts.seed)
        s.seed = *opts.seed;
    if (opts.sample_rate)
        s.waveform.sample_rate = *opts.sample_rate;
    if (opts.out_dir)
        s.outputs.directory = *opts.out_dir;
    if (s.outputs.directory.empty())
        s.outputs.directory = "out/" + s.name;
    const int threads = std::max(1, opts.threads);

    validate_scenario(s);

    const auto t0 = std::chrono::steady_clock::now();
    nlohmann::json results = nlohmann::json::object();
    std::vector<Artifact> arts;
    switch (s.experiment)
    {
    case ExperimentKind::spectra:
        detail::run_spectra_experiment(s, threads, results, arts);
        break;
    case ExperimentKind::ranging:
        detail::run_ranging_experiment(s, threads, results, arts);
        break;
    case ExperimentKind::isar:
        detail::run_isar_experiment(s, threads, results, arts);
        break;
    case ExperimentKind::loopback:
        detail::run_loopback_experiment(s, threads, results, arts);
        break;
    case ExperimentKind::evm_grid:
    case ExperimentKind::evm_snr:
        detail::run_evm_experiment(s, threads, results, arts);
        break;
    case ExperimentKind::phase_sweep:
        detail::run_phase_sweep_experiment(s, threads, results, arts);
        break;
    }
    const auto t1 = std::chrono::steady_clock::now();

    ResultBundle bundle;
    bundle.scenario = s;
    bundle.wall_time_s = std::chrono::duration<double>(t1 - t0).count();
    bundle.metrics = {{"schema_version", kMetricsSchemaVersion},
                      {"generator_version", kVersionString},
                      {"scenario", s.name},
                      {"experiment", to_string(s.experiment)},
                      {"seed", s.seed},
                      {"results", results}};
    bundle.artifacts = std::move(arts);
    bundle.artifacts.push_back(detail::json_artifact("metrics.json", bundle.metrics));
    return bundle;
}

// Writes the bundle's artifacts under its output directory and the manifest
// last (the completion marker).  `format_filter` limits artifact files to one
// kind ("csv", "pgm" or "json"); the manifest is always written.  On failure
// every file already written is removed.  Returns the written paths.
inline std::vector<std::string> export_artifacts(const ResultBundle &bundle,
                                                 const std::string &format_filter = "")
{
    namespace fs = std::filesystem;
    const fs::path dir = bundle.scenario.outputs.directory;
    fs::create_directories(dir);

    std::vector<std::string> written;
    const auto cleanup = [&]() {
        for (const auto &p : written)
        {
            std::error_code ec;
            fs::remove(p, ec);
        }
    };

    try
    {
        nlohmann::json listed = nlohmann::json::array();
        for (const auto &a : bundle.artifacts)
        {
            if (!format_filter.empty() && a.kind != format_filter)
                continue;
            const fs::path path = dir / a.filename;
            {
                std::ofstream out(path, std::ios::binary | std::ios::trunc);
                if (!out)
                    throw std::runtime_error("unwritable directory: cannot open " + path.string());
                out.write(reinterpret_cast<const char *>(a.bytes.data()),
                          static_cast<std::streamsize>(a.bytes.size()));
                if (!out.good())
                    throw std::runtime_error("write failed: " + path.string());
            }
            written.push_back(path.string());
            listed.push_back({{"file", a.filename},
                              {"kind", a.kind},
                              {"bytes", a.bytes.size()},
                              {"fnv1a64", detail::hex64(detail::fnv1a64(a.bytes.data(), a.bytes.size()))}});
        }

        nlohmann::json manifest = {{"schema_version", kMetricsSchemaVersion},
                                   {"generator_version", kVersionString},
                                   {"scenario", bundle.scenario.name},
                                   {"experiment", to_string(bundle.scenario.experiment)},
                                   {"seed", bundle.scenario.seed},
                                   {"wall_time_s", bundle.wall_time_s},
                                   {"artifacts", listed}};
        const fs::path mpath = dir / "manifest.json";
        {
            std::ofstream out(mpath, std::ios::binary | std::ios::trunc);
            if (!out)
                throw std::runtime_error("unwritable directory: cannot open " + mpath.string());
            const std::string text = manifest.dump(2) + "\n";
            out.write(text.data(), static_cast<std::streamsize>(text.size()));
            if (!out.good())
                throw std::runtime_error("write failed: " + mpath.string());
        }
        written.push_back(mpath.string());
        return written;
    }
    catch (...)
    {
        cleanup();
        throw;
    }
}

} // namespace jcrsim

#endif // JCRSIM_RUNNER_HPP
