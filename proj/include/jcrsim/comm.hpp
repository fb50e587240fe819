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

#ifndef JCRSIM_COMM_HPP
#define JCRSIM_COMM_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "jcrsim/filter.hpp"
#include "jcrsim/parallel.hpp"
#include "jcrsim/photonic.hpp"
#include "jcrsim/signal.hpp"
#include "jcrsim/waveform.hpp"

namespace jcrsim {

// ---------------------------------------------------------------------------
// Receiver configuration
// ---------------------------------------------------------------------------

struct CommChannelConfig {
    double path_scale = 1.0; // linear amplitude through the wireless hop
    // Per-symbol signal-to-noise ratio Es/N0 in dB; +inf = noiseless.  The
    // channel injects white noise across the full simulation bandwidth with
    // the spectral density N0 = Es / snr, where Es is the transmitted energy
    // per symbol.  With the matched (full-symbol) correlator receiver this
    // makes EVM ~ 100/sqrt(snr) regardless of oversampling factor.
    double snr_db = std::numeric_limits<double>::infinity();
    double lo_frequency = 8.0e9; // Hz, below the chirp start frequency
    double lo_amplitude = 1.0;
    double if_rate = 10.0e9;     // Hz, acquisition rate after downconversion
    double if_passband = 2.2e9;  // Hz, band protected by the IF decimator
    double demod_cutoff = 0.45e9; // Hz, lowpass for the baseband eye trace
    double demod_atten_db = 50.0;
    int demod_taps = 0; // 0 = auto: largest odd count <= 0.9 * samples/symbol
    // Fraction of the symbol excluded from each end of the decision
    // correlator, keeping transmit-filter edge transients out of the average.
    double demod_guard = 0.05;
};

inline void validate_comm_config(const CommChannelConfig &cfg, const LfmParams &lfm,
                                 double sample_rate)
{
    if (cfg.lo_frequency <= 0.0 || cfg.lo_frequency >= lfm.f0)
        throw std::invalid_argument("band out of range: LO must sit below the chirp start frequency");
    if (cfg.if_rate <= 2.0 * (lfm.f_max() - cfg.lo_frequency))
        throw std::invalid_argument("aliasing: IF band exceeds the acquisition Nyquist rate");
    if (cfg.if_rate > sample_rate)
        throw std::invalid_argument("aliasing: IF rate exceeds the simulation rate");
    if (cfg.path_scale <= 0.0 || cfg.lo_amplitude <= 0.0)
        throw std::invalid_argument("comm: scales must be positive");
    if (cfg.demod_guard < 0.0 || cfg.demod_guard > 0.4)
        throw std::invalid_argument("comm: demod_guard must lie in [0, 0.4]");
    const double cycles = cfg.lo_frequency * lfm.period;
    if (std::abs(cycles - std::round(cycles)) > 1.0e-6)
        throw std::invalid_argument("comm: lo_frequency must complete an integer number of cycles per period");
}

// ---------------------------------------------------------------------------
// Downconversion
// ---------------------------------------------------------------------------

// Quadrature-mixes the received band down to the intermediate frequency and
// decimates to the acquisition rate, producing a complex IF record.  I/Q
// mixing keeps only one noise sideband at the IF (no image-band fold).  The
// decimator's anti-alias lowpass doubles as the mixer's sum-band filter
// (everything above if_passband is attenuated by >= 65 dB before
// resampling).  Local-oscillator phase is referenced to the record's
// start_time.
inline SampledSignal downconvert(const SampledSignal &rx, const CommChannelConfig &cfg)
{
    if (rx.empty())
        throw std::invalid_argument("downconvert: empty input");

    SampledSignal mixed;
    mixed.sample_rate = rx.sample_rate;
    mixed.start_time = rx.start_time;
    mixed.samples.resize(rx.size());
    for (std::size_t i = 0; i < rx.size(); ++i)
    {
        const double t = static_cast<double>(i) / rx.sample_rate;
        const double ph = 2.0 * M_PI * cfg.lo_frequency * t;
        mixed.samples[i] = rx.samples[i].real() * cfg.lo_amplitude *
                           cplx{std::cos(ph), -std::sin(ph)};
    }
    return decimate_to_rate(mixed, cfg.if_rate, cfg.if_passband, 65.0);
}

// ---------------------------------------------------------------------------
// Coherent demodulation
// ---------------------------------------------------------------------------

struct DemodResult {
    std::vector<double> i_symbols; // raw branch samples at symbol centers
    std::vector<double> q_symbols; // sign-corrected quadrature branch
    std::vector<cplx> constellation; // gain-normalized symbol estimates
    std::vector<std::uint8_t> decided_bits; // per symbol: I bit then Q bit
    double evm_percent = 0.0;
    double ber = 0.0;
    long bit_errors = 0;
    long total_bits = 0;
    cplx gain{1.0, 0.0};   // least-squares gain onto the ideal constellation
    SampledSignal baseband; // filtered I + jQ over the first period, pre-gain
};

namespace detail {

inline int auto_demod_taps(double if_rate, double symbol_duration, int requested)
{
    if (requested > 0)
    {
        if (requested % 2 == 0)
            throw std::invalid_argument("coherent_demod: num_taps must be odd");
        return requested;
    }
    const auto spsym = static_cast<int>(std::floor(if_rate * symbol_duration));
    int taps = static_cast<int>(std::floor(0.9 * spsym));
    if (taps % 2 == 0)
        --taps;
    if (taps < 11)
        throw std::invalid_argument("coherent_demod: fewer than 13 samples per symbol");
    return taps;
}

} // namespace detail

// Coherent QPSK demodulation of a (possibly multi-period) complex IF record.
// The reference replays the transmitted chirp's phase law shifted to the IF;
// the chirp phase restarts at each period boundary exactly as the
// transmitter's does.  Symbol timing comes from the frame grid.  Each symbol
// estimate is the mean of r(t) * e^{-j Theta_IF(t)} over the symbol interior
// -- the matched-filter correlation for rectangular pulses -- with a small
// guard at each symbol edge keeping transmit filter transients out of the
// average.  Bits are decided from the sign of the gain-normalized estimates;
// EVM is the RMS error vector over the RMS of the fitted reference
// constellation, in percent.
inline DemodResult coherent_demod(const SampledSignal &if_signal, const LfmParams &lfm,
                                  const QpskFrame &frame, const CommChannelConfig &cfg)
{
    if (if_signal.empty())
        throw std::invalid_argument("coherent_demod: empty input");
    const double fs = if_signal.sample_rate;
    const double f_if = lfm.f0 - cfg.lo_frequency;
    if (f_if <= 0.0)
        throw std::invalid_argument("band out of range: LO must sit below the chirp start frequency");

    const double spp_exact = fs * lfm.period;
    const auto n_period = static_cast<std::size_t>(std::llround(spp_exact));
    if (std::abs(spp_exact - static_cast<double>(n_period)) > 1.0e-6)
        throw std::invalid_argument("coherent_demod: period must span an integer number of samples");
    const auto num_periods = static_cast<int>(if_signal.size() / n_period);
    if (num_periods < 1 || num_periods > frame.num_periods)
        throw std::invalid_argument("coherent_demod: record does not cover a whole period");

    const double k = lfm.chirp_rate();

    // Period-local IF chirp replica, shared by the correlator and the eye
    // trace.  ref[n] = e^{-j Theta_IF(n/fs)} for one period.
    std::vector<cplx> ref(n_period);
    for (std::size_t n = 0; n < n_period; ++n)
    {
        const double t = static_cast<double>(n) / fs;
        const double ph = 2.0 * M_PI * (f_if * t + 0.5 * k * t * t);
        ref[n] = cplx{std::cos(ph), -std::sin(ph)};
    }

    // Guarded full-symbol correlation with conjugate-image removal.
    DemodResult res;
    const int n_sym = frame.symbols_per_chirp;
    res.i_symbols.reserve(static_cast<std::size_t>(n_sym) * static_cast<std::size_t>(num_periods));
    res.q_symbols.reserve(res.i_symbols.capacity());
    const double spsym = fs * frame.symbol_duration;
    for (int p = 0; p < num_periods; ++p)
    {
        const std::size_t base = static_cast<std::size_t>(p) * n_period;
        for (int s = 0; s < n_sym; ++s)
        {
            const double lo = (static_cast<double>(s) + cfg.demod_guard) * spsym;
            const double hi = (static_cast<double>(s) + 1.0 - cfg.demod_guard) * spsym;
            const auto n0 = static_cast<std::size_t>(std::llround(lo));
            const auto n1 = std::min(static_cast<std::size_t>(std::llround(hi)), n_period);
            cplx z{0.0, 0.0};
            for (std::size_t n = n0; n < n1; ++n)
                z += if_signal.samples[base + n] * ref[n];
            z /= static_cast<double>(n1 - n0);
            res.i_symbols.push_back(z.real());
            res.q_symbols.push_back(z.imag());
        }
    }

    // Lowpass-filtered baseband of the first period, kept for eye/waveform
    // inspection only -- decisions never pass through this filter.
    const int taps = detail::auto_demod_taps(fs, frame.symbol_duration, cfg.demod_taps);
    const std::vector<double> lpf = design_kaiser_lowpass(
        cfg.demod_cutoff, taps, fs, kaiser_beta_for_attenuation(cfg.demod_atten_db));
    const FftConvolver conv(lpf);
    SampledSignal first;
    first.sample_rate = fs;
    first.samples.resize(n_period);
    for (std::size_t n = 0; n < n_period; ++n)
        first.samples[n] = if_signal.samples[n] * ref[n];
    res.baseband = conv(first);

    // Complex least-squares gain onto the transmitted constellation, then
    // EVM/BER against it.
    const std::size_t count = res.i_symbols.size();
    cplx num{0.0, 0.0};
    double den = 0.0;
    std::vector<cplx> ideal(count);
    for (std::size_t s = 0; s < count; ++s)
    {
        const auto sym = static_cast<int>(s);
        ideal[s] = cplx{frame.i_level(sym), frame.q_level(sym)} / frame.nrz_level;
        const cplx z{res.i_symbols[s], res.q_symbols[s]};
        num += z * std::conj(ideal[s]);
        den += std::norm(ideal[s]);
    }
    if (den <= 0.0 || std::abs(num) <= 0.0)
        throw std::runtime_error("coherent_demod: degenerate constellation");
    const cplx gain = num / den;
    res.gain = gain;

    res.constellation.resize(count);
    res.decided_bits.resize(count * 2);
    double err_acc = 0.0, ref_acc = 0.0;
    for (std::size_t s = 0; s < count; ++s)
    {
        const cplx z = cplx{res.i_symbols[s], res.q_symbols[s]} / gain;
        res.constellation[s] = z;
        const cplx e = z - ideal[s];
        err_acc += std::norm(e);
        ref_acc += std::norm(ideal[s]);

        const std::uint8_t ib = z.real() > 0.0 ? 1 : 0;
        const std::uint8_t qb = z.imag() > 0.0 ? 1 : 0;
        res.decided_bits[2 * s] = ib;
        res.decided_bits[2 * s + 1] = qb;
        if (ib != frame.i_bits[s])
            ++res.bit_errors;
        if (qb != frame.q_bits[s])
            ++res.bit_errors;
    }
    res.total_bits = static_cast<long>(count) * 2;
    res.evm_percent = 100.0 * std::sqrt(err_acc / ref_acc);
    res.ber = static_cast<double>(res.bit_errors) / static_cast<double>(res.total_bits);
    return res;
}

// ---------------------------------------------------------------------------
// Frame synchronization estimate
// ---------------------------------------------------------------------------

// Estimates the sample offset of the first period start in an IF record by
// correlating against a clean single-period IF chirp.  Throws when the best
// correlation is too weak to trust.
inline std::size_t estimate_frame_offset(const SampledSignal &if_signal, const LfmParams &lfm,
                                         const CommChannelConfig &cfg, std::size_t max_offset,
                                         double threshold = 0.5)
{
    if (if_signal.empty())
        throw std::invalid_argument("estimate_frame_offset: empty input");
    const double fs = if_signal.sample_rate;
    const double f_if = lfm.f0 - cfg.lo_frequency;
    const std::size_t n_active = detail::active_samples_per_period(lfm, fs);
    if (if_signal.size() < n_active + max_offset)
        throw std::invalid_argument("estimate_frame_offset: record too short");

    std::vector<double> ref(n_active);
    double ref_e = 0.0;
    for (std::size_t n = 0; n < n_active; ++n)
    {
        const double t = static_cast<double>(n) / fs;
        ref[n] = std::cos(2.0 * M_PI * (f_if * t + 0.5 * lfm.chirp_rate() * t * t));
        ref_e += ref[n] * ref[n];
    }

    double best = -1.0;
    std::size_t best_off = 0;
    for (std::size_t off = 0; off <= max_offset; ++off)
    {
        double acc = 0.0, sig_e = 0.0;
        for (std::size_t n = 0; n < n_active; ++n)
        {
            const double v = if_signal.samples[off + n].real();
            acc += v * ref[n];
            sig_e += v * v;
        }
        if (sig_e <= 0.0)
            continue;
        const double corr = std::abs(acc) / std::sqrt(sig_e * ref_e);
        if (corr > best)
        {
            best = corr;
            best_off = off;
        }
    }
    if (best < threshold)
        throw std::runtime_error("frame sync lost: best correlation " + std::to_string(best) +
                                 " below threshold " + std::to_string(threshold));
    return best_off;
}

// ---------------------------------------------------------------------------
// End-to-end link runs
// ---------------------------------------------------------------------------

struct CommRunConfig {
    JointTxConfig tx{TxModel::exact_chain, 1.0, {}};
    CommChannelConfig channel;
    double sample_rate = 40.0e9;
    std::uint64_t noise_seed = 1;
    int threads = 1;
};

// Transmit -> wireless hop (scale + AWGN) -> downconvert, streamed one period
// at a time at the full rate, then demodulated coherently as one IF record.
// Per-period noise seeds derive from noise_seed, so a sweep that varies only
// the SNR sees the same noise directions at every point.
inline DemodResult run_comm_chain(const LfmParams &lfm, const QpskFrame &frame,
                                  const CommRunConfig &cfg)
{
    validate_lfm(lfm, cfg.sample_rate);
    validate_comm_config(cfg.channel, lfm, cfg.sample_rate);

    std::vector<std::uint64_t> period_seeds(static_cast<std::size_t>(frame.num_periods));
    std::mt19937_64 seeder(cfg.noise_seed);
    for (auto &s : period_seeds)
        s = seeder();

    // channel.snr_db is the per-symbol Es/N0.  Noise is injected white across
    // the full simulation bandwidth fs/2, so the total-power ratio handed to
    // add_awgn must be rescaled: with Es = P * T_period / n_sym,
    //   P_noise = N0 * fs/2 = Es * fs / (2 * snr)
    //   P / P_noise = snr * 2 * n_sym / (T_period * fs).
    const double band_factor =
        2.0 * static_cast<double>(frame.symbols_per_chirp) / (lfm.period * cfg.sample_rate);
    const double power_snr_db = cfg.channel.snr_db + 10.0 * std::log10(band_factor);

    const auto n_if_period =
        static_cast<std::size_t>(std::llround(cfg.channel.if_rate * lfm.period));
    SampledSignal if_record;
    if_record.sample_rate = cfg.channel.if_rate;
    if_record.samples.assign(n_if_period * static_cast<std::size_t>(frame.num_periods),
                             cplx{0.0, 0.0});

    parallel_for(static_cast<std::size_t>(frame.num_periods), cfg.threads, [&](std::size_t p) {
        SampledSignal tx = joint_tx_period(lfm, frame, cfg.tx, cfg.sample_rate, static_cast<int>(p));
        if (cfg.channel.path_scale != 1.0)
            for (auto &v : tx.samples)
                v *= cfg.channel.path_scale;
        const SampledSignal rx = add_awgn(tx, power_snr_db, period_seeds[p]);
        const SampledSignal if_p = downconvert(rx, cfg.channel);
        if (if_p.size() != n_if_period)
            throw std::runtime_error("run_comm_chain: unexpected IF record length");
        std::copy(if_p.samples.begin(), if_p.samples.end(),
                  if_record.samples.begin() + static_cast<std::ptrdiff_t>(p * n_if_period));
    });
    return coherent_demod(if_record, lfm, frame, cfg.channel);
}

// ---------------------------------------------------------------------------
// EVM sweep
// ---------------------------------------------------------------------------

struct EvmSweepConfig {
    LfmParams base_lfm{8.5e9, 0.5e9, 4.0e-6, 0.95, 1.0}; // bandwidth overridden per point
    CommRunConfig run;
    double m1 = 0.3;       // chirp modulation index; sets the X-arm drive level
    double m2_level = 0.2; // NRZ rail modulation index; sets the rail voltage
    long min_bits = 20000;
    std::uint64_t data_seed = 2;
};

struct EvmPoint {
    double bandwidth = 0.0;
    double bit_rate = 0.0; // effective aggregate rate after grid snapping
    double snr_db = 0.0;
    double evm_percent = 0.0;
    double ber = 0.0;
    long total_bits = 0;
    std::vector<cplx> constellation;
};

// Full-chain EVM/BER over the cartesian product of bandwidths, bit rates and
// SNRs.  Data and noise seeds are fixed per (bandwidth, bit rate) cell, so
// the SNR axis varies only the noise amplitude.
inline std::vector<EvmPoint> run_evm_sweep(const std::vector<double> &bandwidths,
                                           const std::vector<double> &bit_rates,
                                           const std::vector<double> &snrs_db,
                                           const EvmSweepConfig &cfg)
{
    if (bandwidths.empty() || bit_rates.empty() || snrs_db.empty())
        throw std::invalid_argument("run_evm_sweep: empty input");

    std::vector<EvmPoint> points;
    for (const double bw : bandwidths)
        for (const double rb : bit_rates)
        {
            LfmParams lfm = cfg.base_lfm;
            lfm.bandwidth = bw;
            CommRunConfig run = cfg.run;
            const double v_pi = run.tx.chain.modulator.v_pi;
            lfm.amplitude = cfg.m1 * 2.0 * v_pi / M_PI;
            const double rail = cfg.m2_level * 2.0 * v_pi / M_PI;

            const double bits_per_period = lfm.active_duration() * rb;
            const int periods = std::max(
                1, static_cast<int>(std::ceil(static_cast<double>(cfg.min_bits) / bits_per_period)));
            const QpskFrame frame = gen_qpsk_frame(rb, lfm, periods, cfg.data_seed, rail);

            for (const double snr : snrs_db)
            {
                run.channel.snr_db = snr;
                const DemodResult res = run_comm_chain(lfm, frame, run);
                EvmPoint pt;
                pt.bandwidth = bw;
                pt.bit_rate = frame.bit_rate;
                pt.snr_db = snr;
                pt.evm_percent = res.evm_percent;
                pt.ber = res.ber;
                pt.total_bits = res.total_bits;
                pt.constellation = res.constellation;
                points.push_back(std::move(pt));
            }
        }
    return points;
}

} // namespace jcrsim

#endif
