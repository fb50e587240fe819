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

#ifndef JCRSIM_WAVEFORM_HPP
#define JCRSIM_WAVEFORM_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "jcrsim/signal.hpp"

namespace jcrsim {

// ---------------------------------------------------------------------------
// Linear frequency-modulated (LFM) chirp
// ---------------------------------------------------------------------------

// Periodic sawtooth LFM: within each period the instantaneous frequency ramps
// from f0 to f0 + bandwidth over the active interval [0, duty*period), then
// the output is silent until the period ends.  The phase restarts at every
// period boundary.
struct LfmParams {
    double f0 = 8.5e9;        // Hz, ramp start
    double bandwidth = 0.5e9; // Hz, swept span
    double period = 4.0e-6;   // s, repetition interval
    double duty = 0.95;       // fraction of the period that is active
    double amplitude = 1.0;   // V, drive amplitude

    double active_duration() const { return duty * period; }
    double chirp_rate() const { return bandwidth / active_duration(); } // Hz/s
    double f_max() const { return f0 + bandwidth; }

    // Quadratic phase law over local time t' in [0, active_duration).
    double phase_at(double t_local) const
    {
        return 2.0 * M_PI * (f0 * t_local + 0.5 * chirp_rate() * t_local * t_local);
    }
};

inline void validate_lfm(const LfmParams &p, double sample_rate)
{
    if (p.f0 <= 0.0 || p.bandwidth <= 0.0 || p.period <= 0.0 || p.amplitude <= 0.0)
        throw std::invalid_argument("lfm: parameters must be positive");
    if (p.duty <= 0.0 || p.duty > 1.0)
        throw std::invalid_argument("lfm: duty must lie in (0, 1]");
    if (sample_rate <= 2.0 * p.f_max())
        throw std::invalid_argument("aliasing: sample rate " + std::to_string(sample_rate) +
                                    " Hz must exceed twice the maximum instantaneous frequency " +
                                    std::to_string(p.f_max()) + " Hz");
    const double spp = sample_rate * p.period;
    if (std::abs(spp - std::round(spp)) > 1.0e-6)
        throw std::invalid_argument("lfm: period must span an integer number of samples");
}

namespace detail {

inline std::size_t samples_per_period(const LfmParams &p, double sample_rate)
{
    return static_cast<std::size_t>(std::llround(sample_rate * p.period));
}

inline std::size_t active_samples_per_period(const LfmParams &p, double sample_rate)
{
    const double exact = sample_rate * p.active_duration();
    const auto n = static_cast<std::size_t>(std::llround(exact));
    if (std::abs(exact - static_cast<double>(n)) < 1.0e-6)
        return n;
    return static_cast<std::size_t>(std::floor(exact));
}

} // namespace detail

// Generates the quadrature chirp drive pair for one period: first element is
// the sine-phase waveform, second the cosine-phase waveform.
inline std::pair<SampledSignal, SampledSignal> gen_lfm_pair_period(const LfmParams &p, double sample_rate)
{
    validate_lfm(p, sample_rate);
    const std::size_t n = detail::samples_per_period(p, sample_rate);
    const std::size_t n_active = detail::active_samples_per_period(p, sample_rate);

    SampledSignal sin_wave, cos_wave;
    sin_wave.sample_rate = cos_wave.sample_rate = sample_rate;
    sin_wave.samples.assign(n, cplx{0.0, 0.0});
    cos_wave.samples.assign(n, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < n_active; ++i)
    {
        const double t = static_cast<double>(i) / sample_rate;
        const double ph = p.phase_at(t);
        sin_wave.samples[i] = cplx{p.amplitude * std::sin(ph), 0.0};
        cos_wave.samples[i] = cplx{p.amplitude * std::cos(ph), 0.0};
    }
    return {std::move(sin_wave), std::move(cos_wave)};
}

// Multi-period drive pair.  Periods are identical because the phase law
// restarts at each boundary.
inline std::pair<SampledSignal, SampledSignal> gen_lfm_pair(const LfmParams &p, int num_periods,
                                                            double sample_rate)
{
    if (num_periods < 1)
        throw std::invalid_argument("gen_lfm_pair: num_periods must be >= 1");
    auto [s1, c1] = gen_lfm_pair_period(p, sample_rate);
    const std::size_t n = s1.size();
    SampledSignal sin_wave, cos_wave;
    sin_wave.sample_rate = cos_wave.sample_rate = sample_rate;
    sin_wave.samples.reserve(n * static_cast<std::size_t>(num_periods));
    cos_wave.samples.reserve(n * static_cast<std::size_t>(num_periods));
    for (int k = 0; k < num_periods; ++k)
    {
        sin_wave.samples.insert(sin_wave.samples.end(), s1.samples.begin(), s1.samples.end());
        cos_wave.samples.insert(cos_wave.samples.end(), c1.samples.begin(), c1.samples.end());
    }
    return {std::move(sin_wave), std::move(cos_wave)};
}

// ---------------------------------------------------------------------------
// QPSK baseband frame
// ---------------------------------------------------------------------------

// Pseudorandom QPSK payload whose symbol grid is locked to the chirp: every
// active interval carries exactly symbols_per_chirp symbols and symbol edges
// coincide with period boundaries.
struct QpskFrame {
    double bit_rate = 0.0;        // b/s, effective aggregate rate (I+Q)
    double symbol_duration = 0.0; // s, exactly duty*period/symbols_per_chirp
    int symbols_per_chirp = 0;
    int num_periods = 0;
    double nrz_level = 1.0; // V, drive level per rail
    double period = 0.0;    // s, copied from the chirp for grid bookkeeping
    double duty = 0.0;
    std::vector<std::uint8_t> i_bits; // one bit per symbol, frame-major order
    std::vector<std::uint8_t> q_bits;

    int total_symbols() const { return symbols_per_chirp * num_periods; }

    int symbol_index(int period_idx, int sym_in_period) const
    {
        return period_idx * symbols_per_chirp + sym_in_period;
    }

    // NRZ rail levels of a symbol: bit 0 -> -nrz_level, bit 1 -> +nrz_level.
    double i_level(int sym) const { return (i_bits[static_cast<std::size_t>(sym)] ? 1.0 : -1.0) * nrz_level; }
    double q_level(int sym) const { return (q_bits[static_cast<std::size_t>(sym)] ? 1.0 : -1.0) * nrz_level; }

    // Baseband envelope and phase of a symbol (Cartesian-to-polar form).
    double envelope(int sym) const { return std::hypot(i_level(sym), q_level(sym)); }
    double phase(int sym) const { return std::atan2(q_level(sym), i_level(sym)); }
};

// Builds a frame at the requested aggregate bit rate.  The rate must place an
// integer number of symbols on the active interval: requested rates within 1%
// of a valid grid snap to it, anything further off is rejected with the
// nearest valid rate named in the error.
inline QpskFrame gen_qpsk_frame(double bit_rate, const LfmParams &lfm, int num_periods,
                                std::uint64_t seed, double nrz_level = 1.0)
{
    if (bit_rate <= 0.0)
        throw std::invalid_argument("gen_qpsk_frame: bit rate must be positive");
    if (num_periods < 1)
        throw std::invalid_argument("gen_qpsk_frame: num_periods must be >= 1");
    if (nrz_level <= 0.0)
        throw std::invalid_argument("gen_qpsk_frame: nrz_level must be positive");

    const double active = lfm.active_duration();
    const double symbols_exact = active * bit_rate / 2.0; // 2 bits per symbol
    const auto symbols = static_cast<long long>(std::llround(symbols_exact));
    if (symbols < 1 || std::abs(symbols_exact - static_cast<double>(symbols)) > 0.01)
    {
        const double snapped = std::max<double>(1.0, std::round(symbols_exact));
        const double nearest = 2.0 * snapped / active;
        throw std::invalid_argument("symbol grid misalignment: bit rate " + std::to_string(bit_rate) +
                                    " b/s gives " + std::to_string(symbols_exact) +
                                    " symbols per chirp; nearest valid rate is " + std::to_string(nearest) +
                                    " b/s");
    }

    QpskFrame frame;
    frame.symbols_per_chirp = static_cast<int>(symbols);
    frame.symbol_duration = active / static_cast<double>(symbols);
    frame.bit_rate = 2.0 / frame.symbol_duration;
    frame.num_periods = num_periods;
    frame.nrz_level = nrz_level;
    frame.period = lfm.period;
    frame.duty = lfm.duty;

    const auto total = static_cast<std::size_t>(frame.total_symbols());
    frame.i_bits.resize(total);
    frame.q_bits.resize(total);
    std::mt19937_64 rng(seed);
    for (std::size_t s = 0; s < total; ++s)
    {
        const std::uint64_t w = rng();
        frame.i_bits[s] = static_cast<std::uint8_t>(w & 1u);
        frame.q_bits[s] = static_cast<std::uint8_t>((w >> 1) & 1u);
    }
    return frame;
}

namespace detail {

// Symbol index for sample n' of a period, or -1 in the dead interval.
// Integer arithmetic keeps symbol edges exact on aligned grids.
inline int symbol_of_sample(std::size_t n_local, std::size_t active_n, int symbols_per_chirp)
{
    if (n_local >= active_n)
        return -1;
    const auto s = static_cast<int>((n_local * static_cast<std::size_t>(symbols_per_chirp)) / active_n);
    return std::min(s, symbols_per_chirp - 1);
}

} // namespace detail

// Renders the NRZ I/Q rail waveforms for the first num_periods periods of the
// frame.  Rails hold +/- nrz_level during active intervals and are zero in
// dead time.
inline std::pair<SampledSignal, SampledSignal> render_iq(const QpskFrame &frame, double sample_rate,
                                                         int num_periods)
{
    if (num_periods < 1 || num_periods > frame.num_periods)
        throw std::invalid_argument("render_iq: num_periods exceeds frame payload");
    if (sample_rate * frame.symbol_duration < 4.0)
        throw std::invalid_argument("render_iq: fewer than 4 samples per symbol");

    const double spp = sample_rate * frame.period;
    if (std::abs(spp - std::round(spp)) > 1.0e-6)
        throw std::invalid_argument("render_iq: period must span an integer number of samples");
    const auto n_period = static_cast<std::size_t>(std::llround(spp));
    const double active_exact = sample_rate * frame.period * frame.duty;
    const auto active_n = static_cast<std::size_t>(std::llround(active_exact));

    SampledSignal i_wave, q_wave;
    i_wave.sample_rate = q_wave.sample_rate = sample_rate;
    i_wave.samples.assign(n_period * static_cast<std::size_t>(num_periods), cplx{0.0, 0.0});
    q_wave.samples.assign(n_period * static_cast<std::size_t>(num_periods), cplx{0.0, 0.0});

    for (int p = 0; p < num_periods; ++p)
    {
        const std::size_t base = static_cast<std::size_t>(p) * n_period;
        for (std::size_t n = 0; n < active_n; ++n)
        {
            const int s = detail::symbol_of_sample(n, active_n, frame.symbols_per_chirp);
            const int sym = frame.symbol_index(p, s);
            i_wave.samples[base + n] = cplx{frame.i_level(sym), 0.0};
            q_wave.samples[base + n] = cplx{frame.q_level(sym), 0.0};
        }
    }
    return {std::move(i_wave), std::move(q_wave)};
}

} // namespace jcrsim

#endif
