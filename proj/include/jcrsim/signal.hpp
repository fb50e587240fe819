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

#ifndef JCRSIM_SIGNAL_HPP
#define JCRSIM_SIGNAL_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "jcrsim/detail/fft_backend.hpp"

namespace jcrsim {

using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// Core value types
// ---------------------------------------------------------------------------

// Uniformly sampled waveform.  Real-valued signals are stored with exactly
// zero imaginary parts so that realness survives the processing chain and can
// be detected cheaply.
struct SampledSignal {
    double sample_rate = 0.0; // Hz
    double start_time = 0.0;  // seconds, absolute epoch of samples[0]
    std::vector<cplx> samples;

    std::size_t size() const { return samples.size(); }
    bool empty() const { return samples.empty(); }
    double duration() const
    {
        return sample_rate > 0.0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
    }
    double time_at(std::size_t i) const { return start_time + static_cast<double>(i) / sample_rate; }
};

// Discrete Fourier transform of a SampledSignal.  Bins use the standard DFT
// ordering: DC, positive frequencies up to Nyquist, then negative
// frequencies.  freq_resolution == sample_rate / bins.size().
struct Spectrum {
    double freq_resolution = 0.0; // Hz per bin
    double sample_rate = 0.0;     // Hz of the originating signal
    int zero_pad_factor = 1;
    std::vector<cplx> bins;

    std::size_t size() const { return bins.size(); }

    // Signed bin frequency in Hz under the standard ordering.
    double frequency_at(std::size_t i) const
    {
        const std::size_t n = bins.size();
        const auto idx = static_cast<std::ptrdiff_t>(i);
        const auto half = static_cast<std::ptrdiff_t>(n / 2);
        return freq_resolution * static_cast<double>(idx <= half ? idx : idx - static_cast<std::ptrdiff_t>(n));
    }
};

// ---------------------------------------------------------------------------
// FFT / inverse FFT
// ---------------------------------------------------------------------------

// Forward DFT (unnormalized).  zero_pad_factor >= 1 appends zeros so the
// transform length is size() * zero_pad_factor, refining the frequency grid.
inline Spectrum fft(const SampledSignal &signal, int zero_pad_factor = 1)
{
    if (signal.empty())
        throw std::invalid_argument("fft: empty input");
    if (zero_pad_factor < 1)
        throw std::invalid_argument("fft: zero_pad_factor must be >= 1");

    const std::size_t n = signal.size() * static_cast<std::size_t>(zero_pad_factor);
    std::vector<cplx> padded(n, cplx{0.0, 0.0});
    std::copy(signal.samples.begin(), signal.samples.end(), padded.begin());

    Spectrum spec;
    spec.sample_rate = signal.sample_rate;
    spec.zero_pad_factor = zero_pad_factor;
    spec.freq_resolution = signal.sample_rate / static_cast<double>(n);
    spec.bins.resize(n);
    detail::fft_raw(padded.data(), spec.bins.data(), n, true);
    return spec;
}

// Inverse DFT normalized by 1/N.  Recovers the first size()/zero_pad_factor
// samples, i.e. the signal that produced the spectrum.
inline SampledSignal ifft(const Spectrum &spec)
{
    if (spec.bins.empty())
        throw std::invalid_argument("ifft: empty input");

    const std::size_t n = spec.bins.size();
    std::vector<cplx> out(n);
    detail::fft_raw(spec.bins.data(), out.data(), n, false);

    const std::size_t keep = n / static_cast<std::size_t>(spec.zero_pad_factor);
    SampledSignal signal;
    signal.sample_rate = spec.sample_rate;
    signal.samples.assign(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(keep));
    const double scale = 1.0 / static_cast<double>(n);
    for (auto &v : signal.samples)
        v *= scale;
    return signal;
}

// ---------------------------------------------------------------------------
// Windows
// ---------------------------------------------------------------------------

enum class Window {
    rect,
    hann,
};

inline Window window_from_string(const std::string &name)
{
    if (name == "rect")
        return Window::rect;
    if (name == "hann")
        return Window::hann;
    throw std::invalid_argument("unknown window: " + name);
}

inline std::vector<double> make_window(Window kind, std::size_t n)
{
    if (n == 0)
        throw std::invalid_argument("make_window: empty input");
    std::vector<double> w(n, 1.0);
    if (kind == Window::hann && n > 1)
    {
        const double den = static_cast<double>(n - 1);
        for (std::size_t i = 0; i < n; ++i)
            w[i] = 0.5 * (1.0 - std::cos(2.0 * M_PI * static_cast<double>(i) / den));
    }
    return w;
}

inline SampledSignal apply_window(const SampledSignal &signal, Window kind)
{
    if (signal.empty())
        throw std::invalid_argument("apply_window: empty input");
    SampledSignal out = signal;
    const auto w = make_window(kind, signal.size());
    for (std::size_t i = 0; i < out.samples.size(); ++i)
        out.samples[i] *= w[i];
    return out;
}

// ---------------------------------------------------------------------------
// Power and correlation
// ---------------------------------------------------------------------------

// Mean of |x|^2 over the record (V^2 for voltage signals).
inline double measure_mean_power(const SampledSignal &signal)
{
    if (signal.empty())
        throw std::invalid_argument("measure_mean_power: empty input");
    double acc = 0.0;
    for (const auto &v : signal.samples)
        acc += std::norm(v);
    return acc / static_cast<double>(signal.size());
}

// Average power of a voltage waveform across a resistive load, in dBm.
// Returns -inf for an identically zero signal.
inline double measure_power_dbm(const SampledSignal &signal, double load_ohms = 50.0)
{
    if (load_ohms <= 0.0)
        throw std::invalid_argument("measure_power_dbm: load must be positive");
    const double p_watt = measure_mean_power(signal) / load_ohms;
    if (p_watt <= 0.0)
        return -std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(p_watt / 1.0e-3);
}

// True when every imaginary part is exactly zero.  Generators and real->real
// operations maintain this property by construction.
inline bool is_effectively_real(const SampledSignal &signal)
{
    for (const auto &v : signal.samples)
        if (v.imag() != 0.0)
            return false;
    return true;
}

// |<a, b>| / (||a|| * ||b||); insensitive to scale and global phase.
inline double normalized_correlation(const SampledSignal &a, const SampledSignal &b)
{
    if (a.empty() || b.empty())
        throw std::invalid_argument("normalized_correlation: empty input");
    if (a.size() != b.size())
        throw std::invalid_argument("normalized_correlation: mismatched signals");

    cplx inner{0.0, 0.0};
    double ea = 0.0, eb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        inner += a.samples[i] * std::conj(b.samples[i]);
        ea += std::norm(a.samples[i]);
        eb += std::norm(b.samples[i]);
    }
    if (ea == 0.0 || eb == 0.0)
        throw std::invalid_argument("normalized_correlation: zero-power input");
    return std::abs(inner) / std::sqrt(ea * eb);
}

// ---------------------------------------------------------------------------
// Additive white Gaussian noise
// ---------------------------------------------------------------------------

// Adds AWGN at the requested SNR, where SNR = mean signal power over the
// record divided by mean noise power.  A +inf SNR is the documented no-noise
// sentinel.  Real signals receive real noise; complex signals receive
// circular complex noise split equally between the components.  The same
// seed always produces the same noise sequence.
inline SampledSignal add_awgn(const SampledSignal &signal, double snr_db, std::uint64_t seed)
{
    if (signal.empty())
        throw std::invalid_argument("add_awgn: empty input");
    if (std::isinf(snr_db) && snr_db > 0.0)
        return signal;
    if (std::isnan(snr_db))
        throw std::invalid_argument("add_awgn: snr_db is NaN");

    const double p_sig = measure_mean_power(signal);
    if (p_sig <= 0.0)
        throw std::invalid_argument("add_awgn: zero-power input");
    const double p_noise = p_sig / std::pow(10.0, snr_db / 10.0);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    SampledSignal out = signal;
    if (is_effectively_real(signal))
    {
        const double sigma = std::sqrt(p_noise);
        for (auto &v : out.samples)
            v += cplx{sigma * gauss(rng), 0.0};
    }
    else
    {
        const double sigma = std::sqrt(p_noise / 2.0);
        for (auto &v : out.samples)
        {
            const double re = sigma * gauss(rng);
            const double im = sigma * gauss(rng);
            v += cplx{re, im};
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Spectrum helpers
// ---------------------------------------------------------------------------

// Per-bin magnitude in dB.  With normalize=true the peak maps to 0 dB.
// Bins below the numeric floor clamp to floor_db.
inline std::vector<double> spectrum_magnitude_db(const Spectrum &spec, bool normalize = true,
                                                 double floor_db = -200.0)
{
    if (spec.bins.empty())
        throw std::invalid_argument("spectrum_magnitude_db: empty input");
    double peak = 0.0;
    if (normalize)
    {
        for (const auto &b : spec.bins)
            peak = std::max(peak, std::abs(b));
        if (peak <= 0.0)
            peak = 1.0;
    }
    else
        peak = 1.0;

    std::vector<double> db(spec.bins.size());
    for (std::size_t i = 0; i < spec.bins.size(); ++i)
    {
        const double mag = std::abs(spec.bins[i]) / peak;
        db[i] = mag > 0.0 ? std::max(20.0 * std::log10(mag), floor_db) : floor_db;
    }
    return db;
}

// Fraction of total spectral power inside [f_lo, f_hi], counting positive
// frequencies only for real signals' symmetric spectra when fold=true.
inline double band_power_fraction(const Spectrum &spec, double f_lo, double f_hi)
{
    if (spec.bins.empty())
        throw std::invalid_argument("band_power_fraction: empty input");
    if (f_hi < f_lo)
        throw std::invalid_argument("band_power_fraction: band out of range");
    double total = 0.0, band = 0.0;
    for (std::size_t i = 0; i < spec.bins.size(); ++i)
    {
        const double p = std::norm(spec.bins[i]);
        total += p;
        const double f = spec.frequency_at(i);
        if (f >= f_lo && f <= f_hi)
            band += p;
    }
    return total > 0.0 ? band / total : 0.0;
}

} // namespace jcrsim

#endif
