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

#ifndef JCRSIM_FILTER_HPP
#define JCRSIM_FILTER_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "jcrsim/signal.hpp"

namespace jcrsim {

namespace detail {

inline double sinc(double x)
{
    if (std::abs(x) < 1.0e-12)
        return 1.0;
    // Exact zeros at the integers, so interpolation kernels collapse to a
    // unit impulse when the fractional part vanishes.
    if (x == std::nearbyint(x))
        return 0.0;
    const double px = M_PI * x;
    return std::sin(px) / px;
}

inline double kaiser_i0(double x) { return std::cyl_bessel_i(0.0, x); }

// Kaiser window sample at normalized position x in [-1, 1].
inline double kaiser_value(double x, double beta)
{
    const double t = 1.0 - x * x;
    if (t <= 0.0)
        return 0.0;
    return kaiser_i0(beta * std::sqrt(t)) / kaiser_i0(beta);
}

// Smallest FFT-friendly length (factors 2/3/5/7) not below n.
inline std::size_t next_fast_size(std::size_t n)
{
    if (n == 0)
        return 1;
    for (std::size_t m = n;; ++m)
    {
        std::size_t r = m;
        for (std::size_t f : {2u, 3u, 5u, 7u})
            while (r % f == 0)
                r /= f;
        if (r == 1)
            return m;
    }
}

} // namespace detail

// ---------------------------------------------------------------------------
// Kaiser-windowed FIR design
// ---------------------------------------------------------------------------

// Kaiser shape parameter for a target stopband attenuation in dB.
inline double kaiser_beta_for_attenuation(double atten_db)
{
    if (atten_db > 50.0)
        return 0.1102 * (atten_db - 8.7);
    if (atten_db >= 21.0)
        return 0.5842 * std::pow(atten_db - 21.0, 0.4) + 0.07886 * (atten_db - 21.0);
    return 0.0;
}

// Odd tap count achieving atten_db across a transition of width_hz.
inline int kaiser_taps_for(double atten_db, double width_hz, double sample_rate)
{
    if (width_hz <= 0.0 || sample_rate <= 0.0)
        throw std::invalid_argument("kaiser_taps_for: band out of range");
    const double dw = 2.0 * M_PI * width_hz / sample_rate;
    int n = static_cast<int>(std::ceil((atten_db - 7.95) / (2.285 * dw))) + 1;
    n = std::max(n, 11);
    if (n % 2 == 0)
        ++n;
    return n;
}

// Linear-phase lowpass, unity DC gain.  Default beta gives ~65 dB stopband.
inline std::vector<double> design_kaiser_lowpass(double cutoff_hz, int num_taps, double sample_rate,
                                                 double beta = 6.204)
{
    if (sample_rate <= 0.0)
        throw std::invalid_argument("design_kaiser_lowpass: sample rate must be positive");
    if (cutoff_hz <= 0.0 || cutoff_hz >= sample_rate / 2.0)
        throw std::invalid_argument("design_kaiser_lowpass: band out of range");
    if (num_taps < 3 || num_taps % 2 == 0)
        throw std::invalid_argument("design_kaiser_lowpass: num_taps must be odd and >= 3");

    const int mid = (num_taps - 1) / 2;
    const double fc = cutoff_hz / sample_rate; // cycles per sample
    std::vector<double> h(static_cast<std::size_t>(num_taps));
    double sum = 0.0;
    for (int i = 0; i < num_taps; ++i)
    {
        const double k = static_cast<double>(i - mid);
        const double v = 2.0 * fc * detail::sinc(2.0 * fc * k) *
                         detail::kaiser_value(k / static_cast<double>(mid), beta);
        h[static_cast<std::size_t>(i)] = v;
        sum += v;
    }
    for (auto &v : h)
        v /= sum;
    return h;
}

// Linear-phase bandpass, unity gain at band center.
inline std::vector<double> design_kaiser_bandpass(double f_lo, double f_hi, int num_taps,
                                                  double sample_rate, double beta = 6.204)
{
    if (sample_rate <= 0.0)
        throw std::invalid_argument("design_kaiser_bandpass: sample rate must be positive");
    if (f_lo <= 0.0 || f_hi <= f_lo || f_hi >= sample_rate / 2.0)
        throw std::invalid_argument("design_kaiser_bandpass: band out of range");
    if (num_taps < 3 || num_taps % 2 == 0)
        throw std::invalid_argument("design_kaiser_bandpass: num_taps must be odd and >= 3");

    const int mid = (num_taps - 1) / 2;
    const double c_lo = f_lo / sample_rate;
    const double c_hi = f_hi / sample_rate;
    std::vector<double> h(static_cast<std::size_t>(num_taps));
    for (int i = 0; i < num_taps; ++i)
    {
        const double k = static_cast<double>(i - mid);
        const double ideal = 2.0 * c_hi * detail::sinc(2.0 * c_hi * k) - 2.0 * c_lo * detail::sinc(2.0 * c_lo * k);
        h[static_cast<std::size_t>(i)] = ideal * detail::kaiser_value(k / static_cast<double>(mid), beta);
    }

    // Normalize to unity magnitude response at the band center.
    const double fc = 0.5 * (c_lo + c_hi);
    cplx resp{0.0, 0.0};
    for (int i = 0; i < num_taps; ++i)
        resp += h[static_cast<std::size_t>(i)] *
                std::exp(cplx{0.0, -2.0 * M_PI * fc * static_cast<double>(i - mid)});
    const double mag = std::abs(resp);
    if (mag <= 0.0)
        throw std::invalid_argument("design_kaiser_bandpass: degenerate response");
    for (auto &v : h)
        v /= mag;
    return h;
}

// Complex frequency response of a linear-phase tap set, evaluated with the
// group delay removed (response of the delay-compensated filter).
inline cplx fir_response_at(const std::vector<double> &taps, double freq_hz, double sample_rate)
{
    const int mid = (static_cast<int>(taps.size()) - 1) / 2;
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < taps.size(); ++i)
        acc += taps[i] * std::exp(cplx{0.0, -2.0 * M_PI * freq_hz / sample_rate *
                                            static_cast<double>(static_cast<int>(i) - mid)});
    return acc;
}

// ---------------------------------------------------------------------------
// FFT convolution
// ---------------------------------------------------------------------------

// Applies a linear-phase FIR by FFT convolution and removes the group delay,
// so the output is time-aligned with the input and has the same length.  The
// tap spectrum is cached per FFT length, making repeated application to
// equal-length signals cheap.
class FftConvolver {
  public:
    explicit FftConvolver(std::vector<double> taps) : taps_(std::move(taps))
    {
        if (taps_.empty())
            throw std::invalid_argument("FftConvolver: empty taps");
        if (taps_.size() % 2 == 0)
            throw std::invalid_argument("FftConvolver: num_taps must be odd");
    }

    const std::vector<double> &taps() const { return taps_; }

    SampledSignal operator()(const SampledSignal &signal) const
    {
        if (signal.empty())
            throw std::invalid_argument("fir_filter: empty input");

        const std::size_t n = signal.size();
        const std::size_t nt = taps_.size();
        const std::size_t nfft = detail::next_fast_size(n + nt - 1);
        const std::vector<cplx> &tap_spec = tap_spectrum(nfft);

        std::vector<cplx> work(nfft, cplx{0.0, 0.0});
        std::copy(signal.samples.begin(), signal.samples.end(), work.begin());
        std::vector<cplx> freq(nfft);
        detail::fft_raw(work.data(), freq.data(), nfft, true);
        for (std::size_t i = 0; i < nfft; ++i)
            freq[i] *= tap_spec[i];
        detail::fft_raw(freq.data(), work.data(), nfft, false);

        const bool real_in = is_effectively_real(signal);
        const std::size_t delay = (nt - 1) / 2;
        const double scale = 1.0 / static_cast<double>(nfft);
        SampledSignal out;
        out.sample_rate = signal.sample_rate;
        out.start_time = signal.start_time;
        out.samples.resize(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            const cplx v = work[i + delay] * scale;
            out.samples[i] = real_in ? cplx{v.real(), 0.0} : v;
        }
        return out;
    }

  private:
    const std::vector<cplx> &tap_spectrum(std::size_t nfft) const
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = cache_.find(nfft);
        if (it == cache_.end())
        {
            std::vector<cplx> padded(nfft, cplx{0.0, 0.0});
            for (std::size_t i = 0; i < taps_.size(); ++i)
                padded[i] = cplx{taps_[i], 0.0};
            std::vector<cplx> spec(nfft);
            detail::fft_raw(padded.data(), spec.data(), nfft, true);
            it = cache_.emplace(nfft, std::move(spec)).first;
        }
        return it->second;
    }

    std::vector<double> taps_;
    mutable std::mutex mutex_;
    mutable std::map<std::size_t, std::vector<cplx>> cache_;
};

// One-shot FIR application (design + convolve convenience wrappers).
inline SampledSignal apply_fir(const SampledSignal &signal, const std::vector<double> &taps)
{
    return FftConvolver(taps)(signal);
}

inline SampledSignal fir_lowpass(const SampledSignal &signal, double cutoff_hz, int num_taps)
{
    return apply_fir(signal, design_kaiser_lowpass(cutoff_hz, num_taps, signal.sample_rate));
}

inline SampledSignal fir_bandpass(const SampledSignal &signal, double f_lo, double f_hi, int num_taps)
{
    return apply_fir(signal, design_kaiser_bandpass(f_lo, f_hi, num_taps, signal.sample_rate));
}

// ---------------------------------------------------------------------------
// Decimation
// ---------------------------------------------------------------------------

// Anti-alias FIR evaluated only at the decimated output instants
// (delay-compensated direct convolution; cost = taps per output sample).
inline SampledSignal decimate_fir(const SampledSignal &signal, const std::vector<double> &taps,
                                  std::size_t factor)
{
    if (signal.empty())
        throw std::invalid_argument("decimate_fir: empty input");
    if (factor == 0)
        throw std::invalid_argument("decimate_fir: factor must be >= 1");
    if (taps.empty() || taps.size() % 2 == 0)
        throw std::invalid_argument("decimate_fir: num_taps must be odd");

    const auto n = static_cast<std::ptrdiff_t>(signal.size());
    const auto nt = static_cast<std::ptrdiff_t>(taps.size());
    const std::ptrdiff_t mid = (nt - 1) / 2;
    const std::size_t n_out = (signal.size() + factor - 1) / factor;

    SampledSignal out;
    out.sample_rate = signal.sample_rate / static_cast<double>(factor);
    out.start_time = signal.start_time;
    out.samples.resize(n_out);
    for (std::size_t m = 0; m < n_out; ++m)
    {
        const auto center = static_cast<std::ptrdiff_t>(m * factor);
        cplx acc{0.0, 0.0};
        const std::ptrdiff_t k_lo = std::max<std::ptrdiff_t>(-mid, center - n + 1);
        const std::ptrdiff_t k_hi = std::min<std::ptrdiff_t>(mid, center);
        for (std::ptrdiff_t k = k_lo; k <= k_hi; ++k)
            acc += taps[static_cast<std::size_t>(mid + k)] * signal.samples[static_cast<std::size_t>(center - k)];
        out.samples[m] = acc;
    }
    if (is_effectively_real(signal))
        for (auto &v : out.samples)
            v = cplx{v.real(), 0.0};
    return out;
}

// Multistage decimator.  Splits the overall factor into stages of at most 20
// and designs each stage's Kaiser lowpass so that nothing aliases into
// [0, out_rate/2) above -atten_db, while the passband [0, passband_hz] stays
// flat.  The final stage places its stopband edge exactly at out_rate/2.
inline SampledSignal decimate_to_rate(const SampledSignal &signal, double out_rate,
                                      double passband_hz, double atten_db = 65.0)
{
    if (signal.empty())
        throw std::invalid_argument("decimate_to_rate: empty input");
    if (out_rate <= 0.0 || out_rate > signal.sample_rate)
        throw std::invalid_argument("decimate_to_rate: band out of range");

    const double ratio = signal.sample_rate / out_rate;
    const auto factor = static_cast<std::size_t>(std::llround(ratio));
    if (factor < 1 || std::abs(ratio - static_cast<double>(factor)) > 1.0e-9 * ratio)
    {
        const double nearest = signal.sample_rate / std::max<double>(1.0, std::round(ratio));
        throw std::invalid_argument("decimate_to_rate: sample rate " + std::to_string(signal.sample_rate) +
                                    " is not an integer multiple of " + std::to_string(out_rate) +
                                    "; nearest valid output rate is " + std::to_string(nearest));
    }
    if (passband_hz <= 0.0 || passband_hz >= out_rate / 2.0)
        throw std::invalid_argument("decimate_to_rate: band out of range");
    if (factor == 1)
        return signal;

    // Greedy stage split: peel divisors <= 20 from the back so early stages
    // carry large factors with wide transition bands (cheap filters).
    std::vector<std::size_t> stages;
    std::size_t rem = factor;
    while (rem > 20)
    {
        std::size_t d = 1;
        for (std::size_t c = 20; c >= 2; --c)
            if (rem % c == 0)
            {
                d = c;
                break;
            }
        if (d == 1)
            break; // prime factor above 20: single stage fallback
        stages.push_back(d);
        rem /= d;
    }
    stages.push_back(rem);
    std::reverse(stages.begin(), stages.end()); // big factors first

    const double beta = kaiser_beta_for_attenuation(atten_db);
    SampledSignal cur = signal;
    double rate = signal.sample_rate;
    for (std::size_t s = 0; s < stages.size(); ++s)
    {
        const std::size_t m = stages[s];
        const double next_rate = rate / static_cast<double>(m);
        const bool last = (s + 1 == stages.size());
        // Intermediate stages only need to protect the band that will fold
        // onto [0, out_rate/2) after all remaining decimation.
        const double stop_edge = last ? out_rate / 2.0 : next_rate - out_rate / 2.0;
        const double width = std::max(stop_edge - passband_hz, 0.05 * next_rate);
        const int taps = kaiser_taps_for(atten_db, width, rate);
        const double cutoff = std::min(0.5 * (passband_hz + stop_edge), 0.49 * rate);
        cur = decimate_fir(cur, design_kaiser_lowpass(cutoff, taps, rate, beta), m);
        rate = next_rate;
    }
    return cur;
}

// ---------------------------------------------------------------------------
// Fractional delay
// ---------------------------------------------------------------------------

// Windowed-sinc fractional-delay taps for the fractional part mu in [0, 1).
// Tap index j spans [-num_taps/2 + 1, num_taps/2]; at mu == 0 the kernel is
// an exact unit impulse.
inline std::vector<double> design_fractional_delay(double mu, int num_taps = 64, double beta = 8.0)
{
    if (num_taps < 8 || num_taps % 2 != 0)
        throw std::invalid_argument("design_fractional_delay: num_taps must be even and >= 8");
    if (mu < 0.0 || mu >= 1.0)
        throw std::invalid_argument("design_fractional_delay: mu out of [0,1)");

    const int half = num_taps / 2;
    std::vector<double> h(static_cast<std::size_t>(num_taps));
    for (int j = -half + 1; j <= half; ++j)
    {
        const double x = static_cast<double>(j) - mu;
        h[static_cast<std::size_t>(j + half - 1)] =
            detail::sinc(x) * detail::kaiser_value(x / static_cast<double>(half), beta);
    }
    return h;
}

// Delays a signal by an arbitrary (sub-sample) amount, zero-filling the
// leading edge.  Output keeps the input grid, rate and epoch.
inline SampledSignal delay_signal(const SampledSignal &signal, double delay_seconds, int num_taps = 64)
{
    if (signal.empty())
        throw std::invalid_argument("delay_signal: empty input");
    if (delay_seconds < 0.0)
        throw std::invalid_argument("delay_signal: delay must be non-negative");

    const double d = delay_seconds * signal.sample_rate;
    auto n0 = static_cast<std::ptrdiff_t>(std::floor(d));
    double mu = d - static_cast<double>(n0);
    if (mu > 1.0 - 1.0e-9)
    {
        ++n0;
        mu = 0.0;
    }

    const auto n = static_cast<std::ptrdiff_t>(signal.size());
    SampledSignal out;
    out.sample_rate = signal.sample_rate;
    out.start_time = signal.start_time;
    out.samples.assign(signal.size(), cplx{0.0, 0.0});

    if (mu < 1.0e-9)
    {
        for (std::ptrdiff_t i = n0; i < n; ++i)
            out.samples[static_cast<std::size_t>(i)] = signal.samples[static_cast<std::size_t>(i - n0)];
        return out;
    }

    const std::vector<double> h = design_fractional_delay(mu, num_taps);
    const int half = num_taps / 2;
    for (std::ptrdiff_t i = 0; i < n; ++i)
    {
        // y[i] = sum_j h[j] x[i - n0 - j], j in [-half+1, half]
        const std::ptrdiff_t base = i - n0;
        const std::ptrdiff_t j_lo = std::max<std::ptrdiff_t>(-half + 1, base - n + 1);
        const std::ptrdiff_t j_hi = std::min<std::ptrdiff_t>(half, base);
        if (j_lo > j_hi)
            continue;
        cplx acc{0.0, 0.0};
        for (std::ptrdiff_t j = j_lo; j <= j_hi; ++j)
            acc += h[static_cast<std::size_t>(j + half - 1)] * signal.samples[static_cast<std::size_t>(base - j)];
        out.samples[static_cast<std::size_t>(i)] = acc;
    }
    if (is_effectively_real(signal))
        for (auto &v : out.samples)
            v = cplx{v.real(), 0.0};
    return out;
}

} // namespace jcrsim

#endif
