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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "jcrsim/signal.hpp"

using namespace jcrsim;

namespace {

// Quadratic-time reference DFT, the oracle for the FFT backend.
std::vector<cplx> dft_oracle(const std::vector<cplx> &x, bool forward)
{
    const std::size_t n = x.size();
    std::vector<cplx> out(n);
    const double sign = forward ? -1.0 : 1.0;
    for (std::size_t k = 0; k < n; ++k)
    {
        cplx acc{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j)
        {
            const double ang = sign * 2.0 * M_PI * static_cast<double>(k) *
                               static_cast<double>(j) / static_cast<double>(n);
            acc += x[j] * cplx{std::cos(ang), std::sin(ang)};
        }
        out[k] = acc;
    }
    return out;
}

SampledSignal make_signal(std::vector<cplx> samples, double fs = 1.0e6)
{
    SampledSignal s;
    s.sample_rate = fs;
    s.samples = std::move(samples);
    return s;
}

SampledSignal make_tone(double freq, double fs, std::size_t n, double amp = 1.0,
                        bool complex_tone = false)
{
    SampledSignal s;
    s.sample_rate = fs;
    s.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        const double t = static_cast<double>(i) / fs;
        if (complex_tone)
            s.samples[i] = amp * std::exp(cplx{0.0, 2.0 * M_PI * freq * t});
        else
            s.samples[i] = cplx{amp * std::cos(2.0 * M_PI * freq * t), 0.0};
    }
    return s;
}

double max_abs_diff(const std::vector<cplx> &a, const std::vector<cplx> &b)
{
    REQUIRE(a.size() == b.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

} // namespace

TEST_CASE("fft matches the quadratic DFT oracle on every small size")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (std::size_t n = 1; n <= 128; ++n)
    {
        std::vector<cplx> x(n);
        for (auto &v : x)
            v = cplx{uni(rng), uni(rng)};
        const Spectrum spec = fft(make_signal(x));
        const auto want = dft_oracle(x, true);
        const double scale = std::sqrt(static_cast<double>(n));
        REQUIRE(max_abs_diff(spec.bins, want) < 1.0e-10 * scale);
    }
}

TEST_CASE("fft matches the oracle on awkward composite sizes")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (const std::size_t n : {137u, 300u, 343u, 500u, 512u})
    {
        std::vector<cplx> x(n);
        for (auto &v : x)
            v = cplx{uni(rng), uni(rng)};
        const Spectrum spec = fft(make_signal(x));
        const auto want = dft_oracle(x, true);
        REQUIRE(max_abs_diff(spec.bins, want) < 1.0e-9);
    }
}

TEST_CASE("ifft inverts fft on a large random signal")
{
    std::mt19937_64 rng(13);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cplx> x(1 << 16);
    for (auto &v : x)
        v = cplx{gauss(rng), gauss(rng)};
    const SampledSignal sig = make_signal(x, 40.0e9);
    const SampledSignal back = ifft(fft(sig));
    REQUIRE(back.sample_rate == sig.sample_rate);
    REQUIRE(max_abs_diff(back.samples, sig.samples) < 1.0e-9);
}

TEST_CASE("fft respects Parseval's identity")
{
    std::mt19937_64 rng(17);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cplx> x(4096);
    double time_energy = 0.0;
    for (auto &v : x)
    {
        v = cplx{gauss(rng), gauss(rng)};
        time_energy += std::norm(v);
    }
    const Spectrum spec = fft(make_signal(x));
    double freq_energy = 0.0;
    for (const auto &b : spec.bins)
        freq_energy += std::norm(b);
    freq_energy /= static_cast<double>(x.size());
    REQUIRE(freq_energy == Catch::Approx(time_energy).epsilon(1.0e-12));
}

TEST_CASE("fft of an impulse is flat and of a tone is a single bin")
{
    SampledSignal impulse = make_signal(std::vector<cplx>(64, cplx{0.0, 0.0}));
    impulse.samples[0] = cplx{1.0, 0.0};
    const Spectrum si = fft(impulse);
    for (const auto &b : si.bins)
        REQUIRE(std::abs(b - cplx{1.0, 0.0}) < 1.0e-12);

    // Complex tone exactly on bin 5 of 64.
    const double fs = 64.0e3;
    const SampledSignal tone = make_tone(5.0e3, fs, 64, 1.0, true);
    const Spectrum st = fft(tone);
    REQUIRE(std::abs(st.bins[5]) == Catch::Approx(64.0).epsilon(1.0e-9));
    for (std::size_t i = 0; i < st.bins.size(); ++i)
        if (i != 5)
            REQUIRE(std::abs(st.bins[i]) < 1.0e-8);
    REQUIRE(st.frequency_at(5) == Catch::Approx(5.0e3));
}

TEST_CASE("zero padding interpolates the spectrum without changing content")
{
    const SampledSignal tone = make_tone(3.25e3, 64.0e3, 64, 1.0, true);
    const Spectrum padded = fft(tone, 4);
    REQUIRE(padded.bins.size() == 256);
    REQUIRE(padded.freq_resolution == Catch::Approx(64.0e3 / 256.0));
    // The padded grid now contains the tone's exact frequency.
    std::size_t best = 0;
    for (std::size_t i = 1; i < padded.bins.size(); ++i)
        if (std::abs(padded.bins[i]) > std::abs(padded.bins[best]))
            best = i;
    REQUIRE(padded.frequency_at(best) == Catch::Approx(3.25e3));
}

TEST_CASE("spectrum frequency_at covers positive then negative frequencies")
{
    const Spectrum spec = fft(make_tone(0.0, 8.0, 8, 1.0, true));
    REQUIRE(spec.frequency_at(0) == Catch::Approx(0.0));
    REQUIRE(spec.frequency_at(1) == Catch::Approx(1.0));
    REQUIRE(spec.frequency_at(4) == Catch::Approx(4.0));
    REQUIRE(spec.frequency_at(5) == Catch::Approx(-3.0));
    REQUIRE(spec.frequency_at(7) == Catch::Approx(-1.0));
}

TEST_CASE("power metrics follow the 50-ohm dBm convention")
{
    const std::size_t n = 100000;
    // Real 1 V sine into 50 ohm: 0.5 V^2 / 50 ohm = 10 mW = +10 dBm.
    const SampledSignal sine = make_tone(1.0e3, 1.0e6, n);
    REQUIRE(measure_power_dbm(sine) == Catch::Approx(10.0).margin(1.0e-3));
    // Complex unit tone: 1 V^2 / 50 ohm = 20 mW = +13.01 dBm.
    const SampledSignal ctone = make_tone(1.0e3, 1.0e6, n, 1.0, true);
    REQUIRE(measure_power_dbm(ctone) == Catch::Approx(13.0103).margin(1.0e-3));
    // 0.1 V sine: -10 dBm.
    const SampledSignal small = make_tone(1.0e3, 1.0e6, n, 0.1);
    REQUIRE(measure_power_dbm(small) == Catch::Approx(-10.0).margin(1.0e-3));
    // Zero signal reports -inf.
    const SampledSignal zero = make_signal(std::vector<cplx>(16, cplx{0.0, 0.0}));
    REQUIRE(std::isinf(measure_power_dbm(zero)));
    REQUIRE(measure_power_dbm(zero) < 0.0);
}

TEST_CASE("normalized correlation is scale and phase invariant")
{
    std::mt19937_64 rng(23);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cplx> x(2048);
    for (auto &v : x)
        v = cplx{gauss(rng), gauss(rng)};
    const SampledSignal a = make_signal(x);
    SampledSignal b = a;
    for (auto &v : b.samples)
        v *= cplx{0.0, -3.7}; // scale by 3.7, rotate by -90 degrees
    REQUIRE(normalized_correlation(a, a) == Catch::Approx(1.0).epsilon(1.0e-12));
    REQUIRE(normalized_correlation(a, b) == Catch::Approx(1.0).epsilon(1.0e-12));

    // Orthogonal tones decorrelate.
    const SampledSignal t1 = make_tone(4.0e3, 64.0e3, 64, 1.0, true);
    const SampledSignal t2 = make_tone(8.0e3, 64.0e3, 64, 1.0, true);
    REQUIRE(normalized_correlation(t1, t2) < 1.0e-10);
}

TEST_CASE("add_awgn is deterministic per seed and honors the SNR")
{
    const SampledSignal clean = make_tone(1.0e3, 1.0e6, 200000);

    const SampledSignal a = add_awgn(clean, 10.0, 42);
    const SampledSignal b = add_awgn(clean, 10.0, 42);
    REQUIRE(a.samples == b.samples);
    const SampledSignal c = add_awgn(clean, 10.0, 43);
    REQUIRE(a.samples != c.samples);

    // Noise power 10 dB below signal power.
    double noise_power = 0.0;
    for (std::size_t i = 0; i < clean.size(); ++i)
        noise_power += std::norm(a.samples[i] - clean.samples[i]);
    noise_power /= static_cast<double>(clean.size());
    const double signal_power = measure_mean_power(clean);
    REQUIRE(noise_power == Catch::Approx(signal_power / 10.0).epsilon(0.03));

    // Real inputs stay real.
    REQUIRE(is_effectively_real(a));
}

TEST_CASE("add_awgn treats infinite SNR as a pass-through and rejects zero power")
{
    const SampledSignal clean = make_tone(1.0e3, 1.0e6, 1024);
    const SampledSignal same = add_awgn(clean, std::numeric_limits<double>::infinity(), 1);
    REQUIRE(same.samples == clean.samples);

    const SampledSignal zero = make_signal(std::vector<cplx>(64, cplx{0.0, 0.0}));
    REQUIRE_THROWS_AS(add_awgn(zero, 10.0, 1), std::invalid_argument);
}

TEST_CASE("complex AWGN splits power evenly between I and Q")
{
    const SampledSignal clean = make_tone(1.0e3, 1.0e6, 200000, 1.0, true);
    const SampledSignal noisy = add_awgn(clean, 0.0, 5);
    double pi_acc = 0.0, pq_acc = 0.0;
    for (std::size_t i = 0; i < clean.size(); ++i)
    {
        const cplx d = noisy.samples[i] - clean.samples[i];
        pi_acc += d.real() * d.real();
        pq_acc += d.imag() * d.imag();
    }
    REQUIRE(pi_acc / pq_acc == Catch::Approx(1.0).epsilon(0.05));
}

TEST_CASE("spectrum magnitude honors normalization and the floor")
{
    const SampledSignal tone = make_tone(5.0e3, 64.0e3, 64, 2.0, true);
    const Spectrum spec = fft(tone);
    const auto db = spectrum_magnitude_db(spec);
    REQUIRE(db[5] == Catch::Approx(0.0).margin(1.0e-9));
    for (std::size_t i = 0; i < db.size(); ++i)
        if (i != 5)
            REQUIRE(db[i] == Catch::Approx(-200.0).margin(1.0e-6));

    const auto raw = spectrum_magnitude_db(spec, false);
    REQUIRE(raw[5] == Catch::Approx(20.0 * std::log10(2.0 * 64.0)).margin(1.0e-9));
}

TEST_CASE("band power fraction isolates tones")
{
    SampledSignal two = make_tone(5.0e3, 64.0e3, 6400, 1.0, true);
    const SampledSignal second = make_tone(-12.0e3, 64.0e3, 6400, 0.5, true);
    for (std::size_t i = 0; i < two.size(); ++i)
        two.samples[i] += second.samples[i];
    const Spectrum spec = fft(two);
    const double p_hi = band_power_fraction(spec, 4.0e3, 6.0e3);
    const double p_lo = band_power_fraction(spec, -13.0e3, -11.0e3);
    REQUIRE(p_hi == Catch::Approx(1.0 / 1.25).epsilon(1.0e-6));
    REQUIRE(p_lo == Catch::Approx(0.25 / 1.25).epsilon(1.0e-6));
    REQUIRE(band_power_fraction(spec, -32.0e3, 32.0e3) == Catch::Approx(1.0).epsilon(1.0e-12));
}

TEST_CASE("hann window matches the closed form and rect leaves data alone")
{
    const auto w = make_window(Window::hann, 8);
    for (std::size_t i = 0; i < 8; ++i)
        REQUIRE(w[i] == Catch::Approx(0.5 - 0.5 * std::cos(2.0 * M_PI * i / 7.0)).margin(1e-12));

    const SampledSignal tone = make_tone(1.0e3, 64.0e3, 64);
    const SampledSignal same = apply_window(tone, Window::rect);
    REQUIRE(same.samples == tone.samples);

    REQUIRE(window_from_string("hann") == Window::hann);
    REQUIRE(window_from_string("rect") == Window::rect);
    REQUIRE_THROWS_AS(window_from_string("hamming"), std::invalid_argument);
}

TEST_CASE("fft rejects empty input")
{
    SampledSignal empty;
    empty.sample_rate = 1.0;
    REQUIRE_THROWS_AS(fft(empty), std::invalid_argument);
}
