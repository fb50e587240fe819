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

#include "jcrsim/filter.hpp"
#include "jcrsim/signal.hpp"

using namespace jcrsim;

namespace {

SampledSignal make_real_tone(double freq, double fs, std::size_t n, double amp = 1.0)
{
    SampledSignal s;
    s.sample_rate = fs;
    s.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        s.samples[i] = cplx{amp * std::sin(2.0 * M_PI * freq * static_cast<double>(i) / fs), 0.0};
    return s;
}

// Delay-compensated direct convolution: the O(n * taps) oracle for both the
// FFT convolver and the decimator.
std::vector<cplx> direct_fir(const std::vector<cplx> &x, const std::vector<double> &taps)
{
    const auto n = static_cast<std::ptrdiff_t>(x.size());
    const auto nt = static_cast<std::ptrdiff_t>(taps.size());
    const std::ptrdiff_t mid = (nt - 1) / 2;
    std::vector<cplx> out(x.size(), cplx{0.0, 0.0});
    for (std::ptrdiff_t i = 0; i < n; ++i)
    {
        cplx acc{0.0, 0.0};
        for (std::ptrdiff_t k = -mid; k <= mid; ++k)
        {
            const std::ptrdiff_t j = i - k;
            if (j >= 0 && j < n)
                acc += taps[static_cast<std::size_t>(mid + k)] * x[static_cast<std::size_t>(j)];
        }
        out[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

} // namespace

TEST_CASE("kaiser beta tracks the requested attenuation")
{
    CHECK(kaiser_beta_for_attenuation(65.0) == Catch::Approx(6.204).margin(1.0e-3));
    CHECK(kaiser_beta_for_attenuation(20.0) == 0.0);
    // Monotone non-decreasing across the three formula branches.
    double prev = -1.0;
    for (double a = 10.0; a <= 100.0; a += 2.5)
    {
        const double b = kaiser_beta_for_attenuation(a);
        CHECK(b >= prev);
        prev = b;
    }
}

TEST_CASE("kaiser tap estimate is odd, bounded below and shrinks with wider transitions")
{
    const int n1 = kaiser_taps_for(65.0, 0.5e3, 10.0e3);
    const int n2 = kaiser_taps_for(65.0, 2.0e3, 10.0e3);
    CHECK(n1 % 2 == 1);
    CHECK(n2 % 2 == 1);
    CHECK(n1 > n2);
    CHECK(kaiser_taps_for(65.0, 4.9e3, 10.0e3) >= 11);
    CHECK_THROWS_AS(kaiser_taps_for(65.0, 0.0, 10.0e3), std::invalid_argument);
}

TEST_CASE("kaiser lowpass meets its passband and stopband specs")
{
    const double fs = 10.0e3;
    const int taps = kaiser_taps_for(65.0, 0.5e3, fs);
    const auto h = design_kaiser_lowpass(1.0e3, taps, fs);

    // Unity DC gain by construction.
    CHECK(std::abs(fir_response_at(h, 0.0, fs)) == Catch::Approx(1.0).margin(1.0e-12));

    // Passband (up to cutoff - width/2) stays within 0.1%.
    for (double f = 0.0; f <= 750.0; f += 50.0)
        CHECK(std::abs(fir_response_at(h, f, fs)) == Catch::Approx(1.0).margin(1.0e-3));

    // Stopband (beyond cutoff + width/2) is at least 60 dB down.
    for (double f = 1250.0; f <= fs / 2.0; f += 100.0)
        CHECK(std::abs(fir_response_at(h, f, fs)) < 1.0e-3);

    CHECK_THROWS_AS(design_kaiser_lowpass(1.0e3, 100, fs), std::invalid_argument);
    CHECK_THROWS_AS(design_kaiser_lowpass(6.0e3, 101, fs), std::invalid_argument);
}

TEST_CASE("kaiser bandpass passes its band and rejects both sides")
{
    const double fs = 40.0e9;
    const auto h = design_kaiser_bandpass(7.91e9, 11.1e9, 1025, fs);

    // Unity gain at band center by construction, near-unity across the band.
    CHECK(std::abs(fir_response_at(h, 0.5 * (7.91e9 + 11.1e9), fs)) ==
          Catch::Approx(1.0).margin(1.0e-9));
    for (double f = 8.2e9; f <= 10.8e9; f += 0.2e9)
        CHECK(std::abs(fir_response_at(h, f, fs)) == Catch::Approx(1.0).margin(2.0e-3));

    // DC, the baseband hump and the sum band all rejected.
    CHECK(std::abs(fir_response_at(h, 0.0, fs)) < 1.0e-3);
    CHECK(std::abs(fir_response_at(h, 1.0e9, fs)) < 1.0e-3);
    CHECK(std::abs(fir_response_at(h, 17.0e9, fs)) < 1.0e-3);
}

TEST_CASE("fft convolver matches direct convolution with the delay removed")
{
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);

    std::vector<double> taps(31);
    for (auto &t : taps)
        t = uni(rng);

    SampledSignal sig;
    sig.sample_rate = 1.0e6;
    sig.samples.resize(200);
    for (auto &v : sig.samples)
        v = cplx{uni(rng), uni(rng)};

    const FftConvolver conv(taps);
    const SampledSignal out = conv(sig);
    const auto oracle = direct_fir(sig.samples, taps);

    REQUIRE(out.size() == sig.size());
    CHECK(out.sample_rate == sig.sample_rate);
    for (std::size_t i = 0; i < out.size(); ++i)
        CHECK(std::abs(out.samples[i] - oracle[i]) < 1.0e-12);
}

TEST_CASE("fft convolver keeps real signals exactly real")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    SampledSignal sig;
    sig.sample_rate = 1.0e6;
    sig.samples.resize(500);
    for (auto &v : sig.samples)
        v = cplx{uni(rng), 0.0};

    const auto h = design_kaiser_lowpass(1.0e5, 63, sig.sample_rate);
    const SampledSignal out = FftConvolver(h)(sig);
    for (const auto &v : out.samples)
        CHECK(v.imag() == 0.0);
}

TEST_CASE("group delay compensation leaves an impulse in place")
{
    SampledSignal sig;
    sig.sample_rate = 1.0e6;
    sig.samples.assign(301, cplx{0.0, 0.0});
    sig.samples[150] = cplx{1.0, 0.0};

    const auto h = design_kaiser_lowpass(2.0e5, 101, sig.sample_rate);
    const SampledSignal out = FftConvolver(h)(sig);

    std::size_t peak = 0;
    for (std::size_t i = 1; i < out.size(); ++i)
        if (std::abs(out.samples[i]) > std::abs(out.samples[peak]))
            peak = i;
    CHECK(peak == 150);
}

TEST_CASE("a passband sine passes through apply_fir unchanged")
{
    const double fs = 1.0e6;
    const SampledSignal sig = make_real_tone(20.0e3, fs, 4000);
    const auto h = design_kaiser_lowpass(1.0e5, 101, fs);
    const SampledSignal out = apply_fir(sig, h);

    for (std::size_t i = 200; i + 200 < out.size(); ++i)
        CHECK(std::abs(out.samples[i] - sig.samples[i]) < 2.0e-3);
}

TEST_CASE("decimate_fir equals filter-then-subsample")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    SampledSignal sig;
    sig.sample_rate = 1.0e6;
    sig.samples.resize(237); // deliberately not a multiple of the factor
    for (auto &v : sig.samples)
        v = cplx{uni(rng), uni(rng)};

    const auto h = design_kaiser_lowpass(5.0e4, 41, sig.sample_rate);
    const std::size_t factor = 5;
    const SampledSignal dec = decimate_fir(sig, h, factor);
    const auto full = direct_fir(sig.samples, h);

    REQUIRE(dec.size() == (sig.size() + factor - 1) / factor);
    CHECK(dec.sample_rate == Catch::Approx(sig.sample_rate / 5.0));
    for (std::size_t m = 0; m < dec.size(); ++m)
        CHECK(std::abs(dec.samples[m] - full[m * factor]) < 1.0e-12);
}

TEST_CASE("decimate_to_rate keeps passband tones and kills folding bands")
{
    const double fs = 200.0e6;
    const std::size_t n = 40000;

    SECTION("passband tone survives within 0.1 dB")
    {
        const SampledSignal sig = make_real_tone(1.0e6, fs, n);
        const SampledSignal out = decimate_to_rate(sig, 20.0e6, 8.0e6);
        CHECK(out.sample_rate == Catch::Approx(20.0e6));
        double acc = 0.0;
        for (std::size_t i = 100; i + 100 < out.size(); ++i)
            acc += std::norm(out.samples[i]);
        const double rms = std::sqrt(acc / static_cast<double>(out.size() - 200));
        CHECK(20.0 * std::log10(rms * std::sqrt(2.0)) ==
              Catch::Approx(0.0).margin(0.1));
    }

    SECTION("a tone beyond the output Nyquist folds in at least 60 dB down")
    {
        const SampledSignal sig = make_real_tone(10.5e6, fs, n);
        const SampledSignal out = decimate_to_rate(sig, 20.0e6, 8.0e6);
        // Skip the turn-on/turn-off transients at the record edges: the
        // abrupt tone start is broadband and passes any anti-alias filter.
        double acc = 0.0;
        std::size_t cnt = 0;
        for (std::size_t i = 100; i + 100 < out.size(); ++i, ++cnt)
            acc += std::norm(out.samples[i]);
        const double rms = std::sqrt(acc / static_cast<double>(cnt));
        CHECK(20.0 * std::log10(rms * std::sqrt(2.0)) < -60.0);
    }

    SECTION("non-integer ratios are rejected with the nearest valid rate")
    {
        const SampledSignal sig = make_real_tone(1.0e6, fs, 1000);
        CHECK_THROWS_WITH(decimate_to_rate(sig, 30.0e6, 8.0e6),
                          Catch::Matchers::ContainsSubstring("not an integer multiple"));
    }

    SECTION("factor one is the identity")
    {
        const SampledSignal sig = make_real_tone(1.0e6, fs, 1000);
        const SampledSignal out = decimate_to_rate(sig, fs, 8.0e6);
        REQUIRE(out.size() == sig.size());
        for (std::size_t i = 0; i < out.size(); ++i)
            CHECK(out.samples[i] == sig.samples[i]);
    }
}

TEST_CASE("the radar-scale multistage decimation holds amplitude and frequency")
{
    // 40 GHz -> 20 MHz is the de-chirp acquisition path: factor 2000.
    const double fs = 40.0e9;
    const std::size_t n = 160000; // one 4 us period
    const double f_tone = 5.0e6;
    const SampledSignal sig = make_real_tone(f_tone, fs, n);
    const SampledSignal out = decimate_to_rate(sig, 20.0e6, 9.0e6);

    REQUIRE(out.sample_rate == Catch::Approx(20.0e6));
    REQUIRE(out.size() == n / 2000);

    // The 5 MHz tone is bin 20 of the 80-sample record: read it back exactly.
    const Spectrum spec = fft(out);
    std::size_t peak = 0;
    for (std::size_t i = 1; i < spec.size() / 2; ++i)
        if (std::abs(spec.bins[i]) > std::abs(spec.bins[peak]))
            peak = i;
    CHECK(spec.frequency_at(peak) == Catch::Approx(f_tone));

    double acc = 0.0;
    for (const auto &v : out.samples)
        acc += std::norm(v);
    const double rms = std::sqrt(acc / static_cast<double>(out.size()));
    CHECK(20.0 * std::log10(rms * std::sqrt(2.0)) == Catch::Approx(0.0).margin(0.1));
}

TEST_CASE("fractional delay reproduces the analytically shifted sine")
{
    const double fs = 1.0e6;
    const double f = 1.0e3;
    const std::size_t n = 2000;
    const SampledSignal sig = make_real_tone(f, fs, n);

    const double delay = 3.27 / fs; // 3.27 samples
    const SampledSignal out = delay_signal(sig, delay);

    REQUIRE(out.size() == n);
    for (std::size_t i = 100; i + 100 < n; ++i)
    {
        const double t = static_cast<double>(i) / fs;
        const double want = std::sin(2.0 * M_PI * f * (t - delay));
        CHECK(out.samples[i].real() == Catch::Approx(want).margin(3.0e-5));
    }
}

TEST_CASE("integer delays shift exactly and zero-fill the head")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    SampledSignal sig;
    sig.sample_rate = 1.0e6;
    sig.samples.resize(64);
    for (auto &v : sig.samples)
        v = cplx{uni(rng), 0.0};

    const SampledSignal out = delay_signal(sig, 5.0 / sig.sample_rate);
    for (std::size_t i = 0; i < 5; ++i)
        CHECK(out.samples[i] == cplx{0.0, 0.0});
    for (std::size_t i = 5; i < out.size(); ++i)
        CHECK(out.samples[i] == sig.samples[i - 5]);

    const SampledSignal same = delay_signal(sig, 0.0);
    for (std::size_t i = 0; i < out.size(); ++i)
        CHECK(same.samples[i] == sig.samples[i]);

    CHECK_THROWS_AS(delay_signal(sig, -1.0e-6), std::invalid_argument);
}

TEST_CASE("the zero-fraction interpolation kernel is a unit impulse")
{
    const auto h = design_fractional_delay(0.0);
    REQUIRE(h.size() == 64);
    for (std::size_t i = 0; i < h.size(); ++i)
    {
        if (i == 31) // j == 0 lands at index half - 1
            CHECK(h[i] == 1.0);
        else
            CHECK(h[i] == 0.0);
    }
    CHECK_THROWS_AS(design_fractional_delay(1.0), std::invalid_argument);
    CHECK_THROWS_AS(design_fractional_delay(0.5, 63), std::invalid_argument);
}
