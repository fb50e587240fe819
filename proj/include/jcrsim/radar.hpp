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

#ifndef JCRSIM_RADAR_HPP
#define JCRSIM_RADAR_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "jcrsim/filter.hpp"
#include "jcrsim/parallel.hpp"
#include "jcrsim/photonic.hpp"
#include "jcrsim/signal.hpp"
#include "jcrsim/waveform.hpp"

namespace jcrsim {

inline constexpr double kSpeedOfLight = 2.9979e8; // m/s

// ---------------------------------------------------------------------------
// Scene model
// ---------------------------------------------------------------------------

// Point scatterer on the turntable, in target-fixed coordinates at slow time
// zero: +y lies along the line of sight (adds to the standoff range), +x is
// the cross-range direction.
struct Scatterer {
    double x = 0.0;            // m
    double y = 0.0;            // m
    double reflectivity = 1.0; // linear echo amplitude factor
};

// Target on a turntable at a fixed standoff, rotating at omega rad/s.
// omega == 0 describes a static ranging scene.
struct TargetScene {
    std::vector<Scatterer> scatterers;
    double standoff = 1.0;            // m, turntable center distance
    double omega = 0.0;               // rad/s
    double c_light = kSpeedOfLight;   // m/s
};

// Instantaneous range of a scatterer at slow time t (small-angle turntable
// geometry): R = L + x sin(omega t) + y cos(omega t).
inline double scatterer_range(const TargetScene &scene, const Scatterer &s, double t_slow)
{
    const double ang = scene.omega * t_slow;
    return scene.standoff + s.x * std::sin(ang) + s.y * std::cos(ang);
}

// ---------------------------------------------------------------------------
// Echo synthesis and de-chirping
// ---------------------------------------------------------------------------

// Returns the superposed echoes of one transmitted period.  Each scatterer
// contributes a round-trip-delayed, amplitude-scaled copy (windowed-sinc
// sub-sample delay).  The echo must stay inside the period's dead interval;
// otherwise the target is beyond the unambiguous range of the waveform.
inline SampledSignal synth_echo(const SampledSignal &tx_period, const TargetScene &scene,
                                int pulse_index, const LfmParams &lfm, double echo_scale = 1.0,
                                int fd_taps = 64)
{
    if (tx_period.empty())
        throw std::invalid_argument("synth_echo: empty input");
    if (scene.scatterers.empty())
        throw std::invalid_argument("synth_echo: scene has no scatterers");
    if (scene.c_light <= 0.0)
        throw std::invalid_argument("synth_echo: c_light must be positive");

    const double t_slow = static_cast<double>(pulse_index) * lfm.period;
    const double max_delay = (1.0 - lfm.duty) * lfm.period;

    SampledSignal echo;
    echo.sample_rate = tx_period.sample_rate;
    echo.start_time = tx_period.start_time;
    echo.samples.assign(tx_period.size(), cplx{0.0, 0.0});
    for (const auto &s : scene.scatterers)
    {
        const double range = scatterer_range(scene, s, t_slow);
        if (range <= 0.0)
            throw std::invalid_argument("synth_echo: scatterer range must be positive");
        const double delay = 2.0 * range / scene.c_light;
        if (delay > max_delay)
            throw std::invalid_argument(
                "target beyond unambiguous range: round-trip delay " + std::to_string(delay) +
                " s exceeds the dead interval " + std::to_string(max_delay) + " s");
        const SampledSignal shifted = delay_signal(tx_period, delay, fd_taps);
        const double w = s.reflectivity * echo_scale;
        for (std::size_t i = 0; i < echo.size(); ++i)
            echo.samples[i] += w * shifted.samples[i];
    }
    return echo;
}

// De-chirp: real mixer (sample-wise product) against the reference, followed
// by the electrical lowpass that keeps the beat band and rejects the
// double-chirp image.  The reference is the transmitted waveform itself, so
// any data phase rides through into the beat term.
inline SampledSignal dechirp(const SampledSignal &echo, const SampledSignal &reference,
                             double elpf_cutoff = 1.4e9, int elpf_taps = 1025)
{
    detail::require_same_grid(echo, reference, "dechirp");
    SampledSignal product;
    product.sample_rate = echo.sample_rate;
    product.start_time = echo.start_time;
    product.samples.resize(echo.size());
    for (std::size_t i = 0; i < echo.size(); ++i)
        product.samples[i] = cplx{echo.samples[i].real() * reference.samples[i].real(), 0.0};
    return fir_lowpass(product, elpf_cutoff, elpf_taps);
}

// Keeps only the active (chirping) interval of a period-length record.
inline SampledSignal crop_active(const SampledSignal &period_signal, const LfmParams &lfm)
{
    if (period_signal.empty())
        throw std::invalid_argument("crop_active: empty input");
    const std::size_t n_active = detail::active_samples_per_period(lfm, period_signal.sample_rate);
    if (n_active > period_signal.size())
        throw std::invalid_argument("crop_active: mismatched signals");
    SampledSignal out;
    out.sample_rate = period_signal.sample_rate;
    out.start_time = period_signal.start_time;
    out.samples.assign(period_signal.samples.begin(),
                       period_signal.samples.begin() + static_cast<std::ptrdiff_t>(n_active));
    return out;
}

// Oscilloscope front end: anti-aliased decimation of the de-chirped record
// to the acquisition rate.
inline SampledSignal decimate_dechirped(const SampledSignal &dechirped, double out_rate = 20.0e6)
{
    return decimate_to_rate(dechirped, out_rate, 0.4 * out_rate, 65.0);
}

// ---------------------------------------------------------------------------
// Range profile
// ---------------------------------------------------------------------------

// One-sided beat spectrum of a de-chirped acquisition.  Magnitudes are in dB
// normalized so the peak reads 0 dB; the distance axis follows
// L = (c / 2k) f_beat.
struct RangeProfile {
    std::vector<double> beat_frequencies; // Hz
    std::vector<double> magnitude_db;     // dB relative to the peak
    double chirp_rate = 0.0;              // Hz/s
    double c_light = kSpeedOfLight;

    std::size_t size() const { return beat_frequencies.size(); }
    double distance_at(std::size_t i) const
    {
        return c_light / (2.0 * chirp_rate) * beat_frequencies[i];
    }
};

inline RangeProfile range_profile(const SampledSignal &dechirped, double chirp_rate,
                                  int zero_pad = 8, Window window = Window::hann,
                                  double c_light = kSpeedOfLight)
{
    if (dechirped.empty())
        throw std::invalid_argument("range_profile: empty input");
    if (chirp_rate <= 0.0)
        throw std::invalid_argument("range_profile: chirp rate must be positive");

    const Spectrum spec = fft(apply_window(dechirped, window), zero_pad);
    const std::size_t n_bins = spec.size() / 2 + 1;

    RangeProfile profile;
    profile.chirp_rate = chirp_rate;
    profile.c_light = c_light;
    profile.beat_frequencies.resize(n_bins);
    profile.magnitude_db.resize(n_bins);

    double peak = 0.0;
    for (std::size_t i = 0; i < n_bins; ++i)
        peak = std::max(peak, std::abs(spec.bins[i]));
    if (peak <= 0.0)
        peak = 1.0;
    for (std::size_t i = 0; i < n_bins; ++i)
    {
        profile.beat_frequencies[i] = spec.freq_resolution * static_cast<double>(i);
        const double mag = std::abs(spec.bins[i]) / peak;
        profile.magnitude_db[i] = mag > 0.0 ? std::max(20.0 * std::log10(mag), -300.0) : -300.0;
    }
    return profile;
}

// ---------------------------------------------------------------------------
// Distance estimation
// ---------------------------------------------------------------------------

namespace detail {

// Local maxima of the profile at or above floor_db, returned as bin indices.
inline std::vector<std::size_t> profile_peaks(const RangeProfile &p, double floor_db)
{
    std::vector<std::size_t> peaks;
    const std::size_t n = p.size();
    for (std::size_t i = 0; i < n; ++i)
    {
        if (p.magnitude_db[i] < floor_db)
            continue;
        const bool left_ok = (i == 0) || (p.magnitude_db[i] > p.magnitude_db[i - 1]);
        const bool right_ok = (i + 1 == n) || (p.magnitude_db[i] >= p.magnitude_db[i + 1]);
        if (left_ok && right_ok)
            peaks.push_back(i);
    }
    return peaks;
}

// Vertex offset (in bins) of a parabola through three dB samples.
inline double parabolic_offset(double y_left, double y_mid, double y_right)
{
    const double den = y_left - 2.0 * y_mid + y_right;
    if (den >= 0.0)
        return 0.0; // flat or non-concave: keep the grid peak
    const double delta = 0.5 * (y_left - y_right) / den;
    return std::clamp(delta, -0.5, 0.5);
}

} // namespace detail

// Interpolated beat frequency of the strongest num_targets profile peaks,
// each refined by a parabolic fit on the dB samples, sorted ascending.
inline std::vector<double> estimate_beat_frequencies(const RangeProfile &profile, int num_targets,
                                                     double floor_db = -20.0)
{
    if (num_targets < 1)
        throw std::invalid_argument("estimate_beat_frequencies: num_targets must be >= 1");
    auto peaks = detail::profile_peaks(profile, floor_db);
    if (peaks.size() < static_cast<std::size_t>(num_targets))
        throw std::runtime_error("estimate_beat_frequencies: found " + std::to_string(peaks.size()) +
                                 " peaks above the " + std::to_string(floor_db) +
                                 " dB floor, requested " + std::to_string(num_targets));

    std::sort(peaks.begin(), peaks.end(), [&](std::size_t a, std::size_t b) {
        return profile.magnitude_db[a] > profile.magnitude_db[b];
    });
    peaks.resize(static_cast<std::size_t>(num_targets));

    const double df = profile.beat_frequencies.size() > 1
                          ? profile.beat_frequencies[1] - profile.beat_frequencies[0]
                          : 0.0;
    std::vector<double> freqs;
    freqs.reserve(peaks.size());
    for (const std::size_t i : peaks)
    {
        double offset = 0.0;
        if (i > 0 && i + 1 < profile.size())
            offset = detail::parabolic_offset(profile.magnitude_db[i - 1], profile.magnitude_db[i],
                                              profile.magnitude_db[i + 1]);
        freqs.push_back(profile.beat_frequencies[i] + offset * df);
    }
    std::sort(freqs.begin(), freqs.end());
    return freqs;
}

inline std::vector<double> estimate_distances(const RangeProfile &profile, int num_targets,
                                              double floor_db = -20.0)
{
    std::vector<double> d = estimate_beat_frequencies(profile, num_targets, floor_db);
    for (auto &f : d)
        f *= profile.c_light / (2.0 * profile.chirp_rate);
    return d;
}

// Peak-to-integrated-sidelobe ratio of a profile, in dB.  The main lobe is
// bounded by the first local minima on each side of the peak.
inline double profile_pisr_db(const RangeProfile &profile)
{
    const std::size_t n = profile.size();
    if (n < 8)
        throw std::invalid_argument("profile_pisr_db: profile too short");
    std::size_t pk = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (profile.magnitude_db[i] > profile.magnitude_db[pk])
            pk = i;

    std::size_t lo = pk;
    while (lo > 0 && profile.magnitude_db[lo - 1] < profile.magnitude_db[lo])
        --lo;
    std::size_t hi = pk;
    while (hi + 1 < n && profile.magnitude_db[hi + 1] < profile.magnitude_db[hi])
        ++hi;

    double main_e = 0.0, side_e = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        const double p = std::pow(10.0, profile.magnitude_db[i] / 10.0);
        if (i >= lo && i <= hi)
            main_e += p;
        else
            side_e += p;
    }
    if (side_e <= 0.0)
        return 300.0;
    return 10.0 * std::log10(main_e / side_e);
}

// ---------------------------------------------------------------------------
// Resolution prediction
// ---------------------------------------------------------------------------

struct Resolution {
    double range_m = 0.0;
    double cross_range_m = 0.0;
};

// Theoretical cell sizes: range c/(2B); cross-range lambda/(2 Tr omega),
// where Tr*omega is the total aperture rotation.
inline Resolution predict_resolution(double bandwidth, double lambda, double tr_seconds,
                                     double omega, double c_light = kSpeedOfLight)
{
    if (bandwidth <= 0.0 || lambda <= 0.0 || tr_seconds <= 0.0)
        throw std::invalid_argument("predict_resolution: parameters must be positive");
    if (omega == 0.0)
        throw std::invalid_argument("no cross-range diversity: omega must be nonzero");
    Resolution r;
    r.range_m = c_light / (2.0 * bandwidth);
    r.cross_range_m = lambda / (2.0 * tr_seconds * std::abs(omega));
    return r;
}

// ---------------------------------------------------------------------------
// ISAR imaging
// ---------------------------------------------------------------------------

// Range-Doppler image.  pixels is row-major [range][cross_range], linear
// magnitude normalized to a unit peak; range_axis in meters from the radar,
// cross_axis in meters (positive toward +x at slow time zero).
struct IsarImage {
    std::size_t num_range = 0;
    std::size_t num_cross = 0;
    std::vector<double> pixels; // linear magnitude, peak == 1
    std::vector<double> range_axis;
    std::vector<double> cross_axis;
    Resolution predicted;

    double at(std::size_t r, std::size_t c) const { return pixels[r * num_cross + c]; }
    double db_at(std::size_t r, std::size_t c) const
    {
        const double v = at(r, c);
        return v > 0.0 ? std::max(20.0 * std::log10(v), -300.0) : -300.0;
    }
};

struct IsarOptions {
    Window window = Window::hann;
    int range_pad = 4;
    int doppler_pad = 4;
    double c_light = kSpeedOfLight;
};

// Forms the range-Doppler image from de-chirped pulse acquisitions: per-pulse
// windowed FFT over fast time (one-sided), then a windowed FFT across pulses
// per range bin, shifted so zero Doppler sits at the image center.  Each
// pulse record must span the active interval of one period.
inline IsarImage isar_image(const std::vector<SampledSignal> &pulses, double chirp_rate,
                            double lambda, double tr_seconds, double omega,
                            const IsarOptions &opt = {})
{
    if (pulses.empty())
        throw std::invalid_argument("isar_image: empty input");
    if (pulses.size() < 16)
        throw std::invalid_argument("isar_image: at least 16 pulses required");
    if (omega == 0.0)
        throw std::invalid_argument("no cross-range diversity: omega must be nonzero");
    if (chirp_rate <= 0.0 || lambda <= 0.0 || tr_seconds <= 0.0)
        throw std::invalid_argument("isar_image: parameters must be positive");
    for (const auto &p : pulses)
        if (p.size() != pulses[0].size() || p.sample_rate != pulses[0].sample_rate)
            throw std::invalid_argument("isar_image: mismatched signals");

    const std::size_t n_pulses = pulses.size();
    const std::size_t m = pulses[0].size();
    const double fs = pulses[0].sample_rate;
    const std::size_t m_pad = m * static_cast<std::size_t>(opt.range_pad);
    const std::size_t n_range = m_pad / 2 + 1;
    const std::size_t n_dopp = n_pulses * static_cast<std::size_t>(opt.doppler_pad);

    // Fast-time transforms: slow[b * n_pulses + p] = range bin b of pulse p.
    std::vector<cplx> slow(n_range * n_pulses);
    for (std::size_t p = 0; p < n_pulses; ++p)
    {
        const Spectrum spec = fft(apply_window(pulses[p], opt.window), opt.range_pad);
        for (std::size_t b = 0; b < n_range; ++b)
            slow[b * n_pulses + p] = spec.bins[b];
    }

    // Slow-time transforms per range bin, with fftshift.
    const std::vector<double> w_slow = make_window(opt.window, n_pulses);
    IsarImage img;
    img.num_range = n_range;
    img.num_cross = n_dopp;
    img.pixels.assign(n_range * n_dopp, 0.0);

    std::vector<cplx> in(n_dopp), out(n_dopp);
    double peak = 0.0;
    for (std::size_t b = 0; b < n_range; ++b)
    {
        std::fill(in.begin(), in.end(), cplx{0.0, 0.0});
        for (std::size_t p = 0; p < n_pulses; ++p)
            in[p] = slow[b * n_pulses + p] * w_slow[p];
        detail::fft_raw(in.data(), out.data(), n_dopp, true);
        for (std::size_t d = 0; d < n_dopp; ++d)
        {
            // fftshift: image column 0 is the most negative Doppler.
            const std::size_t src = (d + n_dopp / 2) % n_dopp;
            const double mag = std::abs(out[src]);
            img.pixels[b * n_dopp + d] = mag;
            peak = std::max(peak, mag);
        }
    }
    if (peak > 0.0)
        for (auto &v : img.pixels)
            v /= peak;

    // Axes.  The de-chirped gate spans the active interval, so the swept
    // bandwidth is chirp_rate * gate duration.
    const double gate = static_cast<double>(m) / fs;
    const double bandwidth = chirp_rate * gate;
    img.predicted = predict_resolution(bandwidth, lambda, tr_seconds, omega, opt.c_light);

    const double df_fast = fs / static_cast<double>(m_pad);
    img.range_axis.resize(n_range);
    for (std::size_t b = 0; b < n_range; ++b)
        img.range_axis[b] = opt.c_light / (2.0 * chirp_rate) * df_fast * static_cast<double>(b);

    const double t_slow = tr_seconds / static_cast<double>(n_pulses);
    const double df_dopp = 1.0 / (t_slow * static_cast<double>(n_dopp));
    img.cross_axis.resize(n_dopp);
    for (std::size_t d = 0; d < n_dopp; ++d)
    {
        const double fd = (static_cast<double>(d) - static_cast<double>(n_dopp / 2)) * df_dopp;
        img.cross_axis[d] = lambda / (2.0 * omega) * fd;
    }
    return img;
}

// -3 dB widths of the image's global peak along both axes, via linear
// interpolation of the half-power crossings.
inline Resolution measure_psf_widths(const IsarImage &img)
{
    if (img.pixels.empty())
        throw std::invalid_argument("measure_psf_widths: empty input");
    std::size_t pr = 0, pc = 0;
    double peak = -1.0;
    for (std::size_t r = 0; r < img.num_range; ++r)
        for (std::size_t c = 0; c < img.num_cross; ++c)
            if (img.at(r, c) > peak)
            {
                peak = img.at(r, c);
                pr = r;
                pc = c;
            }
    const double half = peak * std::pow(10.0, -3.0 / 20.0);

    auto cross_axis_width = [&](auto value_at, std::ptrdiff_t center, std::ptrdiff_t count,
                                auto axis_at) -> double {
        std::ptrdiff_t lo = center;
        while (lo > 0 && value_at(lo) >= half)
            --lo;
        std::ptrdiff_t hi = center;
        while (hi + 1 < count && value_at(hi) >= half)
            ++hi;
        if (value_at(lo) >= half || value_at(hi) >= half)
            throw std::runtime_error("measure_psf_widths: main lobe reaches the image edge");
        // Interpolate the crossing positions.
        const double x_lo = axis_at(lo) + (axis_at(lo + 1) - axis_at(lo)) *
                                              (half - value_at(lo)) / (value_at(lo + 1) - value_at(lo));
        const double x_hi = axis_at(hi - 1) + (axis_at(hi) - axis_at(hi - 1)) *
                                                  (half - value_at(hi - 1)) / (value_at(hi) - value_at(hi - 1));
        return x_hi - x_lo;
    };

    Resolution widths;
    widths.range_m = cross_axis_width(
        [&](std::ptrdiff_t r) { return img.at(static_cast<std::size_t>(r), pc); },
        static_cast<std::ptrdiff_t>(pr), static_cast<std::ptrdiff_t>(img.num_range),
        [&](std::ptrdiff_t r) { return img.range_axis[static_cast<std::size_t>(r)]; });
    widths.cross_range_m = cross_axis_width(
        [&](std::ptrdiff_t c) { return img.at(pr, static_cast<std::size_t>(c)); },
        static_cast<std::ptrdiff_t>(pc), static_cast<std::ptrdiff_t>(img.num_cross),
        [&](std::ptrdiff_t c) { return img.cross_axis[static_cast<std::size_t>(c)]; });
    return widths;
}

// Image contrast: standard deviation over mean of pixel intensity, in dB.
// A concentrated image scores high; phase noise that smears energy into the
// visible band drives the metric down.
inline double image_contrast_db(const IsarImage &img)
{
    if (img.pixels.empty())
        throw std::invalid_argument("image_contrast_db: empty input");
    double mean = 0.0;
    for (const double v : img.pixels)
        mean += v * v;
    mean /= static_cast<double>(img.pixels.size());
    if (mean <= 0.0)
        throw std::invalid_argument("image_contrast_db: zero-power image");
    double var = 0.0;
    for (const double v : img.pixels)
    {
        const double d = v * v - mean;
        var += d * d;
    }
    var /= static_cast<double>(img.pixels.size());
    return 10.0 * std::log10(std::sqrt(var) / mean);
}

struct ImagePeak {
    double range_m = 0.0;
    double cross_range_m = 0.0;
    double level_db = 0.0;
};

struct ImagePeakReport {
    std::vector<ImagePeak> peaks; // strongest first
    double residual_max_db = 0.0; // strongest pixel left after blanking peaks
};

// Greedy bright-point extraction: repeatedly takes the image's strongest
// remaining pixel and blanks a guard box around it (guard_range/guard_cross
// half-widths, in bins) so one scatterer's main lobe yields one peak.  The
// residual maximum after `count` extractions is the background level against
// which peak prominence is judged.
inline ImagePeakReport extract_image_peaks(const IsarImage &img, int count, int guard_range,
                                           int guard_cross)
{
    if (img.pixels.empty())
        throw std::invalid_argument("extract_image_peaks: empty input");
    if (count < 1)
        throw std::invalid_argument("extract_image_peaks: count must be >= 1");
    if (guard_range < 1 || guard_cross < 1)
        throw std::invalid_argument("extract_image_peaks: guard widths must be >= 1");

    std::vector<double> work = img.pixels;
    const auto rows = img.num_range;
    const auto cols = img.num_cross;
    const auto strongest = [&]() {
        std::size_t best = 0;
        for (std::size_t i = 1; i < work.size(); ++i)
            if (work[i] > work[best])
                best = i;
        return best;
    };

    ImagePeakReport report;
    for (int n = 0; n < count; ++n)
    {
        const std::size_t idx = strongest();
        const std::size_t r = idx / cols;
        const std::size_t c = idx % cols;
        ImagePeak pk;
        pk.range_m = img.range_axis[r];
        pk.cross_range_m = img.cross_axis[c];
        pk.level_db = 20.0 * std::log10(std::max(work[idx], 1e-300));
        report.peaks.push_back(pk);
        const std::size_t r_lo = r >= static_cast<std::size_t>(guard_range)
                                     ? r - static_cast<std::size_t>(guard_range)
                                     : 0;
        const std::size_t r_hi = std::min(rows - 1, r + static_cast<std::size_t>(guard_range));
        const std::size_t c_lo = c >= static_cast<std::size_t>(guard_cross)
                                     ? c - static_cast<std::size_t>(guard_cross)
                                     : 0;
        const std::size_t c_hi = std::min(cols - 1, c + static_cast<std::size_t>(guard_cross));
        for (std::size_t rr = r_lo; rr <= r_hi; ++rr)
            for (std::size_t cc = c_lo; cc <= c_hi; ++cc)
                work[rr * cols + cc] = 0.0;
    }
    report.residual_max_db = 20.0 * std::log10(std::max(work[strongest()], 1e-300));
    return report;
}

// ---------------------------------------------------------------------------
// Pulse pipeline
// ---------------------------------------------------------------------------

struct RadarProcParams {
    double elpf_cutoff = 1.4e9; // Hz
    int elpf_taps = 1025;
    double osc_rate = 20.0e6; // Hz
    int fd_taps = 64;
    double echo_scale = 1.0;
};

// De-chirps one pulse: synthesize the scene echo of the transmitted period,
// mix against the transmitted waveform, gate to the active interval and
// decimate to the acquisition rate.
inline SampledSignal dechirped_pulse(const SampledSignal &tx_period, const TargetScene &scene,
                                     int pulse_index, const LfmParams &lfm,
                                     const RadarProcParams &params = {})
{
    const SampledSignal echo =
        synth_echo(tx_period, scene, pulse_index, lfm, params.echo_scale, params.fd_taps);
    const SampledSignal mixed = dechirp(echo, tx_period, params.elpf_cutoff, params.elpf_taps);
    return decimate_dechirped(crop_active(mixed, lfm), params.osc_rate);
}

// De-chirped acquisitions for a train of pulses, each carrying its own data
// payload slice.  Pulses are independent, so the loop parallelizes over
// preallocated slots.
inline std::vector<SampledSignal> collect_pulse_matrix(const LfmParams &lfm, const QpskFrame &frame,
                                                       const TargetScene &scene,
                                                       const JointTxConfig &tx,
                                                       const RadarProcParams &params,
                                                       double sample_rate, int num_pulses,
                                                       int threads = 1)
{
    if (num_pulses < 1 || num_pulses > frame.num_periods)
        throw std::invalid_argument("collect_pulse_matrix: num_pulses exceeds frame payload");
    std::vector<SampledSignal> pulses(static_cast<std::size_t>(num_pulses));
    parallel_for(static_cast<std::size_t>(num_pulses), threads, [&](std::size_t p) {
        const SampledSignal tx_p = joint_tx_period(lfm, frame, tx, sample_rate, static_cast<int>(p));
        pulses[p] = dechirped_pulse(tx_p, scene, static_cast<int>(p), lfm, params);
    });
    return pulses;
}

// ---------------------------------------------------------------------------
// Data-phase degradation sweep
// ---------------------------------------------------------------------------

struct PhaseSweepConfig {
    LfmParams lfm{8.5e9, 1.0e9, 4.0e-6, 0.95, 1.0};
    double sample_rate = 40.0e9;
    int num_pulses = 128;
    double omega = 195.3; // rad/s; Tr*omega stays small so the PSF is compact
    RadarProcParams proc;
    IsarOptions image_opt;
    std::uint64_t seed = 1;
    double amp = 1.0;
    int threads = 1;
};

struct PhaseSweepRow {
    double distance_m = 0.0;
    double symbol_duration = 0.0; // s
    double delay_ratio = 0.0;     // round-trip delay / symbol duration
    double pisr_db = 0.0;         // mean per-pulse peak-to-integrated-sidelobe
    double contrast_db = 0.0;
    double baseline_contrast_db = 0.0; // same geometry, constant symbol phase
    double contrast_delta_db = 0.0;    // contrast_db - baseline_contrast_db
};

namespace detail {

struct SweepImageResult {
    double contrast_db = 0.0;
    double pisr_db = 0.0;
};

inline SweepImageResult sweep_image(const LfmParams &lfm, const QpskFrame &frame,
                                    const TargetScene &scene, const PhaseSweepConfig &cfg,
                                    bool constant_phase)
{
    QpskFrame f = frame;
    if (constant_phase)
    {
        std::fill(f.i_bits.begin(), f.i_bits.end(), std::uint8_t{0});
        std::fill(f.q_bits.begin(), f.q_bits.end(), std::uint8_t{0});
    }

    JointTxConfig tx;
    tx.model = TxModel::analytic;
    tx.amp = cfg.amp;

    std::vector<SampledSignal> pulses;
    if (constant_phase)
    {
        // Identical payload every pulse: compute one acquisition, replicate.
        const SampledSignal tx_p = joint_tx_period(lfm, f, tx, cfg.sample_rate, 0);
        const SampledSignal one = dechirped_pulse(tx_p, scene, 0, lfm, cfg.proc);
        pulses.assign(static_cast<std::size_t>(cfg.num_pulses), one);
    }
    else
        pulses = collect_pulse_matrix(lfm, f, scene, tx, cfg.proc, cfg.sample_rate, cfg.num_pulses,
                                      cfg.threads);

    const double tr = static_cast<double>(cfg.num_pulses) * lfm.period;
    const double lambda = kSpeedOfLight / (lfm.f0 + lfm.bandwidth / 2.0);
    const IsarImage img = isar_image(pulses, lfm.chirp_rate(), lambda, tr, cfg.omega, cfg.image_opt);

    double pisr_lin = 0.0;
    for (const auto &p : pulses)
    {
        const RangeProfile prof = range_profile(p, lfm.chirp_rate(), 8, cfg.image_opt.window);
        pisr_lin += std::pow(10.0, profile_pisr_db(prof) / 10.0);
    }
    pisr_lin /= static_cast<double>(pulses.size());

    SweepImageResult r;
    r.contrast_db = image_contrast_db(img);
    r.pisr_db = 10.0 * std::log10(pisr_lin);
    return r;
}

} // namespace detail

// Sweeps the ratio of round-trip delay to symbol duration.  For each
// (distance, symbol duration) pair the scene is imaged with pseudorandom
// payload and with a constant-phase payload (the no-data baseline); the
// contrast difference quantifies how the delayed data phase degrades the
// image as the delay approaches and exceeds a symbol.
inline std::vector<PhaseSweepRow> phase_term_sweep(const std::vector<double> &distances,
                                                   const std::vector<double> &symbol_durations,
                                                   const PhaseSweepConfig &cfg)
{
    if (distances.empty() || symbol_durations.empty())
        throw std::invalid_argument("phase_term_sweep: empty input");

    std::vector<PhaseSweepRow> rows;
    for (const double t_sym : symbol_durations)
    {
        const double bit_rate = 2.0 / t_sym;
        const QpskFrame frame =
            gen_qpsk_frame(bit_rate, cfg.lfm, cfg.num_pulses, cfg.seed);
        for (const double dist : distances)
        {
            TargetScene scene;
            scene.standoff = dist;
            scene.omega = cfg.omega;
            scene.scatterers.push_back({0.0, 0.0, 1.0});

            const auto with_data = detail::sweep_image(cfg.lfm, frame, scene, cfg, false);
            const auto baseline = detail::sweep_image(cfg.lfm, frame, scene, cfg, true);

            PhaseSweepRow row;
            row.distance_m = dist;
            row.symbol_duration = t_sym;
            row.delay_ratio = (2.0 * dist / kSpeedOfLight) / t_sym;
            row.pisr_db = with_data.pisr_db;
            row.contrast_db = with_data.contrast_db;
            row.baseline_contrast_db = baseline.contrast_db;
            row.contrast_delta_db = with_data.contrast_db - baseline.contrast_db;
            rows.push_back(row);
        }
    }
    return rows;
}

} // namespace jcrsim

#endif
