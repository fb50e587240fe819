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

#ifndef JCRSIM_PHOTONIC_HPP
#define JCRSIM_PHOTONIC_HPP

#include <cmath>
#include <stdexcept>
#include <utility>

#include "jcrsim/filter.hpp"
#include "jcrsim/signal.hpp"
#include "jcrsim/waveform.hpp"

namespace jcrsim {

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

// Continuous-wave laser feeding the modulators.  Fields are complex envelopes
// referenced to this carrier, so the absolute optical frequency is
// bookkeeping only.
struct OpticalCarrier {
    double amplitude = 1.0;     // field units
    double frequency = 193.4e12; // Hz
};

// Dual-parallel Mach-Zehnder modulator bias set.  The carrier-suppressed
// single-sideband preset puts both children at their null (bias -v_pi) and
// the parent at quadrature (v_pi/2).
struct ModulatorConfig {
    double v_pi = 5.0;   // V, half-wave voltage
    double bias_v1 = 0.0; // V, child MZM 1
    double bias_v2 = 0.0; // V, child MZM 2
    double bias_v3 = 0.0; // V, parent phase section

    static ModulatorConfig cs_ssb_preset(double v_pi_volts = 5.0)
    {
        ModulatorConfig cfg;
        cfg.v_pi = v_pi_volts;
        cfg.bias_v1 = -v_pi_volts;
        cfg.bias_v2 = -v_pi_volts;
        cfg.bias_v3 = v_pi_volts / 2.0;
        return cfg;
    }

    // Small-signal modulation index of a drive with the given amplitude.
    double drive_index(double amplitude_volts) const { return M_PI * amplitude_volts / (2.0 * v_pi); }

    // Modulation index per volt (the IQ-arm coefficient).
    double index_per_volt() const { return M_PI / (2.0 * v_pi); }
};

inline void validate_modulator(const ModulatorConfig &cfg)
{
    if (cfg.v_pi <= 0.0)
        throw std::invalid_argument("modulator: v_pi must be positive");
}

// Erbium amplifier plus photodiode chain.
struct DetectorConfig {
    double responsivity = 1.0; // A/W
    double edfa_gain = 1.0;    // field gain applied before detection
    double load_ohms = 50.0;   // transimpedance for voltage conversion
};

namespace detail {

inline void require_same_grid(const SampledSignal &a, const SampledSignal &b, const char *op)
{
    if (a.empty() || b.empty())
        throw std::invalid_argument(std::string(op) + ": empty input");
    if (a.size() != b.size() || a.sample_rate != b.sample_rate)
        throw std::invalid_argument(std::string(op) + ": mismatched signals");
}

} // namespace detail

// ---------------------------------------------------------------------------
// Modulator field models
// ---------------------------------------------------------------------------

// Exact interferometric output of a dual-parallel MZM driven by two RF
// waveforms, as a complex envelope about the carrier:
//
//   E(t) = (Ein/2) * { cos[a (v1(t) + V1)] e^{j pi V1 / (2 v_pi)}
//                    + cos[a (v2(t) + V2)] e^{j pi V2 / (2 v_pi)} e^{j pi V3 / v_pi} }
//
// with a = pi / (2 v_pi).  Under the CS-SSB preset and quadrature chirp
// drives (v1 sine-phase, v2 cosine-phase) the output collapses to the pure
// lower-sideband line; residual carrier and upper sideband come only from
// bias error or drive imbalance.
inline SampledSignal xdpmzm_field(const OpticalCarrier &carrier, const SampledSignal &drive1,
                                  const SampledSignal &drive2, const ModulatorConfig &cfg)
{
    validate_modulator(cfg);
    detail::require_same_grid(drive1, drive2, "xdpmzm_field");

    const double a = M_PI / (2.0 * cfg.v_pi);
    const cplx arm1 = std::exp(cplx{0.0, M_PI * cfg.bias_v1 / (2.0 * cfg.v_pi)});
    const cplx arm2 = std::exp(cplx{0.0, M_PI * cfg.bias_v2 / (2.0 * cfg.v_pi)}) *
                      std::exp(cplx{0.0, M_PI * cfg.bias_v3 / cfg.v_pi});
    const double half_field = 0.5 * carrier.amplitude;

    SampledSignal field;
    field.sample_rate = drive1.sample_rate;
    field.start_time = drive1.start_time;
    field.samples.resize(drive1.size());
    for (std::size_t i = 0; i < drive1.size(); ++i)
    {
        const double v1 = drive1.samples[i].real();
        const double v2 = drive2.samples[i].real();
        field.samples[i] = half_field * (std::cos(a * (v1 + cfg.bias_v1)) * arm1 +
                                         std::cos(a * (v2 + cfg.bias_v2)) * arm2);
    }
    return field;
}

// Dual-parallel MZM biased as an IQ modulator (children at their null,
// parent at quadrature), driven by NRZ rails:
//
//   E(t) = (Ein/2) * [ sin(a I(t)) + j sin(a Q(t)) ]
//
// For |drive| <= v_pi the map from rail level to field is monotone; NRZ
// rails land on a scaled copy of the ideal constellation.
inline SampledSignal ydpmzm_field(const OpticalCarrier &carrier, const SampledSignal &i_wave,
                                  const SampledSignal &q_wave, const ModulatorConfig &cfg)
{
    validate_modulator(cfg);
    detail::require_same_grid(i_wave, q_wave, "ydpmzm_field");

    const double a = cfg.index_per_volt();
    const double half_field = 0.5 * carrier.amplitude;
    SampledSignal field;
    field.sample_rate = i_wave.sample_rate;
    field.start_time = i_wave.start_time;
    field.samples.resize(i_wave.size());
    for (std::size_t i = 0; i < i_wave.size(); ++i)
    {
        const double vi = i_wave.samples[i].real();
        const double vq = q_wave.samples[i].real();
        if (std::abs(vi) > cfg.v_pi || std::abs(vq) > cfg.v_pi)
            throw std::invalid_argument("ydpmzm_field: drive exceeds v_pi");
        field.samples[i] = half_field * cplx{std::sin(a * vi), std::sin(a * vq)};
    }
    return field;
}

// ---------------------------------------------------------------------------
// Combining and detection
// ---------------------------------------------------------------------------

// Polarization combiner: equal-split sum (ex + ey) / sqrt(2).
inline SampledSignal pol_combine(const SampledSignal &ex, const SampledSignal &ey)
{
    detail::require_same_grid(ex, ey, "pol_combine");
    SampledSignal out;
    out.sample_rate = ex.sample_rate;
    out.start_time = ex.start_time;
    out.samples.resize(ex.size());
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < ex.size(); ++i)
        out.samples[i] = (ex.samples[i] + ey.samples[i]) * inv_sqrt2;
    return out;
}

// Square-law photodiode after optical amplification: i(t) = R G^2 |E(t)|^2.
inline SampledSignal photodetect(const SampledSignal &field, const DetectorConfig &det)
{
    if (field.empty())
        throw std::invalid_argument("photodetect: empty input");
    if (det.responsivity <= 0.0 || det.edfa_gain <= 0.0)
        throw std::invalid_argument("photodetect: gains must be positive");

    const double g = det.responsivity * det.edfa_gain * det.edfa_gain;
    SampledSignal current;
    current.sample_rate = field.sample_rate;
    current.start_time = field.start_time;
    current.samples.resize(field.size());
    for (std::size_t i = 0; i < field.size(); ++i)
        current.samples[i] = cplx{g * std::norm(field.samples[i]), 0.0};
    return current;
}

// Transimpedance conversion for power measurements.
inline SampledSignal current_to_voltage(const SampledSignal &current, double load_ohms = 50.0)
{
    if (current.empty())
        throw std::invalid_argument("current_to_voltage: empty input");
    SampledSignal v = current;
    for (auto &s : v.samples)
        s *= load_ohms;
    return v;
}

// Electrical bandpass that isolates the chirp-carried joint signal from the
// photocurrent's baseband and harmonic terms.
inline SampledSignal extract_joint_signal(const SampledSignal &current, double f_lo = 7.91e9,
                                          double f_hi = 11.1e9, int num_taps = 1025)
{
    return apply_fir(current, design_kaiser_bandpass(f_lo, f_hi, num_taps, current.sample_rate));
}

// ---------------------------------------------------------------------------
// Reference transmitter models
// ---------------------------------------------------------------------------

// Ideal joint transmit waveform: a constant-envelope chirp whose phase is
// offset by the QPSK symbol phase,
//
//   x(t) = amp * g(t) * cos(Theta(t) + phi(t)),
//
// where g is the symbol envelope (constant during active intervals) and phi
// the symbol phase.  This is the first-order model of the photonic chain and
// doubles as the matched reference for de-chirping.
inline SampledSignal analytic_joint_signal_period(const LfmParams &lfm, const QpskFrame &frame,
                                                  double amp, double sample_rate, int period_idx)
{
    validate_lfm(lfm, sample_rate);
    if (period_idx < 0 || period_idx >= frame.num_periods)
        throw std::invalid_argument("analytic_joint_signal_period: period index out of range");

    const std::size_t n = detail::samples_per_period(lfm, sample_rate);
    const std::size_t active_n = detail::active_samples_per_period(lfm, sample_rate);

    SampledSignal out;
    out.sample_rate = sample_rate;
    out.start_time = static_cast<double>(period_idx) * lfm.period;
    out.samples.assign(n, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < active_n; ++i)
    {
        const int s = detail::symbol_of_sample(i, active_n, frame.symbols_per_chirp);
        const int sym = frame.symbol_index(period_idx, s);
        const double t = static_cast<double>(i) / sample_rate;
        out.samples[i] =
            cplx{amp * frame.envelope(sym) * std::cos(lfm.phase_at(t) + frame.phase(sym)), 0.0};
    }
    return out;
}

inline SampledSignal analytic_joint_signal(const LfmParams &lfm, const QpskFrame &frame, double amp,
                                           double sample_rate, int num_periods)
{
    if (num_periods < 1 || num_periods > frame.num_periods)
        throw std::invalid_argument("analytic_joint_signal: num_periods exceeds frame payload");
    SampledSignal out;
    out.sample_rate = sample_rate;
    for (int p = 0; p < num_periods; ++p)
    {
        const SampledSignal one = analytic_joint_signal_period(lfm, frame, amp, sample_rate, p);
        out.samples.insert(out.samples.end(), one.samples.begin(), one.samples.end());
    }
    return out;
}

// ---------------------------------------------------------------------------
// End-to-end photonic chain
// ---------------------------------------------------------------------------

struct PhotonicChainConfig {
    OpticalCarrier carrier;
    ModulatorConfig modulator = ModulatorConfig::cs_ssb_preset();
    DetectorConfig detector;
    double ebpf_lo = 7.91e9; // Hz
    double ebpf_hi = 11.1e9; // Hz
    int ebpf_taps = 1025;
};

// Full exact-field transmit chain for one period: chirp drives -> X-DPMZM,
// NRZ rails -> Y-DPMZM, polarization combine, photodetect, bandpass.  The
// result is the joint signal as a photocurrent (A).
inline SampledSignal exact_chain_joint_signal_period(const LfmParams &lfm, const QpskFrame &frame,
                                                     const PhotonicChainConfig &chain,
                                                     double sample_rate, int period_idx)
{
    if (period_idx < 0 || period_idx >= frame.num_periods)
        throw std::invalid_argument("exact_chain_joint_signal_period: period index out of range");

    auto [v_sin, v_cos] = gen_lfm_pair_period(lfm, sample_rate);

    // Rails for just this period: slice a single-period render of the frame.
    QpskFrame one = frame;
    one.num_periods = 1;
    const auto first = static_cast<std::size_t>(frame.symbol_index(period_idx, 0));
    const auto count = static_cast<std::size_t>(frame.symbols_per_chirp);
    one.i_bits.assign(frame.i_bits.begin() + static_cast<std::ptrdiff_t>(first),
                      frame.i_bits.begin() + static_cast<std::ptrdiff_t>(first + count));
    one.q_bits.assign(frame.q_bits.begin() + static_cast<std::ptrdiff_t>(first),
                      frame.q_bits.begin() + static_cast<std::ptrdiff_t>(first + count));
    auto [i_wave, q_wave] = render_iq(one, sample_rate, 1);

    const SampledSignal ex = xdpmzm_field(chain.carrier, v_sin, v_cos, chain.modulator);
    const SampledSignal ey = ydpmzm_field(chain.carrier, i_wave, q_wave, chain.modulator);
    const SampledSignal combined = pol_combine(ex, ey);
    const SampledSignal current = photodetect(combined, chain.detector);
    SampledSignal joint = extract_joint_signal(current, chain.ebpf_lo, chain.ebpf_hi, chain.ebpf_taps);
    joint.start_time = static_cast<double>(period_idx) * lfm.period;
    return joint;
}

inline SampledSignal exact_chain_joint_signal(const LfmParams &lfm, const QpskFrame &frame,
                                              const PhotonicChainConfig &chain, double sample_rate,
                                              int num_periods)
{
    if (num_periods < 1 || num_periods > frame.num_periods)
        throw std::invalid_argument("exact_chain_joint_signal: num_periods exceeds frame payload");
    SampledSignal out;
    out.sample_rate = sample_rate;
    for (int p = 0; p < num_periods; ++p)
    {
        const SampledSignal one = exact_chain_joint_signal_period(lfm, frame, chain, sample_rate, p);
        out.samples.insert(out.samples.end(), one.samples.begin(), one.samples.end());
    }
    return out;
}

// Amplitude of the first-order joint-signal term produced by the exact chain
// (photocurrent units), for scaling the analytic model to the chain output:
// per symbol rail level L, the cross term is
//   0.5 * R G^2 Ein^2 * J1(m1) * sin(m2 L) * sqrt(2) ... folded into g(t).
// Returned value multiplies g(t) = sqrt(2) L, i.e. amp such that
// xi(t) = amp * g(t) matches the chain's in-band envelope.
inline double exact_chain_small_signal_amp(const LfmParams &lfm, const PhotonicChainConfig &chain,
                                           double nrz_level)
{
    const double m1 = chain.modulator.drive_index(lfm.amplitude);
    const double a = chain.modulator.index_per_volt();
    const double ein = chain.carrier.amplitude;
    const double g2 = chain.detector.responsivity * chain.detector.edfa_gain * chain.detector.edfa_gain;
    // Cross-term amplitude per unit g(t): (1/4) m1_eff m2_eff G^2 Ein^2 with
    // the exact-field compressions J1 and sin folded in.
    const double m1_eff = 2.0 * std::cyl_bessel_j(1.0, m1);
    const double m2_eff = std::sin(a * nrz_level) / nrz_level;
    return 0.25 * g2 * ein * ein * m1_eff * m2_eff;
}

// ---------------------------------------------------------------------------
// Transmitter model selection
// ---------------------------------------------------------------------------

enum class TxModel {
    analytic,    // ideal phase-coded chirp (first-order link model)
    exact_chain, // full interferometric field chain
};

struct JointTxConfig {
    TxModel model = TxModel::analytic;
    double amp = 1.0; // analytic model amplitude per unit envelope
    PhotonicChainConfig chain;
};

inline SampledSignal joint_tx_period(const LfmParams &lfm, const QpskFrame &frame,
                                     const JointTxConfig &tx, double sample_rate, int period_idx)
{
    if (tx.model == TxModel::analytic)
        return analytic_joint_signal_period(lfm, frame, tx.amp, sample_rate, period_idx);
    return exact_chain_joint_signal_period(lfm, frame, tx.chain, sample_rate, period_idx);
}

} // namespace jcrsim

#endif
