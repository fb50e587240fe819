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

#ifndef JCRSIM_SCENARIO_HPP
#define JCRSIM_SCENARIO_HPP

#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "jcrsim/comm.hpp"
#include "jcrsim/photonic.hpp"
#include "jcrsim/radar.hpp"
#include "jcrsim/waveform.hpp"

namespace jcrsim {

// Parse or validation failure of a scenario file.  Messages carry
// "<origin>:<line>: " prefixes where a line is identifiable.
class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ExperimentKind {
    spectra,     // transmitter optical/electrical spectra
    ranging,     // single-pulse multi-target range profile
    isar,        // rotating-scene range-Doppler image
    loopback,    // end-to-end modem run with waveform/constellation artifacts
    evm_grid,    // EVM/BER over (bandwidth x bit rate) combinations
    evm_snr,     // EVM/BER versus channel SNR
    phase_sweep, // image contrast versus echo-delay / symbol-length ratio
};

inline std::string to_string(ExperimentKind k)
{
    switch (k)
    {
    case ExperimentKind::spectra: return "spectra";
    case ExperimentKind::ranging: return "ranging";
    case ExperimentKind::isar: return "isar";
    case ExperimentKind::loopback: return "loopback";
    case ExperimentKind::evm_grid: return "evm_grid";
    case ExperimentKind::evm_snr: return "evm_snr";
    case ExperimentKind::phase_sweep: return "phase_sweep";
    }
    return "unknown";
}

struct ScenarioWaveform {
    LfmParams lfm{8.5e9, 0.5e9, 4.0e-6, 0.95, 1.0}; // amplitude derived from link.m1
    double sample_rate = 40.0e9;
    double bit_rate = 105.26315789e6; // aggregate I+Q rate; 0 turns data off
    int num_periods = 1;
};

struct ScenarioLink {
    TxModel tx_model = TxModel::exact_chain;
    double v_pi = 5.0;
    double m1 = 0.3;       // chirp modulation index (X arm)
    double m2_level = 0.2; // NRZ rail modulation index (Y arm)
    double edfa_gain = 1.0;
    double responsivity = 1.0;
    double ebpf_lo = 7.91e9;
    double ebpf_hi = 11.1e9;
    int ebpf_taps = 1025;
};

struct ScenarioRadar {
    std::vector<Scatterer> scatterers;
    double standoff = 0.0;
    double omega = 0.0; // rad/s
    int num_pulses = 1;
    double elpf_cutoff = 1.4e9;
    int elpf_taps = 1025;
    double osc_rate = 20.0e6;
    Window window = Window::rect;
    int range_pad = 4;
    int doppler_pad = 4;
    double echo_scale = 1.0;
    std::vector<double> sweep_distances; // phase_sweep standoffs
    std::vector<double> sweep_bit_rates; // phase_sweep symbol grids
};

struct ScenarioComm {
    CommChannelConfig channel;
    long min_bits = 20000;
    std::vector<double> sweep_bandwidths;
    std::vector<double> sweep_bit_rates;
    std::vector<double> sweep_snrs_db;
};

struct ScenarioOutputs {
    std::string directory;          // empty -> "out/<name>"
    double dynamic_range_db = 80.0; // PGM mapping spans [-range, 0] dB
    double display_window = 0.5e-6; // seconds of baseband waveform to export
};

struct Scenario {
    std::string name;
    std::string description;
    ExperimentKind experiment = ExperimentKind::spectra;
    std::uint64_t seed = 1;
    ScenarioWaveform waveform;
    ScenarioLink link;
    ScenarioRadar radar;
    ScenarioComm comm;
    ScenarioOutputs outputs;
};

// ---------------------------------------------------------------------------
// Derived configs
// ---------------------------------------------------------------------------

// Chirp parameters with the drive amplitude implied by the modulation index.
inline LfmParams scenario_lfm(const Scenario &s)
{
    LfmParams lfm = s.waveform.lfm;
    lfm.amplitude = s.link.m1 * 2.0 * s.link.v_pi / M_PI;
    return lfm;
}

// NRZ rail voltage implied by the data modulation index.
inline double scenario_nrz_level(const Scenario &s)
{
    return s.link.m2_level * 2.0 * s.link.v_pi / M_PI;
}

inline PhotonicChainConfig scenario_chain(const Scenario &s)
{
    PhotonicChainConfig chain;
    chain.modulator = ModulatorConfig::cs_ssb_preset(s.link.v_pi);
    chain.detector.edfa_gain = s.link.edfa_gain;
    chain.detector.responsivity = s.link.responsivity;
    chain.ebpf_lo = s.link.ebpf_lo;
    chain.ebpf_hi = s.link.ebpf_hi;
    chain.ebpf_taps = s.link.ebpf_taps;
    return chain;
}

// Transmit model for the scenario.  The analytic model is scaled to the
// exact chain's small-signal first-order amplitude so either model feeds the
// rest of the pipeline at the same level.
inline JointTxConfig scenario_tx(const Scenario &s)
{
    JointTxConfig tx;
    tx.model = s.link.tx_model;
    tx.chain = scenario_chain(s);
    tx.amp = exact_chain_small_signal_amp(scenario_lfm(s), tx.chain, scenario_nrz_level(s));
    return tx;
}

inline RadarProcParams scenario_radar_proc(const Scenario &s)
{
    RadarProcParams p;
    p.elpf_cutoff = s.radar.elpf_cutoff;
    p.elpf_taps = s.radar.elpf_taps;
    p.osc_rate = s.radar.osc_rate;
    p.echo_scale = s.radar.echo_scale;
    return p;
}

inline TargetScene scenario_scene(const Scenario &s)
{
    TargetScene scene;
    scene.scatterers = s.radar.scatterers;
    scene.standoff = s.radar.standoff;
    scene.omega = s.radar.omega;
    return scene;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace detail {

inline std::string trim(const std::string &s)
{
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
        ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
        --b;
    return s.substr(a, b - a);
}

[[noreturn]] inline void scenario_fail(const std::string &origin, int line, const std::string &msg)
{
    throw ScenarioError(origin + ":" + std::to_string(line) + ": " + msg);
}

inline double parse_double_field(const std::string &origin, int line, const std::string &key,
                                 const std::string &value)
{
    const std::string v = trim(value);
    if (v.empty())
        scenario_fail(origin, line, "empty value for '" + key + "'");
    char *end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end != v.c_str() + v.size())
        scenario_fail(origin, line, "'" + key + "' expects a number, got '" + v + "'");
    return x;
}

inline long parse_int_field(const std::string &origin, int line, const std::string &key,
                            const std::string &value)
{
    const std::string v = trim(value);
    if (v.empty())
        scenario_fail(origin, line, "empty value for '" + key + "'");
    char *end = nullptr;
    const long x = std::strtol(v.c_str(), &end, 10);
    if (end != v.c_str() + v.size())
        scenario_fail(origin, line, "'" + key + "' expects an integer, got '" + v + "'");
    return x;
}

inline std::vector<double> parse_double_list(const std::string &origin, int line,
                                             const std::string &key, const std::string &value,
                                             std::size_t expected = 0)
{
    std::vector<double> out;
    std::string normalized = trim(value);
    std::replace(normalized.begin(), normalized.end(), ',', ' ');
    std::istringstream in(normalized);
    std::string tok;
    while (in >> tok)
    {
        char *end = nullptr;
        const double x = std::strtod(tok.c_str(), &end);
        if (end != tok.c_str() + tok.size())
            scenario_fail(origin, line, "'" + key + "' expects numbers, got '" + tok + "'");
        out.push_back(x);
    }
    if (out.empty())
        scenario_fail(origin, line, "empty value for '" + key + "'");
    if (expected != 0 && out.size() != expected)
        scenario_fail(origin, line, "'" + key + "' expects " + std::to_string(expected) +
                                        " values, got " + std::to_string(out.size()));
    return out;
}

inline ExperimentKind parse_experiment(const std::string &origin, int line, const std::string &v)
{
    if (v == "spectra") return ExperimentKind::spectra;
    if (v == "ranging") return ExperimentKind::ranging;
    if (v == "isar") return ExperimentKind::isar;
    if (v == "loopback") return ExperimentKind::loopback;
    if (v == "evm_grid") return ExperimentKind::evm_grid;
    if (v == "evm_snr") return ExperimentKind::evm_snr;
    if (v == "phase_sweep") return ExperimentKind::phase_sweep;
    scenario_fail(origin, line,
                  "unknown experiment '" + v +
                      "' (expected spectra, ranging, isar, loopback, evm_grid, evm_snr or "
                      "phase_sweep)");
}

inline TxModel parse_tx_model(const std::string &origin, int line, const std::string &v)
{
    if (v == "exact_chain") return TxModel::exact_chain;
    if (v == "analytic") return TxModel::analytic;
    scenario_fail(origin, line, "unknown tx_model '" + v + "' (expected exact_chain or analytic)");
}

inline Window parse_window(const std::string &origin, int line, const std::string &v)
{
    if (v == "rect") return Window::rect;
    if (v == "hann") return Window::hann;
    scenario_fail(origin, line, "unknown window '" + v + "' (expected rect or hann)");
}

// Applies one key=value pair; `seen` tracks non-repeatable keys.
inline void apply_scenario_key(Scenario &s, const std::string &section, const std::string &key,
                               const std::string &value, const std::string &origin, int line,
                               std::set<std::string> &seen)
{
    static const std::set<std::string> repeatable = {
        "radar.scatterer",    "radar.sweep_distance", "radar.sweep_bit_rate",
        "comm.sweep_bandwidth", "comm.sweep_bit_rate", "comm.sweep_snr_db",
    };
    const std::string full = section + "." + key;
    if (repeatable.find(full) == repeatable.end() && !seen.insert(full).second)
        scenario_fail(origin, line, "duplicate key '" + key + "' in section [" + section + "]");

    const auto num = [&]() { return parse_double_field(origin, line, key, value); };
    const auto integer = [&]() { return parse_int_field(origin, line, key, value); };

    if (section == "scenario")
    {
        if (key == "name") s.name = value;
        else if (key == "description") s.description = value;
        else if (key == "experiment") s.experiment = parse_experiment(origin, line, value);
        else if (key == "seed")
        {
            const long v = integer();
            if (v < 0)
                scenario_fail(origin, line, "seed must be non-negative");
            s.seed = static_cast<std::uint64_t>(v);
        }
        else
            scenario_fail(origin, line, "unknown key '" + key + "' in section [scenario]");
    }
    else if (section == "waveform")
    {
        if (key == "f0") s.waveform.lfm.f0 = num();
        else if (key == "bandwidth") s.waveform.lfm.bandwidth = num();
        else if (key == "period") s.waveform.lfm.period = num();
        else if (key == "duty") s.waveform.lfm.duty = num();
        else if (key == "sample_rate") s.waveform.sample_rate = num();
        else if (key == "bit_rate") s.waveform.bit_rate = num();
        else if (key == "num_periods") s.waveform.num_periods = static_cast<int>(integer());
        else
            scenario_fail(origin, line, "unknown key '" + key + "' in section [waveform]");
    }
    else if (section == "link")
    {
        if (key == "tx_model") s.link.tx_model = parse_tx_model(origin, line, value);
        else if (key == "v_pi") s.link.v_pi = num();
        else if (key == "m1") s.link.m1 = num();
        else if (key == "m2_level") s.link.m2_level = num();
        else if (key == "edfa_gain") s.link.edfa_gain = num();
        else if (key == "responsivity") s.link.responsivity = num();
        else if (key == "ebpf_lo") s.link.ebpf_lo = num();
        else if (key == "ebpf_hi") s.link.ebpf_hi = num();
        else if (key == "ebpf_taps") s.link.ebpf_taps = static_cast<int>(integer());
        else
            scenario_fail(origin, line, "unknown key '" + key + "' in section [link]");
    }
    else if (section == "radar")
    {
        if (key == "scatterer")
        {
            const auto v = parse_double_list(origin, line, key, value, 3);
            s.radar.scatterers.push_back(Scatterer{v[0], v[1], v[2]});
        }
        else if (key == "sweep_distance") s.radar.sweep_distances.push_back(num());
        else if (key == "sweep_bit_rate") s.radar.sweep_bit_rates.push_back(num());
        else if (key == "standoff") s.radar.standoff = num();
        else if (key == "omega") s.radar.omega = num();
        else if (key == "num_pulses") s.radar.num_pulses = static_cast<int>(integer());
        else if (key == "elpf_cutoff") s.radar.elpf_cutoff = num();
        else if (key == "elpf_taps") s.radar.elpf_taps = static_cast<int>(integer());
        else if (key == "osc_rate") s.radar.osc_rate = num();
        else if (key == "window") s.radar.window = parse_window(origin, line, value);
        else if (key == "range_pad") s.radar.range_pad = static_cast<int>(integer());
        else if (key == "doppler_pad") s.radar.doppler_pad = static_cast<int>(integer());
        else if (key == "echo_scale") s.radar.echo_scale = num();
        else
            scenario_fail(origin, line, "unknown key '" + key + "' in section [radar]");
    }
    else if (section == "comm")
    {
        if (key == "lo_frequency") s.comm.channel.lo_frequency = num();
        else if (key == "if_rate") s.comm.channel.if_rate = num();
        else if (key == "if_passband") s.comm.channel.if_passband = num();
        else if (key == "demod_cutoff") s.comm.channel.demod_cutoff = num();
        else if (key == "demod_atten_db") s.comm.channel.demod_atten_db = num();
        else if (key == "demod_taps") s.comm.channel.demod_taps = static_cast<int>(integer());
        else if (key == "snr_db") s.comm.channel.snr_db = num();
        else if (key == "path_scale") s.comm.channel.path_scale = num();
        else if (key == "min_bits") s.comm.min_bits = integer();
        else if (key == "sweep_bandwidth") s.comm.sweep_bandwidths.push_back(num());
        else if (key == "sweep_bit_rate") s.comm.sweep_bit_rates.push_back(num());
        else if (key == "sweep_snr_db") s.comm.sweep_snrs_db.push_back(num());
        else
            scenario_fail(origin, line, "unknown key '" + key + "' in section [comm]");
    }
    else if (section == "outputs")
    {
        if (key == "directory") s.outputs.directory = value;
        else if (key == "dynamic_range_db") s.outputs.dynamic_range_db = num();
        else if (key == "display_window") s.outputs.display_window = num();
        else
            scenario_fail(origin, line, "unknown key '" + key + "' in section [outputs]");
    }
    else
    {
        scenario_fail(origin, line, "unknown section [" + section + "]");
    }
}

} // namespace detail

// Parses scenario text in the line-oriented format:
//   [section]
//   key = value
// '#' or ';' as the first non-blank character starts a comment line.
// `origin` labels error messages (a file path or a builtin name).
inline Scenario parse_scenario_text(const std::string &text, const std::string &origin)
{
    Scenario s;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    bool named = false;
    int line_no = 0;
    while (std::getline(in, raw))
    {
        ++line_no;
        const std::string line = detail::trim(raw);
        if (line.empty() || line[0] == '#' || line[0] == ';')
            continue;
        if (line.front() == '[')
        {
            if (line.back() != ']' || line.size() < 3)
                detail::scenario_fail(origin, line_no, "malformed section header '" + line + "'");
            section = detail::trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            detail::scenario_fail(origin, line_no, "expected 'key = value', got '" + line + "'");
        if (section.empty())
            detail::scenario_fail(origin, line_no, "key outside of any [section]");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty())
            detail::scenario_fail(origin, line_no, "missing key before '='");
        detail::apply_scenario_key(s, section, key, value, origin, line_no, seen);
        if (section == "scenario" && key == "name")
            named = true;
    }
    if (!named)
        throw ScenarioError(origin + ": missing required key 'name' in section [scenario]");
    return s;
}

inline Scenario load_scenario_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ScenarioError(path + ": cannot open scenario file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str(), path);
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

// Cross-checks the whole scenario before execution starts; throws one
// ScenarioError listing every problem found.
inline void validate_scenario(const Scenario &s)
{
    std::vector<std::string> problems;
    const auto check = [&](const std::function<void()> &fn) {
        try
        {
            fn();
        }
        catch (const std::exception &e)
        {
            problems.emplace_back(e.what());
        }
    };

    if (s.name.empty())
        problems.emplace_back("scenario name must not be empty");
    if (s.link.v_pi <= 0.0)
        problems.emplace_back("v_pi must be positive");
    if (s.link.m1 <= 0.0 || s.link.m1 > M_PI / 2.0)
        problems.emplace_back("m1 must lie in (0, pi/2] so the drive stays within v_pi");
    if (s.link.m2_level <= 0.0 || s.link.m2_level > M_PI / 2.0)
        problems.emplace_back("m2_level must lie in (0, pi/2] so the rails stay within v_pi");
    if (s.link.ebpf_taps < 3 || s.link.ebpf_taps % 2 == 0)
        problems.emplace_back("ebpf_taps must be odd and >= 3");
    if (s.outputs.dynamic_range_db <= 0.0)
        problems.emplace_back("dynamic_range_db must be positive");

    const LfmParams lfm = scenario_lfm(s);
    check([&] { validate_lfm(lfm, s.waveform.sample_rate); });

    const bool uses_data = s.waveform.bit_rate > 0.0;
    if (uses_data)
        check([&] { (void)gen_qpsk_frame(s.waveform.bit_rate, lfm, 1, s.seed); });
    if (s.experiment == ExperimentKind::spectra && !uses_data)
        problems.emplace_back("spectra experiment requires a positive bit_rate");

    const bool radar_like = s.experiment == ExperimentKind::ranging ||
                            s.experiment == ExperimentKind::isar;
    if (radar_like)
    {
        if (s.radar.scatterers.empty())
            problems.emplace_back("radar experiment requires at least one scatterer");
        if (s.radar.num_pulses < 1)
            problems.emplace_back("num_pulses must be >= 1");
        for (const auto &sc : s.radar.scatterers)
        {
            const double reach = s.radar.standoff + std::hypot(sc.x, sc.y);
            const double delay = 2.0 * reach / kSpeedOfLight;
            const double dead = (1.0 - lfm.duty) * lfm.period;
            if (delay > dead)
            {
                problems.emplace_back(
                    "target beyond unambiguous range: round-trip delay " + std::to_string(delay) +
                    " s exceeds the dead interval " + std::to_string(dead) + " s");
                break;
            }
        }
        if (s.radar.osc_rate <= 0.0)
            problems.emplace_back("osc_rate must be positive");
        if (s.radar.elpf_cutoff <= 0.0)
            problems.emplace_back("elpf_cutoff must be positive");
        if (s.radar.elpf_taps < 3 || s.radar.elpf_taps % 2 == 0)
            problems.emplace_back("elpf_taps must be odd and >= 3");
    }
    if (s.experiment == ExperimentKind::isar)
    {
        if (s.radar.omega <= 0.0)
            problems.emplace_back("isar requires a positive rotation rate omega");
        if (s.radar.num_pulses < 16)
            problems.emplace_back("isar requires num_pulses >= 16");
        if (s.radar.range_pad < 1 || s.radar.doppler_pad < 1)
            problems.emplace_back("range_pad and doppler_pad must be >= 1");
    }

    const bool comm_like = s.experiment == ExperimentKind::loopback ||
                           s.experiment == ExperimentKind::evm_grid ||
                           s.experiment == ExperimentKind::evm_snr;
    if (comm_like)
    {
        if (!uses_data)
            problems.emplace_back("communication experiment requires a positive bit_rate");
        check([&] { validate_comm_config(s.comm.channel, lfm, s.waveform.sample_rate); });
        if (s.comm.min_bits < 100)
            problems.emplace_back("min_bits must be >= 100");
    }
    if (s.experiment == ExperimentKind::evm_grid)
    {
        if (s.comm.sweep_bandwidths.empty() || s.comm.sweep_bit_rates.empty())
            problems.emplace_back("evm_grid requires sweep_bandwidth and sweep_bit_rate entries");
        for (const double bw : s.comm.sweep_bandwidths)
        {
            LfmParams v = lfm;
            v.bandwidth = bw;
            check([&] { validate_lfm(v, s.waveform.sample_rate); });
        }
    }
    if (s.experiment == ExperimentKind::evm_snr && s.comm.sweep_snrs_db.empty())
        problems.emplace_back("evm_snr requires sweep_snr_db entries");
    if (s.experiment == ExperimentKind::phase_sweep)
    {
        if (s.radar.sweep_distances.empty() || s.radar.sweep_bit_rates.empty())
            problems.emplace_back(
                "phase_sweep requires sweep_distance and sweep_bit_rate entries");
        if (s.radar.omega <= 0.0)
            problems.emplace_back("phase_sweep requires a positive rotation rate omega");
        if (s.radar.num_pulses < 16)
            problems.emplace_back("phase_sweep requires num_pulses >= 16");
        for (const double d : s.radar.sweep_distances)
            if (d <= 0.0)
            {
                problems.emplace_back("sweep_distance entries must be positive");
                break;
            }
        for (const double rb : s.radar.sweep_bit_rates)
            check([&] { (void)gen_qpsk_frame(rb, lfm, 1, s.seed); });
    }

    if (!problems.empty())
    {
        std::string msg = "scenario '" + s.name + "' failed validation:";
        for (const auto &p : problems)
            msg += "\n  - " + p;
        throw ScenarioError(msg);
    }
}

// ---------------------------------------------------------------------------
// Builtin scenarios
// ---------------------------------------------------------------------------

struct BuiltinScenario {
    const char *name;
    const char *text;
};

// The builtin catalogue reproduces the experiments of the reference paper;
// descriptions cite the figure each one reproduces.
inline const std::vector<BuiltinScenario> &builtin_scenarios()
{
    static const std::vector<BuiltinScenario> catalogue = {
        {"fig2_spectra", R"(# Transmitter spectra, B = 0.5 GHz, data on.
[scenario]
name = fig2_spectra
description = Optical and electrical spectra of the photonic transmitter (B = 0.5 GHz, QPSK data on), reproducing Fig. 2(a)-(c): carrier-suppressed single sideband plus the 8.5-9 GHz joint band.
experiment = spectra
seed = 1

[waveform]
f0 = 8.5e9
bandwidth = 0.5e9
period = 4e-6
duty = 0.95
sample_rate = 40e9
bit_rate = 105.26315789e6
num_periods = 1

[link]
tx_model = exact_chain
v_pi = 5
m1 = 0.3
m2_level = 0.2

[outputs]
directory = out/fig2_spectra
)"},
        {"fig3c", R"(# Two-target ranging, B = 0.5 GHz.
[scenario]
name = fig3c
description = Two-target ranging at 0.96 m and 1.29 m with B = 0.5 GHz and data on, reproducing Fig. 3(c): beat peaks near 0.84 and 1.13 MHz, distance error below 4 cm.
experiment = ranging
seed = 1

[waveform]
f0 = 8.5e9
bandwidth = 0.5e9
period = 4e-6
duty = 0.95
sample_rate = 40e9
bit_rate = 105.26315789e6

[link]
tx_model = exact_chain

[radar]
scatterer = 0 0.96 1
scatterer = 0 1.29 1
standoff = 0
omega = 0
num_pulses = 1
window = rect

[outputs]
directory = out/fig3c
)"},
        {"fig3d", R"(# Two-target ranging, B = 1 GHz.
[scenario]
name = fig3d
description = Two-target ranging at 0.96 m and 1.13 m with B = 1 GHz and data on, reproducing Fig. 3(d): closer targets resolved by the wider bandwidth, distance error below 4 cm.
experiment = ranging
seed = 1

[waveform]
f0 = 8.5e9
bandwidth = 1e9
period = 4e-6
duty = 0.95
sample_rate = 40e9
bit_rate = 105.26315789e6

[link]
tx_model = exact_chain

[radar]
scatterer = 0 0.96 1
scatterer = 0 1.13 1
standoff = 0
omega = 0
num_pulses = 1
window = rect

[outputs]
directory = out/fig3d
)"},
        {"fig4c", R"(# ISAR image, B = 1 GHz, three reflectors on a turntable.
[scenario]
name = fig4c
description = ISAR image of three point reflectors on a turntable with B = 1 GHz, reproducing Fig. 4(c): predicted resolution 14.99 cm (range) by 3.25 cm (cross-range).
experiment = isar
seed = 1

[waveform]
f0 = 8.5e9
bandwidth = 1e9
period = 4e-6
duty = 0.95
sample_rate = 40e9
bit_rate = 105.26315789e6

[link]
tx_model = analytic

[radar]
scatterer = 0 0 1
scatterer = 0.10 0.02 1
scatterer = -0.10 -0.02 1
standoff = 1.0
omega = 250.22536058
num_pulses = 512
window = hann
range_pad = 4
doppler_pad = 4

[outputs]
directory = out/fig4c
dynamic_range_db = 40
)"},
        {"fig4e", R"(# ISAR image, B = 0.5 GHz, three reflectors on a turntable.
[scenario]
name = fig4e
description = ISAR image of three point reflectors on a turntable with B = 0.5 GHz, reproducing Fig. 4(e): predicted resolution 29.98 cm (range) by 6.70 cm (cross-range).
experiment = isar
seed = 1

[waveform]
f0 = 8.5e9
bandwidth = 0.5e9
period = 4e-6
duty = 0.95
sample_rate = 40e9
bit_rate = 105.26315789e6

[link]
tx_model = analytic

[radar]
scatterer = 0 0 1
scatterer = 0.20 0.10 1
scatterer = -0.20 -0.10 1
standoff = 1.0
omega = 124.84591551
num_pulses = 512
window = hann
range_pad = 4
doppler_pad = 4

[outputs]
directory = out/fig4e
dynamic_range_db = 40
)"},
        {"fig5_loopback", R"(# End-to-end modem loopback, noiseless.
[scenario]
name = fig5_loopback
description = Noiseless end-to-end QPSK loopback at 105.26 Mbit/s over B = 0.5 GHz, reproducing Fig. 5: recovered I/Q baseband overlays the transmitted streams and BER is zero.
experiment = loopback
seed = 1

[waveform]
f0 = 8.5e9
bandwidth = 0.5e9
period = 4e-6
duty = 0.95
sample_rate = 40e9
bit_rate = 105.26315789e6
num_periods = 10

[link]
tx_model = exact_chain

[comm]
lo_frequency = 8e9
if_rate = 10e9
snr_db = inf

[outputs]
directory = out/fig5_loopback
display_window = 0.5e-6
)"},
        {"fig6_evm_grid", R"(# EVM/BER over the bandwidth x bit-rate grid, noiseless.
[scenario]
name = fig6_evm_grid
description = EVM, BER and constellations over the four (bandwidth, bit rate) combinations of Fig. 6 - {0.5, 1} GHz x {105.26, 210.53} Mbit/s - run noiseless over at least 1e5 bits each.
experiment = evm_grid
seed = 1

[waveform]
f0 = 8.5e9
period = 4e-6
duty = 0.95
sample_rate = 40e9
bit_rate = 105.26315789e6

[link]
tx_model = exact_chain

[comm]
lo_frequency = 8e9
if_rate = 10e9
snr_db = inf
min_bits = 100000
sweep_bandwidth = 0.5e9
sweep_bandwidth = 1e9
sweep_bit_rate = 105.26315789e6
sweep_bit_rate = 210.52631579e6

[outputs]
directory = out/fig6_evm_grid
)"},
        {"fig7_evm_vs_snr", R"(# EVM versus channel SNR.
[scenario]
name = fig7_evm_vs_snr
description = EVM versus channel SNR at B = 0.5 GHz and 105.26 Mbit/s, standing in for the received-power sweep of Fig. 7: the receiver noise floor maps received power onto SNR.
experiment = evm_snr
seed = 1

[waveform]
f0 = 8.5e9
bandwidth = 0.5e9
period = 4e-6
duty = 0.95
sample_rate = 40e9
bit_rate = 105.26315789e6

[link]
tx_model = exact_chain

[comm]
lo_frequency = 8e9
if_rate = 10e9
min_bits = 100000
sweep_bandwidth = 0.5e9
sweep_bit_rate = 105.26315789e6
sweep_snr_db = 30
sweep_snr_db = 25
sweep_snr_db = 20
sweep_snr_db = 15
sweep_snr_db = 10

[outputs]
directory = out/fig7_evm_vs_snr
)"},
        {"sec35_phase_sweep", R"(# Image contrast versus echo-delay / symbol-length ratio.
[scenario]
name = sec35_phase_sweep
description = Image contrast versus the ratio of echo delay to symbol length: the data phase degrades the image once the round-trip delay approaches the symbol length, at both symbol grids.
experiment = phase_sweep
seed = 1

[waveform]
f0 = 8.5e9
bandwidth = 1e9
period = 4e-6
duty = 0.95
sample_rate = 40e9

[link]
tx_model = analytic

[radar]
omega = 195.3125
num_pulses = 128
window = hann
# 40 MS/s keeps the farthest sweep point (beat 10 MHz) well inside the
# de-chirped Nyquist band.
osc_rate = 40e6
sweep_distance = 0.14240025
sweep_distance = 0.8544015
sweep_distance = 2.848005
sweep_distance = 5.69601
sweep_bit_rate = 105.26315789e6
sweep_bit_rate = 210.52631579e6

[outputs]
directory = out/sec35_phase_sweep
)"},
    };
    return catalogue;
}

inline bool is_builtin_scenario(const std::string &name)
{
    for (const auto &b : builtin_scenarios())
        if (name == b.name)
            return true;
    return false;
}

// Parses (but does not validate) a builtin scenario by name.
inline Scenario load_builtin_scenario(const std::string &name)
{
    for (const auto &b : builtin_scenarios())
        if (name == b.name)
            return parse_scenario_text(b.text, std::string("builtin:") + b.name);
    std::string names;
    for (const auto &b : builtin_scenarios())
    {
        if (!names.empty())
            names += ", ";
        names += b.name;
    }
    throw ScenarioError("unknown builtin scenario '" + name + "' (available: " + names + ")");
}

} // namespace jcrsim

#endif // JCRSIM_SCENARIO_HPP
