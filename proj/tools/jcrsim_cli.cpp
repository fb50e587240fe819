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
//
// Command-line scenario runner:
//   jcrsim run <file-or-builtin>      execute a scenario, write all artifacts
//   jcrsim list                       list builtin scenarios
//   jcrsim describe <builtin>         show a builtin's description and text
//   jcrsim export <file-or-builtin>   execute and write one artifact format
//
// Exit codes: 0 success, 2 parse/validation error, 3 runtime error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "jcrsim/runner.hpp"
#include "jcrsim/scenario.hpp"

namespace {

struct GlobalFlags {
    std::optional<std::uint64_t> seed;
    std::optional<double> sample_rate;
    std::optional<std::string> out_dir;
    int threads = 1;
};

void add_global_flags(CLI::App *cmd, GlobalFlags &g)
{
    cmd->add_option("--seed", [&g](const CLI::results_t &res) {
           g.seed = static_cast<std::uint64_t>(std::stoull(res[0]));
           return true;
       },
       "Override the scenario seed");
    cmd->add_option("--sample-rate", [&g](const CLI::results_t &res) {
           g.sample_rate = std::stod(res[0]);
           return true;
       },
       "Override the simulation sample rate in Hz");
    cmd->add_option("--out-dir", [&g](const CLI::results_t &res) {
           g.out_dir = res[0];
           return true;
       },
       "Override the output directory");
    cmd->add_option("--threads", g.threads, "Worker threads for per-pulse/per-period loops")
        ->check(CLI::Range(1, 256));
}

jcrsim::Scenario load_by_name_or_path(const std::string &ref)
{
    if (jcrsim::is_builtin_scenario(ref))
        return jcrsim::load_builtin_scenario(ref);
    if (!std::filesystem::exists(ref))
        throw jcrsim::ScenarioError("'" + ref +
                                    "' is neither a scenario file nor a builtin scenario name");
    return jcrsim::load_scenario_file(ref);
}

jcrsim::RunOptions to_run_options(const GlobalFlags &g)
{
    jcrsim::RunOptions opts;
    opts.seed = g.seed;
    opts.sample_rate = g.sample_rate;
    opts.out_dir = g.out_dir;
    opts.threads = g.threads;
    return opts;
}

int run_and_export(const std::string &ref, const GlobalFlags &g, const std::string &format)
{
    const jcrsim::Scenario scenario = load_by_name_or_path(ref);
    const jcrsim::ResultBundle bundle = jcrsim::run_scenario(scenario, to_run_options(g));
    const auto written = jcrsim::export_artifacts(bundle, format);
    std::cout << "scenario " << bundle.scenario.name << " (seed " << bundle.scenario.seed
              << ") completed in " << jcrsim::detail::fmt(bundle.wall_time_s, "%.2f") << " s\n";
    for (const auto &p : written)
        std::cout << "  wrote " << p << "\n";
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"jcrsim - joint chirp-radar/communication simulator"};
    app.require_subcommand(1);

    GlobalFlags flags;
    std::string scenario_ref;
    std::string describe_name;
    std::string export_format;

    CLI::App *run_cmd = app.add_subcommand("run", "Execute a scenario and write its artifacts");
    run_cmd->add_option("scenario", scenario_ref, "Scenario file path or builtin name")->required();
    add_global_flags(run_cmd, flags);

    CLI::App *list_cmd = app.add_subcommand("list", "List builtin scenarios");

    CLI::App *describe_cmd = app.add_subcommand("describe", "Describe a builtin scenario");
    describe_cmd->add_option("name", describe_name, "Builtin scenario name")->required();

    CLI::App *export_cmd =
        app.add_subcommand("export", "Execute a scenario and write one artifact format");
    export_cmd->add_option("scenario", scenario_ref, "Scenario file path or builtin name")
        ->required();
    export_cmd->add_option("--format", export_format, "Artifact format to write")
        ->required()
        ->check(CLI::IsMember({"csv", "pgm", "json"}));
    add_global_flags(export_cmd, flags);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try
    {
        if (list_cmd->parsed())
        {
            for (const auto &b : jcrsim::builtin_scenarios())
            {
                const jcrsim::Scenario s =
                    jcrsim::parse_scenario_text(b.text, std::string("builtin:") + b.name);
                std::cout << b.name << " [" << jcrsim::to_string(s.experiment) << "]\n    "
                          << s.description << "\n";
            }
            return 0;
        }
        if (describe_cmd->parsed())
        {
            const jcrsim::Scenario s = jcrsim::load_builtin_scenario(describe_name);
            std::cout << "name:        " << s.name << "\n"
                      << "experiment:  " << jcrsim::to_string(s.experiment) << "\n"
                      << "description: " << s.description << "\n"
                      << "seed:        " << s.seed << "\n\n";
            for (const auto &b : jcrsim::builtin_scenarios())
                if (describe_name == b.name)
                    std::cout << b.text;
            return 0;
        }
        if (run_cmd->parsed())
            return run_and_export(scenario_ref, flags, "");
        if (export_cmd->parsed())
            return run_and_export(scenario_ref, flags, export_format);
        return 2;
    }
    catch (const jcrsim::ScenarioError &e)
    {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "runtime error: " << e.what() << "\n";
        return 3;
    }
}
