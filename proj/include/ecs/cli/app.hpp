// Copyright 2026 The ecsmetro Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ecs/cli/commands.hpp"
#include "ecs/cli/table.hpp"

namespace ecs::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitUsage = 2;

namespace detail {

struct RawOptions {
    std::vector<double> alpha;
    std::string alpha_range;
    std::string family;
    std::vector<std::size_t> n;
    std::vector<double> energy;
    std::string energy_range;
    std::vector<double> epsilon;
    std::string epsilon_range;
    std::string priors = "0.5,0.5";
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    std::string format = "csv";
    std::string output;
    bool force_displaces_vacuum = false;
    std::string demo_clicks;
};

inline void add_common_options(CLI::App& sub, RawOptions& o) {
    sub.add_option("--alpha", o.alpha, "Coherent amplitude(s), comma separated")->delimiter(',');
    sub.add_option("--alpha-range", o.alpha_range, "Amplitude grid start:stop:count[:log]");
    sub.add_option("--family", o.family,
                   "State families: quasiBell1..4, joo, noon, coherent (comma or + separated)");
    sub.add_option("--n", o.n, "NOON photon number(s)")->delimiter(',');
    sub.add_option("--energy", o.energy, "Total mean photon number(s)")->delimiter(',');
    sub.add_option("--energy-range", o.energy_range, "Energy grid start:stop:count[:log]");
    sub.add_option("--epsilon", o.epsilon, "Energy shift(s) of the force")->delimiter(',');
    sub.add_option("--epsilon-range", o.epsilon_range, "Energy-shift grid start:stop:count[:log]");
    sub.add_option("--priors", o.priors, "A priori probabilities p0,p1");
    sub.add_option("--trials", o.trials, "Monte Carlo trials (0 disables)");
    sub.add_option("--seed", o.seed, "Monte Carlo seed");
    sub.add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
    sub.add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub.add_option("--output", o.output, "Output file (default: standard output)");
    sub.add_flag("--force-displaces-vacuum", o.force_displaces_vacuum,
                 "Let the force displace the vacuum branch too (extension)");
    sub.add_option("--demo-clicks", o.demo_clicks, "Click pattern for the bank decision, e.g. 0,1,0");
}

inline std::vector<double> merge_grid(const std::vector<double>& list, const std::string& range) {
    std::vector<double> out = list;
    if (!range.empty()) {
        const auto v = parse_range(range).values();
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

inline RunConfig to_config(const std::string& command, const RawOptions& o) {
    RunConfig c;
    c.command = command;
    if (!o.family.empty()) {
        c.families = parse_families(o.family);
    }
    c.alphas = merge_grid(o.alpha, o.alpha_range);
    c.photons = o.n;
    c.energies = merge_grid(o.energy, o.energy_range);
    c.epsilons = merge_grid(o.epsilon, o.epsilon_range);
    const auto p = split(o.priors, ",");
    if (p.size() != 2) {
        throw UsageError("--priors expects p0,p1");
    }
    c.prior0 = parse_number(p[0], "--priors");
    c.prior1 = parse_number(p[1], "--priors");
    if (!(c.prior0 >= 0.0 && c.prior1 >= 0.0) || std::abs(c.prior0 + c.prior1 - 1.0) > 1e-12) {
        throw UsageError("--priors must be non-negative and sum to 1");
    }
    c.trials = o.trials;
    c.seed = o.seed;
    c.jobs = o.jobs;
    c.format = o.format == "json" ? Format::json : Format::csv;
    c.output = o.output;
    c.force_displaces_vacuum = o.force_displaces_vacuum;
    if (!o.demo_clicks.empty()) {
        c.demo_clicks = parse_clicks(o.demo_clicks);
    }
    return c;
}

}  // namespace detail

inline void write_table(const Table& t, Format f, std::ostream& out) {
    if (f == Format::json) {
        write_json(t, out);
    } else {
        write_csv(t, out);
    }
}

/// Full command line entry point; args excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Entangled coherent state metrology: phase bounds, entanglement and force detection"};
    app.name("ecsmetro");
    app.require_subcommand(1);
    detail::RawOptions raw;
    const char* names[][2] = {
        {"phase-bound", "Phase-estimation bounds per family and amplitude"},
        {"compare-energy", "All families at equal total mean photon number"},
        {"entanglement", "Quasi-Bell Gram entry and entanglement of formation"},
        {"force-detect", "Force-probe overlap and Helstrom error vs coherent baseline"},
        {"bank-design", "Matched parallel probe bank for unknown shifts"},
    };
    for (const auto& [name, help] : names) {
        detail::add_common_options(*app.add_subcommand(name, help), raw);
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "ecsmetro: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        const auto config = detail::to_config(app.get_subcommands().front()->get_name(), raw);
        const auto result = run_command(config);
        if (config.output.empty()) {
            write_table(result.table, config.format, out);
        } else {
            std::ofstream file(config.output, std::ios::binary);
            if (!file) {
                err << "ecsmetro: cannot open " << config.output << '\n';
                return kExitComputation;
            }
            write_table(result.table, config.format, file);
        }
        if (!result.table.rows.empty() && result.failed_rows == result.table.rows.size()) {
            err << "ecsmetro: every row failed\n";
            return kExitComputation;
        }
        return kExitOk;
    } catch (const UsageError& e) {
        err << "ecsmetro: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "ecsmetro: " << e.what() << '\n';
        return kExitComputation;
    }
}

}  // namespace ecs::cli
