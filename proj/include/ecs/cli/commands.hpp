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

// Report generators behind the ecsmetro subcommands. Each command turns a
// RunConfig into a Table; rows are computed independently (optionally on
// several threads) and always emitted in input order.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "ecs/cli/table.hpp"
#include "ecs/coherent.hpp"
#include "ecs/detection.hpp"
#include "ecs/errors.hpp"
#include "ecs/estimation.hpp"
#include "ecs/fock.hpp"

namespace ecs::cli {

/// Bad flags or flag combinations; exit code 2.
class UsageError : public Error {
   public:
    using Error::Error;
};

enum class Format { csv, json };

/// start:stop:count[:log]
struct Range {
    double start = 0.0;
    double stop = 0.0;
    std::size_t count = 1;
    bool log = false;

    std::vector<double> values() const {
        std::vector<double> v;
        v.reserve(count);
        for (std::size_t i = 0; i < count; ++i) {
            const double f = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
            v.push_back(log ? start * std::pow(stop / start, f) : start + (stop - start) * f);
        }
        if (count > 1) {
            v.back() = stop;
        }
        return v;
    }
};

namespace detail {

inline std::vector<std::string> split(std::string_view s, std::string_view delims) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (delims.find(c) != std::string_view::npos) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline double parse_number(const std::string& s, std::string_view what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) {
            throw UsageError("");
        }
        return v;
    } catch (const std::exception&) {
        throw UsageError("invalid number '" + s + "' in " + std::string(what));
    }
}

}  // namespace detail

inline Range parse_range(std::string_view text) {
    const auto parts = detail::split(text, ":");
    if (parts.size() != 3 && parts.size() != 4) {
        throw UsageError("range must be start:stop:count[:log], got '" + std::string(text) + "'");
    }
    Range r;
    r.start = detail::parse_number(parts[0], "range start");
    r.stop = detail::parse_number(parts[1], "range stop");
    const double count = detail::parse_number(parts[2], "range count");
    if (count < 1.0 || count != std::floor(count)) {
        throw UsageError("range count must be a positive integer");
    }
    r.count = static_cast<std::size_t>(count);
    if (parts.size() == 4) {
        if (parts[3] == "log") {
            r.log = true;
        } else if (parts[3] != "linear") {
            throw UsageError("range spacing must be 'linear' or 'log'");
        }
    }
    if (r.start > r.stop) {
        throw UsageError("range start must not exceed stop");
    }
    if (r.log && !(r.start > 0.0)) {
        throw UsageError("log range needs a positive start");
    }
    return r;
}

/// Comma or plus separated family names.
inline std::vector<Family> parse_families(std::string_view text) {
    std::vector<Family> out;
    for (const auto& name : detail::split(text, ",+")) {
        const auto f = parse_family(name);
        if (!f) {
            throw UsageError("unknown family '" + name +
                             "' (expected quasiBell1..4, joo, noon or coherent)");
        }
        out.push_back(*f);
    }
    return out;
}

/// "0,1,0" or "false,true,false".
inline std::vector<char> parse_clicks(std::string_view text) {
    std::vector<char> out;
    for (const auto& tok : detail::split(text, ",")) {
        if (tok == "1" || tok == "true") {
            out.push_back(1);
        } else if (tok == "0" || tok == "false") {
            out.push_back(0);
        } else {
            throw UsageError("click values must be 0/1 or true/false, got '" + tok + "'");
        }
    }
    return out;
}

struct RunConfig {
    std::string command;
    std::vector<Family> families;
    std::vector<double> alphas;
    std::vector<std::size_t> photons;  // NOON N
    std::vector<double> energies;
    std::vector<double> epsilons;
    double prior0 = 0.5;
    double prior1 = 0.5;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    Format format = Format::csv;
    std::string output;  // empty: standard output
    bool force_displaces_vacuum = false;
    std::vector<char> demo_clicks;
};

struct CommandResult {
    Table table;
    std::size_t failed_rows = 0;
};

namespace detail {

using Row = std::vector<Cell>;

struct RowOutcome {
    Row row;
    bool failed = false;
};

/// Evaluates fn(0..n-1) on up to `jobs` threads; results keep index order.
inline std::vector<RowOutcome> parallel_rows(std::size_t n, unsigned jobs,
                                             const std::function<RowOutcome(std::size_t)>& fn) {
    std::vector<RowOutcome> out(n);
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (jobs == 1) {
        for (std::size_t i = 0; i < n; ++i) {
            out[i] = fn(i);
        }
        return out;
    }
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < jobs; ++w) {
        workers.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += jobs) {
                out[i] = fn(i);
            }
        });
    }
    return out;
}

inline CommandResult collect(std::vector<std::string> columns, std::vector<RowOutcome> rows) {
    CommandResult r;
    r.table.columns = std::move(columns);
    for (auto& o : rows) {
        r.failed_rows += o.failed ? 1 : 0;
        r.table.rows.push_back(std::move(o.row));
    }
    return r;
}

inline Cell opt(const std::optional<double>& v) {
    return v ? Cell(*v) : Cell(std::monostate{});
}

inline Cell integer(std::size_t v) { return Cell(static_cast<std::int64_t>(v)); }

/// Column values by name; unset columns stay empty.
class RowBuilder {
   public:
    explicit RowBuilder(const std::vector<std::string>& columns)
        : columns_(columns), row_(columns.size()) {}

    RowBuilder& set(std::string_view column, Cell value) {
        const auto it = std::find(columns_.begin(), columns_.end(), column);
        if (it == columns_.end()) {
            throw std::logic_error("unknown column " + std::string(column));
        }
        row_[static_cast<std::size_t>(it - columns_.begin())] = std::move(value);
        return *this;
    }

    Row take() { return std::move(row_); }

   private:
    const std::vector<std::string>& columns_;
    Row row_;
};

inline const std::vector<std::string>& phase_columns() {
    static const std::vector<std::string> cols = {
        "energy",          "family",           "alpha",       "alpha_abs",   "n",
        "mean_photons_total", "qfi_symbolic",  "qfi_oracle",  "delta_theta_paper",
        "delta_theta_oracle", "deviation",     "sql",         "heisenberg",  "cutoff",
        "error"};
    return cols;
}

inline void fill_phase_row(RowBuilder& b, const PhaseBoundReport& r) {
    b.set("family", std::string(family_name(r.family)));
    if (r.photons) {
        b.set("n", integer(*r.photons));
    } else {
        b.set("alpha", format_complex(r.alpha)).set("alpha_abs", std::abs(r.alpha));
    }
    b.set("mean_photons_total", r.mean_photons_total)
        .set("qfi_symbolic", r.qfi_symbolic)
        .set("qfi_oracle", r.qfi_oracle)
        .set("delta_theta_paper", opt(r.delta_theta_paper))
        .set("delta_theta_oracle", r.delta_theta_oracle)
        .set("deviation", opt(r.deviation))
        .set("sql", r.sql_reference)
        .set("heisenberg", r.heisenberg_reference)
        .set("cutoff", integer(r.cutoff));
}

}  // namespace detail

/// One row per (family, alpha) or (noon, N).
inline CommandResult cmd_phase_bound(const RunConfig& cfg) {
    if (cfg.families.empty()) {
        throw UsageError("phase-bound needs --family");
    }
    struct Point {
        Family family;
        double alpha;
        std::size_t photons;
    };
    std::vector<Point> points;
    for (Family f : cfg.families) {
        if (f == Family::noon) {
            if (cfg.photons.empty()) {
                throw UsageError("family noon needs --n");
            }
            for (auto n : cfg.photons) {
                points.push_back({f, 0.0, n});
            }
        } else {
            if (cfg.alphas.empty()) {
                throw UsageError("family " + std::string(family_name(f)) +
                                 " needs --alpha or --alpha-range");
            }
            for (double a : cfg.alphas) {
                points.push_back({f, a, 0});
            }
        }
    }
    const auto& cols = detail::phase_columns();
    auto rows = detail::parallel_rows(points.size(), cfg.jobs, [&](std::size_t i) {
        const auto& p = points[i];
        detail::RowBuilder b(cols);
        detail::RowOutcome o;
        try {
            const auto r = p.family == Family::noon ? noon_phase_bound_report(p.photons)
                                                    : phase_bound_report(p.family, p.alpha);
            detail::fill_phase_row(b, r);
        } catch (const Error& e) {
            b.set("family", std::string(family_name(p.family)));
            if (p.family == Family::noon) {
                b.set("n", detail::integer(p.photons));
            } else {
                b.set("alpha", format_complex(p.alpha)).set("alpha_abs", std::abs(p.alpha));
            }
            b.set("error", std::string(e.what()));
            o.failed = true;
        }
        o.row = b.take();
        return o;
    });
    return detail::collect(cols, std::move(rows));
}

/// Every requested family at each total mean photon number.
inline CommandResult cmd_compare_energy(const RunConfig& cfg) {
    if (cfg.energies.empty()) {
        throw UsageError("compare-energy needs --energy or --energy-range");
    }
    std::vector<Family> families = cfg.families;
    if (families.empty()) {
        families = {Family::joo,         Family::quasi_bell1, Family::quasi_bell2,
                    Family::quasi_bell3, Family::quasi_bell4, Family::coherent};
    }
    for (double e : cfg.energies) {
        if (!(e > 0.0)) {
            throw UsageError("energies must be positive");
        }
    }
    const std::size_t n = cfg.energies.size() * families.size();
    const auto& cols = detail::phase_columns();
    auto rows = detail::parallel_rows(n, cfg.jobs, [&](std::size_t i) {
        const double energy = cfg.energies[i / families.size()];
        const Family f = families[i % families.size()];
        detail::RowBuilder b(cols);
        detail::RowOutcome o;
        try {
            detail::fill_phase_row(b, phase_bound_at_energy(f, energy));
        } catch (const Error& e) {
            b.set("family", std::string(family_name(f))).set("error", std::string(e.what()));
            o.failed = true;
        }
        b.set("energy", energy);
        o.row = b.take();
        return o;
    });
    return detail::collect(cols, std::move(rows));
}

/// Gram entry, closed-form entanglement and the Fock-oracle entropies per alpha.
inline CommandResult cmd_entanglement(const RunConfig& cfg) {
    if (cfg.alphas.empty()) {
        throw UsageError("entanglement needs --alpha or --alpha-range");
    }
    const std::vector<std::string> cols = {
        "alpha",         "kappa",         "gram_d",        "gram_13",       "gram_min_eigenvalue",
        "eof_psi1",      "eof_psi2",      "eof_psi3",      "eof_psi4",      "oracle_entropy_psi1",
        "oracle_entropy_psi2", "abs_diff_psi1", "abs_diff_psi2", "cutoff", "error"};
    auto rows = detail::parallel_rows(cfg.alphas.size(), cfg.jobs, [&](std::size_t i) {
        const double a = cfg.alphas[i];
        detail::RowBuilder b(cols);
        detail::RowOutcome o;
        b.set("alpha", a);
        try {
            const std::size_t cutoff = choose_truncation(std::abs(a), kOracleTailTolerance);
            const auto psi1 = quasi_bell(QuasiBell::psi1, a);
            const double eof1 = entanglement_of_formation(QuasiBell::psi1, a);
            const double s1 = von_neumann_entropy(partial_trace_b(to_fock_ket(psi1, cutoff)));
            b.set("kappa", kappa(a))
                .set("gram_d", quasi_bell_gram_d(a))
                .set("gram_13", std::abs(overlap(psi1, quasi_bell(QuasiBell::psi3, a))))
                .set("eof_psi1", eof1)
                .set("eof_psi3", entanglement_of_formation(QuasiBell::psi3, a))
                .set("oracle_entropy_psi1", s1)
                .set("abs_diff_psi1", std::abs(eof1 - s1))
                .set("cutoff", detail::integer(cutoff));
            try {
                const auto gram = quasi_bell_gram(a);
                Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(gram, Eigen::EigenvaluesOnly);
                const double eof2 = entanglement_of_formation(QuasiBell::psi2, a);
                const double s2 = von_neumann_entropy(
                    partial_trace_b(to_fock_ket(quasi_bell(QuasiBell::psi2, a), cutoff)));
                b.set("gram_min_eigenvalue", solver.eigenvalues().minCoeff())
                    .set("eof_psi2", eof2)
                    .set("eof_psi4", entanglement_of_formation(QuasiBell::psi4, a))
                    .set("oracle_entropy_psi2", s2)
                    .set("abs_diff_psi2", std::abs(eof2 - s2));
            } catch (const DegenerateStateError&) {
                b.set("error", std::string("psi2/psi4 degenerate at alpha = 0"));
            }
        } catch (const Error& e) {
            b.set("error", std::string(e.what()));
            o.failed = true;
        }
        o.row = b.take();
        return o;
    });
    return detail::collect(cols, std::move(rows));
}

/// Probe overlap, Helstrom errors and optional Monte Carlo per (alpha, epsilon).
/// The coherent baseline's Monte Carlo uses seed + 1.
inline CommandResult cmd_force_detect(const RunConfig& cfg) {
    if (cfg.alphas.empty()) {
        throw UsageError("force-detect needs --alpha or --alpha-range");
    }
    if (cfg.epsilons.empty()) {
        throw UsageError("force-detect needs --epsilon or --epsilon-range");
    }
    if (!(cfg.prior0 >= 0.0 && cfg.prior1 >= 0.0) || std::abs(cfg.prior0 + cfg.prior1 - 1.0) > 1e-12) {
        throw UsageError("--priors must be non-negative and sum to 1");
    }
    const ForceModel model =
        cfg.force_displaces_vacuum ? ForceModel::displaces_vacuum : ForceModel::vacuum_untouched;
    const std::vector<std::string> cols = {
        "alpha",          "epsilon",         "beta",           "force_model",
        "prior0",         "prior1",          "force_overlap",  "force_overlap_abs",
        "force_overlap_oracle_abs", "pe_ecs", "paper_claim_overlap", "paper_claim_pe_ecs",
        "pe_coherent",    "coherent_overlap_abs", "mc_trials", "seed",
        "mc_rate_ecs",    "mc_rate_coherent", "cutoff",        "error"};
    const std::size_t n = cfg.alphas.size() * cfg.epsilons.size();
    auto rows = detail::parallel_rows(n, cfg.jobs, [&](std::size_t i) {
        const double a = cfg.alphas[i / cfg.epsilons.size()];
        const double eps = cfg.epsilons[i % cfg.epsilons.size()];
        detail::RowBuilder b(cols);
        detail::RowOutcome o;
        b.set("alpha", a)
            .set("epsilon", eps)
            .set("force_model", std::string(model == ForceModel::vacuum_untouched
                                                ? "vacuum-untouched"
                                                : "displaces-vacuum"))
            .set("prior0", cfg.prior0)
            .set("prior1", cfg.prior1)
            .set("seed", static_cast<std::int64_t>(cfg.seed))
            .set("mc_trials", static_cast<std::int64_t>(cfg.trials));
        try {
            if (!(eps >= 0.0)) {
                throw DomainError("epsilon must be non-negative");
            }
            const auto pair = build_force_probe_pair(a, eps, model);
            const auto cmp = error_comparison(a, eps, cfg.prior0, model);
            const auto baseline = coherent_baseline(pair.beta, eps, cfg.prior0);
            const std::size_t cutoff =
                choose_truncation(std::max(std::abs(a), std::sqrt(eps)), kOracleTailTolerance);
            const cplx oracle =
                inner_product(to_fock_ket(pair.after, cutoff), to_fock_ket(pair.before, cutoff));
            b.set("beta", pair.beta.real())
                .set("force_overlap", format_complex(cmp.force_overlap))
                .set("force_overlap_abs", std::abs(cmp.force_overlap))
                .set("force_overlap_oracle_abs", std::abs(oracle))
                .set("pe_ecs", cmp.pe_ecs)
                .set("paper_claim_overlap", cmp.paper_claim_overlap)
                .set("paper_claim_pe_ecs", cmp.paper_claim_pe_ecs)
                .set("pe_coherent", cmp.pe_coherent)
                .set("coherent_overlap_abs", std::abs(baseline.overlap))
                .set("cutoff", detail::integer(cutoff));
            if (cfg.trials > 0) {
                const DetectionProblem ecs_problem(pair.before, pair.after, cfg.prior0, cfg.prior1);
                b.set("mc_rate_ecs", monte_carlo_discrimination(ecs_problem, cfg.trials, cfg.seed).rate())
                    .set("mc_rate_coherent",
                         monte_carlo_discrimination(baseline.problem, cfg.trials, cfg.seed + 1).rate());
            }
        } catch (const Error& e) {
            b.set("error", std::string(e.what()));
            o.failed = true;
        }
        o.row = b.take();
        return o;
    });
    return detail::collect(cols, std::move(rows));
}

/// Matched bank beta_i = sqrt(eps_i), plus the OR decision for --demo-clicks.
inline CommandResult cmd_bank_design(const RunConfig& cfg) {
    if (cfg.epsilons.empty()) {
        throw UsageError("bank-design needs --epsilon or --epsilon-range");
    }
    for (double e : cfg.epsilons) {
        if (!(e > 0.0)) {
            throw UsageError("bank energy shifts must be positive");
        }
    }
    if (!cfg.demo_clicks.empty() && cfg.demo_clicks.size() != cfg.epsilons.size()) {
        throw UsageError("--demo-clicks needs one entry per bank subsystem");
    }
    BankDesign design;
    try {
        design = design_parallel_bank(cfg.epsilons);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    const std::vector<std::string> cols = {"index",   "epsilon", "beta", "beta_sq_minus_epsilon",
                                           "click", "bank_decision"};
    std::vector<detail::RowOutcome> rows;
    const bool decision = !cfg.demo_clicks.empty() && bank_decision(cfg.demo_clicks);
    for (std::size_t i = 0; i < design.entries.size(); ++i) {
        const auto& e = design.entries[i];
        detail::RowBuilder b(cols);
        b.set("index", detail::integer(i + 1))
            .set("epsilon", e.epsilon)
            .set("beta", e.beta)
            .set("beta_sq_minus_epsilon", e.beta * e.beta - e.epsilon);
        if (!cfg.demo_clicks.empty()) {
            b.set("click", static_cast<bool>(cfg.demo_clicks[i])).set("bank_decision", decision);
        }
        rows.push_back({b.take(), false});
    }
    return detail::collect(cols, std::move(rows));
}

inline CommandResult run_command(const RunConfig& cfg) {
    if (cfg.command == "phase-bound") return cmd_phase_bound(cfg);
    if (cfg.command == "compare-energy") return cmd_compare_energy(cfg);
    if (cfg.command == "entanglement") return cmd_entanglement(cfg);
    if (cfg.command == "force-detect") return cmd_force_detect(cfg);
    if (cfg.command == "bank-design") return cmd_bank_design(cfg);
    throw UsageError("unknown command '" + cfg.command + "'");
}

}  // namespace ecs::cli
