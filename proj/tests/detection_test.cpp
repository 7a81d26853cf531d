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

#include "ecs/detection.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <vector>

#include "ecs/fock.hpp"

using namespace ecs;

namespace {

// h(0) h(1) (1 - kappa)(1 + e^{-|b|^2/2}), real alpha and beta.
double expanded_force_overlap(double alpha, double beta) {
    const double k = std::exp(-2.0 * alpha * alpha);
    const double g = std::exp(-0.5 * beta * beta);
    const double h0 = 1.0 / std::sqrt(2.0 * (1.0 - k * g));
    const double h1 = 1.0 / std::sqrt(2.0 * (1.0 - k));
    return h0 * h1 * (1.0 - k) * (1.0 + g);
}

double binomial_sigma(double p, double n) { return std::sqrt(p * (1.0 - p) / n); }

}  // namespace

TEST(Helstrom, limits) {
    EXPECT_EQ(helstrom_error(0.5, 0.0), 0.0);
    EXPECT_EQ(helstrom_error(0.5, 1.0), 0.5);
    EXPECT_NEAR(helstrom_error(0.5, std::exp(-1.0)), 0.10246995118967495, 1e-15);
}

TEST(Helstrom, domain) {
    EXPECT_THROW(helstrom_error(-0.1, 0.5), DomainError);
    EXPECT_THROW(helstrom_error(0.5, 1.5), DomainError);
    EXPECT_EQ(helstrom_error(0.5, 1.0 + 1e-14), 0.5);
}

TEST(Helstrom, grid_properties) {
    for (int i = 0; i <= 100; ++i) {
        const double xi = i / 100.0;
        double prev = -1.0;
        for (int j = 0; j <= 100; ++j) {
            const double x = j / 100.0;
            const double pe = helstrom_error(xi, x);
            ASSERT_LE(pe, std::min(xi, 1.0 - xi) + 1e-15);
            ASSERT_GE(pe, prev);
            ASSERT_GE(minimax_error(x) + 1e-15, pe);
            prev = pe;
        }
    }
}

TEST(Minimax, values) {
    EXPECT_EQ(minimax_error(0.0), 0.0);
    EXPECT_NEAR(minimax_error(0.25), 0.0669872981077807, 1e-15);
}

TEST(Minimax, worst_prior_is_half) {
    for (double x : {0.1, 0.25, 0.8}) {
        int best = -1;
        double best_pe = -1.0;
        for (int i = 0; i <= 1000; ++i) {
            const double pe = helstrom_error(i / 1000.0, x);
            if (pe > best_pe) {
                best_pe = pe;
                best = i;
            }
        }
        EXPECT_EQ(best, 500);
        EXPECT_EQ(best_pe, minimax_error(x));
    }
}

TEST(DetectionProblem, validation) {
    EXPECT_THROW(DetectionProblem(coherent(0.0), coherent(1.0), 0.4, 0.4), DomainError);
    EXPECT_THROW(DetectionProblem(coherent(0.0), CoherentSuperposition::product({0.0, 0.0}), 0.5, 0.5),
                 DimensionError);
    EXPECT_THROW(DetectionProblem(2.0 * coherent(0.0), coherent(1.0), 0.5, 0.5), PreconditionError);
}

TEST(OptimalMeasurement, attains_helstrom) {
    for (double xi0 : {0.5, 0.2, 0.9}) {
        for (double beta : {0.3, 1.0, 2.0}) {
            const DetectionProblem p(coherent(cplx(beta, 0.2)), coherent(cplx(0.1, -0.4)), xi0, 1 - xi0);
            EXPECT_NEAR(optimal_measurement(p).error(xi0), p.helstrom(), 1e-12);
        }
    }
}

TEST(OptimalMeasurement, identical_states_pick_the_likelier_hypothesis) {
    const DetectionProblem p(coherent(1.0), coherent(1.0), 0.3, 0.7);
    EXPECT_NEAR(optimal_measurement(p).error(0.3), 0.3, 1e-12);
    EXPECT_NEAR(p.helstrom(), 0.3, 1e-12);
}

TEST(ForceProbe, matched_design_at_unit_amplitude) {
    const auto pair = build_force_probe_pair(1.0, 1.0);
    EXPECT_EQ(pair.beta, cplx(1.0));
    EXPECT_EQ(pair.before.terms()[0].amplitudes, (std::vector<cplx>{1.0, 1.0}));
    EXPECT_EQ(pair.before.terms()[1].amplitudes, (std::vector<cplx>{-1.0, 0.0}));
    EXPECT_EQ(pair.after.terms()[0].amplitudes, (std::vector<cplx>{1.0, 0.0}));
    EXPECT_EQ(pair.after.terms()[1].amplitudes, (std::vector<cplx>{-1.0, 0.0}));
    // h(1) = 1/sqrt(2(1 - kappa))
    EXPECT_NEAR(pair.after.terms()[0].coefficient.real(), 0.7604333115894074, 1e-14);
    EXPECT_NEAR(pair.after.terms()[1].coefficient.real(), -0.7604333115894074, 1e-14);
    EXPECT_NEAR(self_overlap(pair.after), 1.0, 1e-12);
    EXPECT_NEAR(pair.before.terms()[0].coefficient.real(), 0.7380465736773839, 1e-14);
}

TEST(ForceProbe, degenerate_and_invalid) {
    EXPECT_THROW(build_force_probe_pair(0.0, 1.0), DegenerateProbeError);
    EXPECT_THROW(build_force_probe_pair(1.0, -1.0), DomainError);
}

TEST(ForceProbe, zero_shift_is_identity) {
    const auto pair = build_force_probe_pair(1.0, 0.0);
    EXPECT_NEAR(std::abs(force_overlap(pair) - 1.0), 0.0, 1e-14);
}

TEST(ForceOverlap, unit_amplitudes_match_expansion_and_oracle) {
    const auto pair = build_force_probe_pair(1.0, 1.0);
    const cplx ov = force_overlap(pair);
    EXPECT_NEAR(ov.real(), 0.7796176409147017, 1e-14);
    EXPECT_NEAR(ov.real(), expanded_force_overlap(1.0, 1.0), 1e-14);
    const cplx fock = inner_product(to_fock_ket(pair.after, 40), to_fock_ket(pair.before, 40));
    EXPECT_NEAR(std::abs(fock - ov), 0.0, 1e-9);
}

TEST(ForceOverlap, symbolic_matches_oracle_on_grid) {
    for (double a : {0.5, 1.0, 2.0, 3.0}) {
        for (double b : {0.5, 1.5, 3.0}) {
            const auto pair = build_force_probe_pair(a, b * b);
            const std::size_t cut = choose_truncation(std::max(a, b), 1e-14);
            const cplx fock = inner_product(to_fock_ket(pair.after, cut), to_fock_ket(pair.before, cut));
            EXPECT_LE(std::abs(fock - force_overlap(pair)), 1e-9) << a << " " << b;
            EXPECT_NEAR(force_overlap(pair).real(), expanded_force_overlap(a, b), 1e-13);
        }
    }
}

TEST(ForceOverlap, symmetries) {
    for (double a : {0.4, 1.2}) {
        const double m = std::abs(force_overlap(build_force_probe_pair(a, 2.0)));
        EXPECT_NEAR(std::abs(force_overlap(build_force_probe_pair(-a, 2.0))), m, 1e-14);
        auto pair = build_force_probe_pair(a, 2.0);
        pair.before = pair.before.scaled(std::polar(1.0, 0.8));
        EXPECT_NEAR(std::abs(force_overlap(pair)), m, 1e-14);
    }
}

TEST(ForceOverlap, displaced_vacuum_variant) {
    const auto pair = build_force_probe_pair(1.0, 1.0, ForceModel::displaces_vacuum);
    EXPECT_EQ(pair.after.terms()[1].amplitudes[1], cplx(-1.0));
    // A unitary force preserves the norm: no renormalization needed.
    EXPECT_NEAR(std::abs(pair.after.terms()[0].coefficient), std::abs(pair.before.terms()[0].coefficient),
                1e-14);
}

TEST(CoherentBaseline, matched_overlaps) {
    EXPECT_NEAR(coherent_baseline(1.0, 1.0).overlap.real(), std::exp(-0.5), 1e-15);
    EXPECT_NEAR(coherent_baseline(2.0, 4.0).overlap.real(), std::exp(-2.0), 1e-15);
    EXPECT_NEAR(std::abs(coherent_baseline(1.3, 0.0).overlap - 1.0), 0.0, 1e-15);
    const cplx fock = inner_product(coherent_ket(1.0, 30), coherent_ket(0.0, 30));
    EXPECT_NEAR(std::abs(fock - coherent_baseline(1.0, 1.0).overlap), 0.0, 1e-12);
}

TEST(ErrorComparison, coherent_branch) {
    const auto r = error_comparison(1.0, 1.0);
    EXPECT_NEAR(r.pe_coherent, 0.10246995118967495, 1e-15);
    for (double beta : {0.5, 1.0, 2.0}) {
        EXPECT_NEAR(pe_coherent_closed_form(0.5, beta * beta),
                    helstrom_error(0.5, std::exp(-beta * beta)), 1e-15);
    }
}

TEST(ErrorComparison, computed_overlap_drives_pe_ecs) {
    const auto r = error_comparison(1.0, 1.0);
    EXPECT_EQ(r.paper_claim_pe_ecs, 0.0);
    EXPECT_EQ(r.paper_claim_overlap, 0.0);
    EXPECT_NEAR(r.pe_ecs, helstrom_error(0.5, std::norm(r.force_overlap)), 1e-15);
    EXPECT_GT(r.pe_ecs, 0.0);
    EXPECT_EQ(helstrom_error(0.5, 0.0), 0.0);
}

TEST(ErrorComparison, coherent_branch_ignores_alpha) {
    const double ref = error_comparison(0.5, 1.0).pe_coherent;
    EXPECT_EQ(error_comparison(1.0, 1.0).pe_coherent, ref);
    EXPECT_EQ(error_comparison(2.0, 1.0).pe_coherent, ref);
}

TEST(ErrorComparison, zero_shift_is_minimax_half) {
    const auto r = error_comparison(1.0, 0.0);
    EXPECT_NEAR(r.pe_ecs, 0.5, 1e-7);
    EXPECT_EQ(r.pe_coherent, 0.5);
}

TEST(Bank, design_values) {
    const std::array eps1 = {4.0};
    EXPECT_EQ(design_parallel_bank(eps1).entries[0].beta, 2.0);
    const std::array eps3 = {1.0, 2.0, 4.0};
    const auto d = design_parallel_bank(eps3);
    EXPECT_EQ(d.entries[0].beta, 1.0);
    EXPECT_NEAR(d.entries[1].beta, 1.4142135623730951, 1e-16);
    EXPECT_EQ(d.entries[2].beta, 2.0);
}

TEST(Bank, geometric_grid_round_trip) {
    std::vector<double> eps;
    for (int i = 0; i < 8; ++i) {
        eps.push_back(0.01 * std::pow(10.0, i * 3.0 / 7.0));
    }
    for (const auto& e : design_parallel_bank(eps).entries) {
        EXPECT_NEAR(e.beta * e.beta, e.epsilon, 1e-12 * std::max(1.0, e.epsilon));
        EXPECT_NEAR(e.beta - std::sqrt(e.epsilon), 0.0, 1e-12);
    }
}

TEST(Bank, rejects_bad_shifts) {
    EXPECT_THROW(design_parallel_bank(std::vector<double>{}), DomainError);
    EXPECT_THROW(design_parallel_bank(std::vector<double>{1.0, 0.0}), DomainError);
    EXPECT_THROW(design_parallel_bank(std::vector<double>{1.0, 2.0, 1.0}), DomainError);
}

TEST(Bank, decision_is_or) {
    EXPECT_FALSE(bank_decision(std::vector<bool>{false, false}));
    EXPECT_TRUE(bank_decision(std::vector<bool>{false, true, false}));
    EXPECT_TRUE(bank_decision(std::vector<bool>(5, true)));
    EXPECT_THROW(bank_decision(std::vector<bool>{}), DomainError);
}

TEST(CounterRng, uniform_range_and_reproducibility) {
    const CounterRng a(7), b(7), c(8);
    int differ = 0;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const double u = a.uniform(i);
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        ASSERT_EQ(u, b.uniform(i));
        differ += u != c.uniform(i);
    }
    EXPECT_GT(differ, 990);
}

TEST(MonteCarlo, orthogonal_states_never_err) {
    const DetectionProblem p(quasi_bell(QuasiBell::psi1, 1.0), quasi_bell(QuasiBell::psi2, 1.0), 0.5,
                             0.5);
    EXPECT_EQ(monte_carlo_discrimination(p, 100000, 0).errors, 0u);
}

TEST(MonteCarlo, within_three_sigma_of_helstrom) {
    const auto base = coherent_baseline(1.0, 1.0);
    const auto r = monte_carlo_discrimination(base.problem, 100000, 0);
    const double expected = 0.10246995118967495;
    EXPECT_LE(std::abs(r.rate() - expected), 3.0 * binomial_sigma(expected, 1e5));
}

TEST(MonteCarlo, skewed_priors) {
    const DetectionProblem p(coherent(0.8), coherent(-0.3), 0.8, 0.2);
    const auto r = monte_carlo_discrimination(p, 100000, 42);
    EXPECT_LE(std::abs(r.rate() - p.helstrom()), 3.0 * binomial_sigma(p.helstrom(), 1e5));
}

TEST(MonteCarlo, deterministic_and_partition_invariant) {
    const auto base = coherent_baseline(1.0, 1.0);
    const auto r1 = monte_carlo_discrimination(base.problem, 20000, 5);
    const auto r2 = monte_carlo_discrimination(base.problem, 20000, 5);
    const auto r4 = monte_carlo_discrimination(base.problem, 20000, 5, 4);
    EXPECT_EQ(r1.errors, r2.errors);
    EXPECT_EQ(r1.errors, r4.errors);
    EXPECT_NE(r1.errors, monte_carlo_discrimination(base.problem, 20000, 6).errors);
    EXPECT_THROW(monte_carlo_discrimination(base.problem, 0, 5), DomainError);
}

TEST(MonteCarlo, identical_states_err_at_min_prior) {
    const DetectionProblem p(coherent(1.0), coherent(1.0), 0.5, 0.5);
    const auto r = monte_carlo_discrimination(p, 100000, 1);
    EXPECT_LE(std::abs(r.rate() - 0.5), 3.0 * binomial_sigma(0.5, 1e5));
}
