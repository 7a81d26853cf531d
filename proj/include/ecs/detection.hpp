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

// Binary pure-state discrimination: the Helstrom minimum error, the
// entangled-coherent force probe, the single-mode coherent baseline, the
// parallel bank of matched probes and a seeded Monte Carlo of the optimal
// two-outcome measurement.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <ranges>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "ecs/coherent.hpp"
#include "ecs/errors.hpp"

namespace ecs {

namespace detail {

// Computed |overlap|^2 may leave [0, 1] by a few ulps.
inline double clamp_probability(double x, const char* what) {
    if (!(x >= -1e-12 && x <= 1.0 + 1e-12)) {
        throw DomainError(std::string(what) + " must lie in [0, 1], got " + std::to_string(x));
    }
    return std::clamp(x, 0.0, 1.0);
}

}  // namespace detail

/// Helstrom minimum error 1/2 [1 - sqrt(1 - 4 xi0 xi1 |<psi0|psi1>|^2)].
inline double helstrom_error(double prior0, double overlap_sq) {
    prior0 = detail::clamp_probability(prior0, "prior0");
    overlap_sq = detail::clamp_probability(overlap_sq, "overlap^2");
    const double prior1 = 1.0 - prior0;
    const double disc = std::max(0.0, 1.0 - 4.0 * prior0 * prior1 * overlap_sq);
    return 0.5 * (1.0 - std::sqrt(disc));
}

/// Error under unknown priors; the worst case for two pure states is 1/2, 1/2.
inline double minimax_error(double overlap_sq) { return helstrom_error(0.5, overlap_sq); }

class DetectionProblem {
   public:
    DetectionProblem(CoherentSuperposition state0, CoherentSuperposition state1, double prior0,
                     double prior1)
        : state0_(std::move(state0)),
          state1_(std::move(state1)),
          prior0_(prior0),
          prior1_(prior1) {
        if (state0_.mode_count() != state1_.mode_count()) {
            throw DimensionError("hypothesis states have different mode counts");
        }
        if (!(prior0_ >= 0.0 && prior0_ <= 1.0 && prior1_ >= 0.0 && prior1_ <= 1.0) ||
            std::abs(prior0_ + prior1_ - 1.0) > 1e-12) {
            throw DomainError("priors must lie in [0, 1] and sum to 1");
        }
        if (!is_normalized(state0_) || !is_normalized(state1_)) {
            throw PreconditionError("hypothesis states must be normalized");
        }
    }

    const CoherentSuperposition& state0() const { return state0_; }
    const CoherentSuperposition& state1() const { return state1_; }
    double prior0() const { return prior0_; }
    double prior1() const { return prior1_; }

    cplx overlap() const { return ecs::overlap(state0_, state1_); }

    double helstrom() const { return helstrom_error(prior0_, std::norm(overlap())); }

   private:
    CoherentSuperposition state0_;
    CoherentSuperposition state1_;
    double prior0_;
    double prior1_;
};

/// Conditional error probabilities of the optimal projective measurement.
struct BinaryMeasurement {
    double p1_given0 = 0.0;  // decide 1 when 0 was sent
    double p0_given1 = 0.0;

    double error(double prior0) const { return prior0 * p1_given0 + (1.0 - prior0) * p0_given1; }
};

/// Optimal measurement on span{psi0, psi1}: in an orthonormal basis where
/// psi0 = (1, 0) and psi1 = (c, s), decide 1 on the positive eigenspace of
/// xi1 |psi1><psi1| - xi0 |psi0><psi0|.
inline BinaryMeasurement optimal_measurement(const DetectionProblem& p) {
    const cplx c = p.overlap();
    const double s = std::sqrt(std::max(0.0, 1.0 - std::norm(c)));
    Eigen::Vector2cd v0(cplx(1.0), cplx(0.0));
    Eigen::Vector2cd v1(c, cplx(s));
    const Eigen::Matrix2cd gamma =
        p.prior1() * v1 * v1.adjoint() - p.prior0() * v0 * v0.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(gamma);
    Eigen::Matrix2cd decide1 = Eigen::Matrix2cd::Zero();
    for (int i = 0; i < 2; ++i) {
        if (solver.eigenvalues()(i) > 0.0) {
            const Eigen::Vector2cd e = solver.eigenvectors().col(i);
            decide1 += e * e.adjoint();
        }
    }
    BinaryMeasurement m;
    m.p1_given0 = std::clamp((v0.adjoint() * decide1 * v0)(0).real(), 0.0, 1.0);
    m.p0_given1 = std::clamp(1.0 - (v1.adjoint() * decide1 * v1)(0).real(), 0.0, 1.0);
    return m;
}

/// Counter-based generator: output k is the k-th splitmix64 value for the
/// seed, so any trial range can be drawn independently of the others.
class CounterRng {
   public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t bits(std::uint64_t counter) const {
        std::uint64_t z = seed_ + (counter + 1) * 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform(std::uint64_t counter) const {
        return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
    }

   private:
    std::uint64_t seed_;
};

struct MonteCarloResult {
    std::uint64_t trials = 0;
    std::uint64_t errors = 0;
    double rate() const { return trials == 0 ? 0.0 : static_cast<double>(errors) / trials; }
};

namespace detail {

inline std::uint64_t count_errors(const BinaryMeasurement& m, double prior1, const CounterRng& rng,
                                  std::uint64_t first, std::uint64_t last) {
    std::uint64_t errors = 0;
    for (std::uint64_t t = first; t < last; ++t) {
        const bool sent1 = rng.uniform(2 * t) < prior1;
        const double u = rng.uniform(2 * t + 1);
        errors += sent1 ? (u < m.p0_given1) : (u < m.p1_given0);
    }
    return errors;
}

}  // namespace detail

/// Empirical error of the optimal measurement. Trial t draws the hypothesis
/// from counter 2t and the Born outcome from 2t+1, so the result depends only
/// on (problem, trials, seed), whatever the number of workers.
inline MonteCarloResult monte_carlo_discrimination(const DetectionProblem& p, std::uint64_t trials,
                                                   std::uint64_t seed, unsigned jobs = 1) {
    if (trials == 0) {
        throw DomainError("monte_carlo_discrimination needs at least one trial");
    }
    const auto m = optimal_measurement(p);
    const CounterRng rng(seed);
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::min<std::uint64_t>(trials, 64))));
    std::vector<std::uint64_t> partial(jobs, 0);
    if (jobs == 1) {
        partial[0] = detail::count_errors(m, p.prior1(), rng, 0, trials);
    } else {
        std::vector<std::jthread> workers;
        for (unsigned w = 0; w < jobs; ++w) {
            const std::uint64_t first = trials * w / jobs;
            const std::uint64_t last = trials * (w + 1) / jobs;
            workers.emplace_back([&, w, first, last] {
                partial[w] = detail::count_errors(m, p.prior1(), rng, first, last);
            });
        }
    }
    MonteCarloResult r;
    r.trials = trials;
    for (auto e : partial) {
        r.errors += e;
    }
    return r;
}

enum class ForceModel {
    vacuum_untouched,  // exact-vacuum mode-B branches are left alone
    displaces_vacuum,  // every branch is displaced (extension)
};

/// Shifts mode B by -sqrt(epsilon) with the Weyl phase. Under
/// vacuum_untouched, branches whose mode-B amplitude is exactly 0 are skipped
/// and all other branches are displaced.
inline CoherentSuperposition apply_force(const CoherentSuperposition& s, double epsilon,
                                         ForceModel model) {
    if (s.mode_count() < 2) {
        throw DimensionError("force acts on mode B of a two-mode state");
    }
    if (!(epsilon >= 0.0)) {
        throw DomainError("energy shift epsilon must be non-negative");
    }
    const cplx delta = -std::sqrt(epsilon);
    auto terms = s.terms();
    for (auto& t : terms) {
        cplx& b = t.amplitudes[1];
        if (model == ForceModel::vacuum_untouched && b == cplx(0.0)) {
            continue;
        }
        t.coefficient *= displacement_phase(delta, b);
        b += delta;
    }
    return CoherentSuperposition(s.mode_count(), std::move(terms));
}

struct ProbePair {
    cplx alpha;
    cplx beta;
    double epsilon;
    ForceModel model;
    CoherentSuperposition before;  // h(0) (|a>|b> - |-a>|0>)
    CoherentSuperposition after;   // h(1) (|a>|b - sqrt(eps)> - |-a>|0>)
};

/// Probe with the matched design beta = sqrt(epsilon).
inline ProbePair build_force_probe_pair(cplx alpha, double epsilon,
                                        ForceModel model = ForceModel::vacuum_untouched) {
    if (!(epsilon >= 0.0)) {
        throw DomainError("energy shift epsilon must be non-negative");
    }
    const cplx beta = std::sqrt(epsilon);
    const auto raw = CoherentSuperposition::product({alpha, beta}) -
                     CoherentSuperposition::product({-alpha, 0.0});
    try {
        auto before = normalize(raw);
        auto after = normalize(apply_force(before, epsilon, model));
        return ProbePair{alpha, beta, epsilon, model, std::move(before), std::move(after)};
    } catch (const DegenerateStateError& e) {
        throw DegenerateProbeError(std::string("degenerate force probe: ") + e.what());
    }
}

/// <after|before>, computed exactly; no value is assumed.
inline cplx force_overlap(const ProbePair& pair) { return overlap(pair.after, pair.before); }

struct CoherentBaseline {
    DetectionProblem problem;
    cplx overlap;
};

/// Single-mode reference: |beta> before, |beta - sqrt(eps)> after.
inline CoherentBaseline coherent_baseline(cplx beta, double epsilon, double prior0 = 0.5) {
    if (!(epsilon >= 0.0)) {
        throw DomainError("energy shift epsilon must be non-negative");
    }
    DetectionProblem p(coherent(beta), coherent(beta - std::sqrt(epsilon)), prior0, 1.0 - prior0);
    const cplx ov = p.overlap();
    return CoherentBaseline{std::move(p), ov};
}

struct ErrorComparison {
    cplx force_overlap;
    double pe_ecs = 0.0;        // Helstrom error from the computed overlap
    double pe_coherent = 0.0;   // 1/2 [1 - sqrt(1 - 4 xi0 xi1 e^{-|beta|^2})]
    double paper_claim_pe_ecs = 0.0;
    double paper_claim_overlap = 0.0;
};

inline double pe_coherent_closed_form(double prior0, double beta_abs_sq) {
    const double prior1 = 1.0 - prior0;
    return 0.5 * (1.0 - std::sqrt(1.0 - 4.0 * prior0 * prior1 * std::exp(-beta_abs_sq)));
}

/// ECS probe against the coherent baseline at beta = sqrt(epsilon).
inline ErrorComparison error_comparison(cplx alpha, double epsilon, double prior0 = 0.5,
                                        ForceModel model = ForceModel::vacuum_untouched) {
    detail::clamp_probability(prior0, "prior0");
    const auto pair = build_force_probe_pair(alpha, epsilon, model);
    ErrorComparison r;
    r.force_overlap = force_overlap(pair);
    r.pe_ecs = helstrom_error(prior0, std::norm(r.force_overlap));
    r.pe_coherent = pe_coherent_closed_form(prior0, epsilon);
    return r;
}

struct BankEntry {
    double beta;
    double epsilon;
};

struct BankDesign {
    std::vector<BankEntry> entries;
};

/// beta_i = sqrt(epsilon_i), in input order.
inline BankDesign design_parallel_bank(std::span<const double> epsilons) {
    if (epsilons.empty()) {
        throw DomainError("a bank needs at least one subsystem");
    }
    BankDesign d;
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        const double e = epsilons[i];
        if (!(e > 0.0)) {
            throw DomainError("bank energy shifts must be positive");
        }
        if (std::find(epsilons.begin(), epsilons.begin() + static_cast<std::ptrdiff_t>(i), e) !=
            epsilons.begin() + static_cast<std::ptrdiff_t>(i)) {
            throw DomainError("bank energy shifts must be distinct");
        }
        d.entries.push_back({std::sqrt(e), e});
    }
    return d;
}

/// The bank reports a force as soon as any subsystem clicks.
template <std::ranges::input_range R>
bool bank_decision(const R& clicks) {
    if (std::ranges::empty(clicks)) {
        throw DomainError("bank_decision needs at least one click record");
    }
    return std::ranges::any_of(clicks, [](const auto& c) { return static_cast<bool>(c); });
}

}  // namespace ecs
