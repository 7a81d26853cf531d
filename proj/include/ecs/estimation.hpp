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

// Phase-estimation bounds. The quantum Fisher information of a pure state
// under a phase shift generated by n_A is F_Q = 4 Var(n_A); the bound is
// delta_theta = 1 / sqrt(F_Q). Two independent evaluations are provided
// (exact coherent algebra and truncated Fock sums) next to the printed
// closed forms for the quasi-Bell and Joo states, which are evaluated
// verbatim and never reconciled with the numerics.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ecs/coherent.hpp"
#include "ecs/errors.hpp"
#include "ecs/fock.hpp"

namespace ecs {

enum class Family { quasi_bell1, quasi_bell2, quasi_bell3, quasi_bell4, joo, noon, coherent };

inline constexpr Family kAllFamilies[] = {Family::quasi_bell1, Family::quasi_bell2,
                                          Family::quasi_bell3, Family::quasi_bell4,
                                          Family::joo,         Family::noon,
                                          Family::coherent};

inline std::string_view family_name(Family f) {
    switch (f) {
        case Family::quasi_bell1: return "quasiBell1";
        case Family::quasi_bell2: return "quasiBell2";
        case Family::quasi_bell3: return "quasiBell3";
        case Family::quasi_bell4: return "quasiBell4";
        case Family::joo: return "joo";
        case Family::noon: return "noon";
        case Family::coherent: return "coherent";
    }
    return "?";
}

inline std::optional<Family> parse_family(std::string_view name) {
    for (Family f : kAllFamilies) {
        if (family_name(f) == name) {
            return f;
        }
    }
    return std::nullopt;
}

inline std::optional<QuasiBell> quasi_bell_of(Family f) {
    switch (f) {
        case Family::quasi_bell1: return QuasiBell::psi1;
        case Family::quasi_bell2: return QuasiBell::psi2;
        case Family::quasi_bell3: return QuasiBell::psi3;
        case Family::quasi_bell4: return QuasiBell::psi4;
        default: return std::nullopt;
    }
}

/// Coherent-superposition member of a family; NOON has none.
inline CoherentSuperposition state_for_family(Family f, cplx alpha) {
    if (auto label = quasi_bell_of(f)) {
        return quasi_bell(*label, alpha);
    }
    if (f == Family::joo) {
        return joo_state(alpha);
    }
    if (f == Family::coherent) {
        return coherent(alpha);
    }
    throw DomainError("NOON states have no coherent-superposition form");
}

/// 4 (<n^2> - <n>^2) on the given mode, from the exact coherent algebra.
inline double qfi_symbolic(const CoherentSuperposition& s, std::size_t mode = 0) {
    const double m1 = number_moment(s, mode, 1);
    const double m2 = number_moment(s, mode, 2);
    return std::max(0.0, 4.0 * (m2 - m1 * m1));
}

/// 4 Var(n_mode) from the truncated Fock ket.
inline double qfi_oracle(const FockKet& k, std::size_t mode = 0) {
    return 4.0 * number_variance(k, mode);
}

/// K+- = (1 +- e^{-2a^2}) / (1 +- e^{-4a^2}); '+' for psi1/psi3.
inline double quasi_bell_k(QuasiBell label, double alpha) {
    const double a2 = alpha * alpha;
    if (label == QuasiBell::psi1 || label == QuasiBell::psi3) {
        return (1.0 + std::exp(-2.0 * a2)) / (1.0 + std::exp(-4.0 * a2));
    }
    return std::expm1(-2.0 * a2) / std::expm1(-4.0 * a2);
}

/// Printed quasi-Bell bound 1 / (2 sqrt(a^4 K (1-K) + K a^2)).
inline double delta_theta_quasi_bell_paper(QuasiBell label, double alpha) {
    const bool minus = label == QuasiBell::psi2 || label == QuasiBell::psi4;
    if (alpha == 0.0 && minus) {
        throw DegenerateStateError("quasi-Bell states 2 and 4 vanish at alpha = 0");
    }
    if (!(alpha > 0.0)) {
        throw DomainError("printed quasi-Bell bound needs real alpha > 0");
    }
    const double k = quasi_bell_k(label, alpha);
    const double a2 = alpha * alpha;
    return 1.0 / (2.0 * std::sqrt(a2 * a2 * k * (1.0 - k) + k * a2));
}

/// Printed Joo-state bound 1 / (2 a h_J sqrt((a^2 + 1) - h_J^2 a^2)).
inline double delta_theta_joo_paper(double alpha) {
    if (!(alpha > 0.0)) {
        throw DomainError("Joo bound needs real alpha > 0");
    }
    const double a2 = alpha * alpha;
    const double h2 = 1.0 / (2.0 * (1.0 + std::exp(-a2)));
    return 1.0 / (2.0 * alpha * std::sqrt(h2) * std::sqrt((a2 + 1.0) - h2 * a2));
}

struct ReferenceLimits {
    double sql;         // 1 / sqrt(N)
    double heisenberg;  // 1 / N
};

inline ReferenceLimits reference_limits(double mean_photons) {
    if (!(mean_photons > 0.0)) {
        throw DomainError("reference limits need a positive mean photon number");
    }
    return {1.0 / std::sqrt(mean_photons), 1.0 / mean_photons};
}

inline double mean_photons_total(const CoherentSuperposition& s) {
    double total = 0.0;
    for (std::size_t m = 0; m < s.mode_count(); ++m) {
        total += number_moment(s, m, 1);
    }
    return total;
}

inline constexpr double kEnergyTolerance = 1e-10;
inline constexpr double kAlphaLow = 1e-6;
inline constexpr double kAlphaHigh = 50.0;

/// Real alpha in (1e-6, 50] with |E(alpha) - target| <= 1e-10, by bisection on
/// the monotone energy map of the family.
inline double solve_alpha_for_energy(Family f, double target) {
    if (!(target > 0.0)) {
        throw DomainError("target energy must be positive");
    }
    const auto excess = [&](double a) {
        return mean_photons_total(state_for_family(f, a)) - target;
    };
    // Near alpha -> 0 the psi2/psi4 normalizers blow up and the exact sums can
    // no longer certify normalization; such points count as unreachable.
    const auto try_excess = [&](double a) -> std::optional<double> {
        try {
            return excess(a);
        } catch (const PreconditionError&) {
            return std::nullopt;
        }
    };
    const auto unreachable = [&] {
        return RangeError("energy " + std::to_string(target) + " unreachable for family " +
                          std::string(family_name(f)) + " with alpha in (1e-6, 50]");
    };
    double lo = kAlphaLow;
    double hi = kAlphaHigh;
    if (const auto f_lo = try_excess(lo); f_lo && std::abs(*f_lo) <= kEnergyTolerance) {
        return lo;
    }
    const double f_hi = excess(hi);
    if (std::abs(f_hi) <= kEnergyTolerance) {
        return hi;
    }
    if (f_hi < 0.0) {
        throw unreachable();
    }
    // E(lo) > target is not rejected up front: families whose energy is
    // bounded below (psi2, psi4 -> 1) only reach the target inside the bracket.
    for (int iter = 0; iter < 400; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        const auto f_mid = try_excess(mid);
        if (!f_mid) {
            break;
        }
        if (std::abs(*f_mid) <= kEnergyTolerance) {
            return mid;
        }
        (*f_mid < 0.0 ? lo : hi) = mid;
    }
    throw unreachable();
}

struct PhaseBoundReport {
    Family family = Family::coherent;
    cplx alpha = 0.0;
    std::optional<std::size_t> photons;  // NOON N
    double mean_photons_total = 0.0;
    double qfi_symbolic = 0.0;
    double qfi_oracle = 0.0;
    std::optional<double> delta_theta_paper;
    double delta_theta_oracle = 0.0;
    std::optional<double> deviation;  // |paper - oracle| / paper
    double sql_reference = 0.0;
    double heisenberg_reference = 0.0;
    std::size_t cutoff = 0;
};

inline constexpr double kOracleTailTolerance = 1e-14;

namespace detail {

inline void fill_derived(PhaseBoundReport& r) {
    r.delta_theta_oracle = 1.0 / std::sqrt(r.qfi_oracle);
    const auto limits = reference_limits(r.mean_photons_total);
    r.sql_reference = limits.sql;
    r.heisenberg_reference = limits.heisenberg;
    if (r.delta_theta_paper) {
        r.deviation = std::abs(*r.delta_theta_paper - r.delta_theta_oracle) / *r.delta_theta_paper;
    }
}

}  // namespace detail

/// Report for a coherent-superposition family member at amplitude alpha.
inline PhaseBoundReport phase_bound_report(Family f, cplx alpha) {
    if (f == Family::noon) {
        throw DomainError("use noon_phase_bound_report for NOON states");
    }
    const auto state = state_for_family(f, alpha);
    PhaseBoundReport r;
    r.family = f;
    r.alpha = alpha;
    r.mean_photons_total = mean_photons_total(state);
    r.qfi_symbolic = qfi_symbolic(state, 0);
    r.cutoff = choose_truncation(std::abs(alpha), kOracleTailTolerance);
    r.qfi_oracle = qfi_oracle(to_fock_ket(state, r.cutoff), 0);
    const double a = std::abs(alpha);
    if (auto label = quasi_bell_of(f); label && a > 0.0) {
        r.delta_theta_paper = delta_theta_quasi_bell_paper(*label, a);
    } else if (f == Family::joo && a > 0.0) {
        r.delta_theta_paper = delta_theta_joo_paper(a);
    }
    detail::fill_derived(r);
    return r;
}

/// NOON report; the symbolic QFI is the closed form N^2.
inline PhaseBoundReport noon_phase_bound_report(std::size_t photons) {
    PhaseBoundReport r;
    r.family = Family::noon;
    r.photons = photons;
    r.mean_photons_total = static_cast<double>(photons);
    r.qfi_symbolic = static_cast<double>(photons) * static_cast<double>(photons);
    r.cutoff = photons + 1;
    r.qfi_oracle = qfi_oracle(noon_ket(photons, r.cutoff), 0);
    detail::fill_derived(r);
    return r;
}

/// Family member whose total mean photon number equals the given energy.
inline PhaseBoundReport phase_bound_at_energy(Family f, double total_energy) {
    if (f == Family::noon) {
        const double n = std::round(total_energy);
        if (n < 1.0 || std::abs(n - total_energy) > 1e-12) {
            throw DomainError("NOON states only exist at integer energies");
        }
        return noon_phase_bound_report(static_cast<std::size_t>(n));
    }
    return phase_bound_report(f, solve_alpha_for_energy(f, total_energy));
}

inline std::vector<PhaseBoundReport> compare_phase_bounds(std::span<const Family> families,
                                                          double total_energy) {
    if (!(total_energy > 0.0)) {
        throw DomainError("total energy must be positive");
    }
    std::vector<PhaseBoundReport> out;
    out.reserve(families.size());
    for (Family f : families) {
        out.push_back(phase_bound_at_energy(f, total_energy));
    }
    return out;
}

}  // namespace ecs
