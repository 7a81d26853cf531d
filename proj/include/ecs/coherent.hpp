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

// Exact calculus over finite superpositions of multimode coherent product
// states. Every quantity reduces to the coherent overlap
//     <u|v> = exp(-|u|^2/2 - |v|^2/2 + conj(u) v)
// so results are exact up to floating point rounding, independent of any
// photon-number truncation.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ecs/errors.hpp"

namespace ecs {

using cplx = std::complex<double>;

/// Tolerance used by every "is normalized" precondition.
inline constexpr double kNormalizedTolerance = 1e-9;

struct CoherentTerm {
    cplx coefficient;
    std::vector<cplx> amplitudes;  // one coherent amplitude per mode
};

/// sum_j c_j |a_j0>|a_j1>...|a_j(M-1)>. Terms are never merged or dropped.
class CoherentSuperposition {
   public:
    CoherentSuperposition(std::size_t mode_count, std::vector<CoherentTerm> terms)
        : mode_count_(mode_count), terms_(std::move(terms)) {
        if (mode_count_ == 0) {
            throw DimensionError("CoherentSuperposition needs at least one mode");
        }
        if (terms_.empty()) {
            throw DimensionError("CoherentSuperposition needs at least one term");
        }
        for (const auto& t : terms_) {
            if (t.amplitudes.size() != mode_count_) {
                throw DimensionError("term has " + std::to_string(t.amplitudes.size()) +
                                     " amplitudes, expected " + std::to_string(mode_count_));
            }
        }
    }

    /// Single product term c |a_0>|a_1>...
    static CoherentSuperposition product(std::vector<cplx> amplitudes, cplx coefficient = 1.0) {
        const auto modes = amplitudes.size();
        return CoherentSuperposition(modes, {CoherentTerm{coefficient, std::move(amplitudes)}});
    }

    std::size_t mode_count() const { return mode_count_; }
    const std::vector<CoherentTerm>& terms() const { return terms_; }

    CoherentSuperposition scaled(cplx factor) const {
        auto out = terms_;
        for (auto& t : out) {
            t.coefficient *= factor;
        }
        return CoherentSuperposition(mode_count_, std::move(out));
    }

    friend CoherentSuperposition operator+(const CoherentSuperposition& a,
                                           const CoherentSuperposition& b) {
        if (a.mode_count_ != b.mode_count_) {
            throw DimensionError("cannot add superpositions with different mode counts");
        }
        auto terms = a.terms_;
        terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
        return CoherentSuperposition(a.mode_count_, std::move(terms));
    }

    friend CoherentSuperposition operator-(const CoherentSuperposition& a,
                                           const CoherentSuperposition& b) {
        return a + b.scaled(-1.0);
    }

    friend CoherentSuperposition operator*(cplx factor, const CoherentSuperposition& s) {
        return s.scaled(factor);
    }

   private:
    std::size_t mode_count_;
    std::vector<CoherentTerm> terms_;
};

/// Single-mode coherent state |alpha>.
inline CoherentSuperposition coherent(cplx alpha) {
    return CoherentSuperposition::product({alpha});
}

/// Exponent of <u|v>; sums over modes before exponentiating.
inline cplx log_coherent_overlap(cplx u, cplx v) {
    return -0.5 * std::norm(u) - 0.5 * std::norm(v) + std::conj(u) * v;
}

inline cplx coherent_overlap(cplx u, cplx v) { return std::exp(log_coherent_overlap(u, v)); }

namespace detail {

inline cplx product_overlap(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    cplx exponent = 0.0;
    for (std::size_t m = 0; m < a.size(); ++m) {
        exponent += log_coherent_overlap(a[m], b[m]);
    }
    return std::exp(exponent);
}

inline void check_mode(const CoherentSuperposition& s, std::size_t mode) {
    if (mode >= s.mode_count()) {
        throw DimensionError("mode " + std::to_string(mode) + " out of range for " +
                             std::to_string(s.mode_count()) + "-mode state");
    }
}

}  // namespace detail

/// <s1|s2>, conjugate-linear in the first argument.
inline cplx overlap(const CoherentSuperposition& s1, const CoherentSuperposition& s2) {
    if (s1.mode_count() != s2.mode_count()) {
        throw DimensionError("overlap of " + std::to_string(s1.mode_count()) + "-mode and " +
                             std::to_string(s2.mode_count()) + "-mode states");
    }
    cplx sum = 0.0;
    for (const auto& a : s1.terms()) {
        for (const auto& b : s2.terms()) {
            sum += std::conj(a.coefficient) * b.coefficient *
                   detail::product_overlap(a.amplitudes, b.amplitudes);
        }
    }
    return sum;
}

inline double self_overlap(const CoherentSuperposition& s) { return overlap(s, s).real(); }

inline bool is_normalized(const CoherentSuperposition& s,
                          double tolerance = kNormalizedTolerance) {
    return std::abs(self_overlap(s) - 1.0) <= tolerance;
}

/// Rescales every coefficient by the same positive real so that <s|s> = 1.
/// Throws DegenerateStateError when the norm is at the rounding floor of the
/// overlap sum (e.g. |a> - |a>).
inline CoherentSuperposition normalize(const CoherentSuperposition& s) {
    double coefficient_mass = 0.0;
    for (const auto& t : s.terms()) {
        coefficient_mass += std::abs(t.coefficient);
    }
    const double norm_sq = self_overlap(s);
    if (!(norm_sq > 1e-14 * coefficient_mass * coefficient_mass)) {
        throw DegenerateStateError("cannot normalize a zero-norm superposition");
    }
    return s.scaled(1.0 / std::sqrt(norm_sq));
}

/// Phase shift exp(-i theta n) on one mode: a -> a e^{-i theta}.
/// The generator is taken as the unitary exp(-i theta a^dag a); written
/// without the imaginary unit it would not be unitary.
inline CoherentSuperposition apply_phase_shift(const CoherentSuperposition& s, double theta,
                                               std::size_t mode) {
    detail::check_mode(s, mode);
    const cplx rotation = std::polar(1.0, -theta);
    auto terms = s.terms();
    for (auto& t : terms) {
        t.amplitudes[mode] *= rotation;
    }
    return CoherentSuperposition(s.mode_count(), std::move(terms));
}

/// Weyl phase picked up by D(delta)|beta> = phase |beta + delta>.
inline cplx displacement_phase(cplx delta, cplx beta) {
    return std::exp(0.5 * (delta * std::conj(beta) - std::conj(delta) * beta));
}

/// Displacement D(delta) on one mode, including the Weyl phase
/// exp((delta conj(beta) - conj(delta) beta) / 2) on every term.
inline CoherentSuperposition apply_displacement(const CoherentSuperposition& s, cplx delta,
                                                std::size_t mode) {
    detail::check_mode(s, mode);
    auto terms = s.terms();
    for (auto& t : terms) {
        t.coefficient *= displacement_phase(delta, t.amplitudes[mode]);
        t.amplitudes[mode] += delta;
    }
    return CoherentSuperposition(s.mode_count(), std::move(terms));
}

/// <s| n_mode^order |s> for order 1 or 2, using
///   <u|n|v>   = conj(u) v <u|v>
///   <u|n^2|v> = conj(u) v (conj(u) v + 1) <u|v>.
inline double number_moment(const CoherentSuperposition& s, std::size_t mode, int order) {
    detail::check_mode(s, mode);
    if (order != 1 && order != 2) {
        throw DomainError("number_moment supports order 1 or 2, got " + std::to_string(order));
    }
    if (!is_normalized(s)) {
        throw PreconditionError("number_moment requires a normalized state");
    }
    cplx sum = 0.0;
    for (const auto& a : s.terms()) {
        for (const auto& b : s.terms()) {
            const cplx z = std::conj(a.amplitudes[mode]) * b.amplitudes[mode];
            const cplx weight = order == 1 ? z : z * (z + 1.0);
            sum += std::conj(a.coefficient) * b.coefficient * weight *
                   detail::product_overlap(a.amplitudes, b.amplitudes);
        }
    }
    if (std::abs(sum.imag()) > 1e-10 * std::max(1.0, std::abs(sum.real()))) {
        throw PreconditionError("number moment has a non-negligible imaginary part");
    }
    return sum.real();
}

enum class QuasiBell : int { psi1 = 1, psi2 = 2, psi3 = 3, psi4 = 4 };

inline QuasiBell quasi_bell_label(int index) {
    if (index < 1 || index > 4) {
        throw DomainError("quasi-Bell label must be 1..4, got " + std::to_string(index));
    }
    return static_cast<QuasiBell>(index);
}

/// kappa = <alpha|-alpha> = exp(-2|alpha|^2).
inline double kappa(cplx alpha) { return coherent_overlap(alpha, -alpha).real(); }

/// The four quasi-Bell states
///   psi1 ~ |a,a> + |-a,-a>     psi2 ~ |a,a> - |-a,-a>
///   psi3 ~ |a,-a> + |-a,a>     psi4 ~ |a,-a> - |-a,a>
/// with h1 = h3 = 1/sqrt(2(1+kappa^2)) and h2 = h4 = 1/sqrt(2(1-kappa^2)).
inline CoherentSuperposition quasi_bell(QuasiBell label, cplx alpha) {
    const double x = 4.0 * std::norm(alpha);  // kappa^2 = e^{-x}
    const bool plus = label == QuasiBell::psi1 || label == QuasiBell::psi3;
    double h = 0.0;
    if (plus) {
        h = 1.0 / std::sqrt(2.0 * (1.0 + std::exp(-x)));
    } else {
        const double one_minus_kappa_sq = -std::expm1(-x);
        if (!(one_minus_kappa_sq > 0.0)) {
            throw DegenerateStateError("quasi-Bell states 2 and 4 vanish at alpha = 0");
        }
        h = 1.0 / std::sqrt(2.0 * one_minus_kappa_sq);
    }
    const double sign = plus ? 1.0 : -1.0;
    const bool same = label == QuasiBell::psi1 || label == QuasiBell::psi2;
    const cplx b = same ? alpha : -alpha;
    return CoherentSuperposition(2, {CoherentTerm{h, {alpha, b}},
                                     CoherentTerm{sign * h, {-alpha, -b}}});
}

/// h_J (|alpha>|0> + |0>|alpha>), h_J = 1/sqrt(2(1 + exp(-|alpha|^2))).
inline CoherentSuperposition joo_state(cplx alpha) {
    const double h = 1.0 / std::sqrt(2.0 * (1.0 + std::exp(-std::norm(alpha))));
    return CoherentSuperposition(2, {CoherentTerm{h, {alpha, 0.0}}, CoherentTerm{h, {0.0, alpha}}});
}

/// Closed-form off-diagonal D = 2 kappa / (1 + kappa^2) of the quasi-Bell Gram matrix.
inline double quasi_bell_gram_d(cplx alpha) {
    const double k = kappa(alpha);
    return 2.0 * k / (1.0 + k * k);
}

/// Pairwise overlaps <psi_i|psi_j> of the four quasi-Bell states, computed
/// with the general overlap routine. Requires a real kappa.
inline Eigen::Matrix4cd quasi_bell_gram(cplx alpha) {
    const cplx k = coherent_overlap(alpha, -alpha);
    if (std::abs(k.imag()) > 1e-12) {
        throw PreconditionError("kappa is not real; use overlap() on the individual states");
    }
    std::vector<CoherentSuperposition> states;
    for (int i = 1; i <= 4; ++i) {
        states.push_back(quasi_bell(quasi_bell_label(i), alpha));
    }
    Eigen::Matrix4cd gram;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            gram(i, j) = overlap(states[i], states[j]);
        }
    }
    return gram;
}

/// Binary entropy in bits; H(0) = H(1) = 0.
inline double binary_entropy(double p) {
    double h = 0.0;
    if (p > 0.0 && p < 1.0) {
        h = -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
    }
    return h;
}

/// Entanglement of formation (bits). Labels 1 and 3 give H((1 + C13)/2) with
/// C13 = |<psi1|psi3>|; labels 2 and 4 are maximally entangled (exactly 1).
inline double entanglement_of_formation(QuasiBell label, cplx alpha) {
    if (label == QuasiBell::psi2 || label == QuasiBell::psi4) {
        if (alpha == cplx(0.0)) {
            throw DegenerateStateError("quasi-Bell states 2 and 4 vanish at alpha = 0");
        }
        return 1.0;
    }
    const double c13 = std::min(
        1.0, std::abs(overlap(quasi_bell(QuasiBell::psi1, alpha), quasi_bell(QuasiBell::psi3, alpha))));
    return binary_entropy(0.5 * (1.0 + c13));
}

}  // namespace ecs
