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

// Truncated photon-number representation. Everything here is computed from
// dense amplitude vectors by direct summation and serves as the independent
// numeric check on the closed forms in coherent.hpp.
//
// Number statistics are evaluated on the full (pure) ket. For an observable
// acting on mode A alone this coincides with evaluating it on the reduced
// state Tr_B |k><k|, so no partial trace is needed for the variance.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ecs/coherent.hpp"
#include "ecs/errors.hpp"

namespace ecs {

/// Amplitudes over {0..cutoff-1}^modes, row-major with mode A slowest.
/// At most two modes.
class FockKet {
   public:
    FockKet(std::size_t cutoff, std::size_t mode_count, std::vector<cplx> amplitudes)
        : cutoff_(cutoff), mode_count_(mode_count), amplitudes_(std::move(amplitudes)) {
        if (cutoff_ == 0) {
            throw DimensionError("Fock cutoff must be positive");
        }
        if (mode_count_ != 1 && mode_count_ != 2) {
            throw DimensionError("FockKet supports one or two modes, got " +
                                 std::to_string(mode_count_));
        }
        if (amplitudes_.size() != dimension()) {
            throw DimensionError("FockKet expects " + std::to_string(dimension()) +
                                 " amplitudes, got " + std::to_string(amplitudes_.size()));
        }
        const double n2 = norm_squared();
        if (!(n2 > 0.0) || n2 > 1.0 + 1e-9) {
            throw NotAStateError("FockKet norm^2 must lie in (0, 1 + 1e-9], got " +
                                 std::to_string(n2));
        }
    }

    std::size_t cutoff() const { return cutoff_; }
    std::size_t mode_count() const { return mode_count_; }
    std::size_t dimension() const {
        return mode_count_ == 1 ? cutoff_ : cutoff_ * cutoff_;
    }
    const std::vector<cplx>& amplitudes() const { return amplitudes_; }

    cplx operator()(std::size_t m) const { return amplitudes_[m]; }
    cplx operator()(std::size_t m, std::size_t n) const { return amplitudes_[m * cutoff_ + n]; }

    double norm_squared() const {
        double s = 0.0;
        for (const auto& a : amplitudes_) {
            s += std::norm(a);
        }
        return s;
    }

   private:
    std::size_t cutoff_;
    std::size_t mode_count_;
    std::vector<cplx> amplitudes_;
};

struct FockDensity {
    std::size_t cutoff = 0;
    std::size_t mode_count = 1;
    Eigen::MatrixXcd matrix;

    double trace() const { return matrix.trace().real(); }

    /// Ascending eigenvalues; values in [-1e-10, 0) are clipped to zero.
    Eigen::VectorXd eigenvalues() const {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix, Eigen::EigenvaluesOnly);
        Eigen::VectorXd ev = solver.eigenvalues();
        for (auto& v : ev) {
            if (v < 0.0 && v >= -1e-10) {
                v = 0.0;
            }
        }
        return ev;
    }

    double purity() const { return (matrix * matrix).trace().real(); }
};

/// log of the Poisson weight e^{-A^2} A^{2n} / n!.
inline double log_poisson_weight(double amplitude, std::size_t n) {
    if (amplitude == 0.0) {
        return n == 0 ? 0.0 : -INFINITY;
    }
    const double dn = static_cast<double>(n);
    return -amplitude * amplitude + 2.0 * dn * std::log(amplitude) - std::lgamma(dn + 1.0);
}

/// Photon-number probability beyond the cutoff, sum_{n >= cutoff} of the
/// Poisson weights, summed directly (no 1 - partial sum cancellation).
inline double poisson_tail(double amplitude, std::size_t cutoff) {
    const double mean = amplitude * amplitude;
    double tail = 0.0;
    for (std::size_t n = cutoff;; ++n) {
        const double w = std::exp(log_poisson_weight(amplitude, n));
        tail += w;
        if (static_cast<double>(n) > mean && w <= 1e-18 * tail) {
            break;
        }
        if (w == 0.0 && static_cast<double>(n) > mean) {
            break;
        }
    }
    return tail;
}

/// Smallest cutoff (at least 8) whose Poisson tail for |alpha| = max_amplitude
/// is below tail_tolerance.
inline std::size_t choose_truncation(double max_amplitude, double tail_tolerance) {
    if (!(max_amplitude >= 0.0)) {
        throw DomainError("max_amplitude must be non-negative");
    }
    if (!(tail_tolerance > 0.0 && tail_tolerance < 1.0)) {
        throw DomainError("tail_tolerance must lie in (0, 1)");
    }
    std::size_t cutoff = 8;
    while (poisson_tail(max_amplitude, cutoff) > tail_tolerance) {
        ++cutoff;
    }
    return cutoff;
}

/// c_n = e^{-|alpha|^2/2} alpha^n / sqrt(n!), n < cutoff.
inline std::vector<cplx> coherent_amplitudes(cplx alpha, std::size_t cutoff) {
    std::vector<cplx> c(cutoff);
    if (cutoff == 0) {
        return c;
    }
    c[0] = std::exp(-0.5 * std::norm(alpha));
    for (std::size_t n = 1; n < cutoff; ++n) {
        c[n] = c[n - 1] * alpha / std::sqrt(static_cast<double>(n));
    }
    return c;
}

inline FockKet coherent_ket(cplx alpha, std::size_t cutoff) {
    if (cutoff == 0) {
        throw DimensionError("cutoff must be at least 1");
    }
    return FockKet(cutoff, 1, coherent_amplitudes(alpha, cutoff));
}

/// (|N>|0> + |0>|N>) / sqrt(2).
inline FockKet noon_ket(std::size_t photons, std::size_t cutoff) {
    if (photons == 0) {
        throw DomainError("NOON state needs at least one photon");
    }
    if (cutoff <= photons) {
        throw DimensionError("NOON state with N = " + std::to_string(photons) +
                             " needs cutoff > N, got " + std::to_string(cutoff));
    }
    std::vector<cplx> amps(cutoff * cutoff);
    amps[photons * cutoff] = 1.0 / std::numbers::sqrt2;
    amps[photons] = 1.0 / std::numbers::sqrt2;
    return FockKet(cutoff, 2, std::move(amps));
}

/// Image of a normalized one- or two-mode superposition in the truncated basis.
inline FockKet to_fock_ket(const CoherentSuperposition& s, std::size_t cutoff) {
    if (s.mode_count() > 2) {
        throw DimensionError("to_fock_ket supports at most two modes");
    }
    if (!is_normalized(s)) {
        throw PreconditionError("to_fock_ket requires a normalized state");
    }
    const std::size_t dim = s.mode_count() == 1 ? cutoff : cutoff * cutoff;
    std::vector<cplx> amps(dim);
    for (const auto& t : s.terms()) {
        const auto a = coherent_amplitudes(t.amplitudes[0], cutoff);
        if (s.mode_count() == 1) {
            for (std::size_t m = 0; m < cutoff; ++m) {
                amps[m] += t.coefficient * a[m];
            }
            continue;
        }
        const auto b = coherent_amplitudes(t.amplitudes[1], cutoff);
        for (std::size_t m = 0; m < cutoff; ++m) {
            const cplx ca = t.coefficient * a[m];
            for (std::size_t n = 0; n < cutoff; ++n) {
                amps[m * cutoff + n] += ca * b[n];
            }
        }
    }
    return FockKet(cutoff, s.mode_count(), std::move(amps));
}

inline cplx inner_product(const FockKet& k1, const FockKet& k2) {
    if (k1.cutoff() != k2.cutoff() || k1.mode_count() != k2.mode_count()) {
        throw DimensionError("inner_product of kets with different cutoff or mode count");
    }
    cplx sum = 0.0;
    const auto& a = k1.amplitudes();
    const auto& b = k2.amplitudes();
    for (std::size_t i = 0; i < a.size(); ++i) {
        sum += std::conj(a[i]) * b[i];
    }
    return sum;
}

/// rho_A[m, n] = sum_j amp[m, j] conj(amp[n, j]). Not renormalized.
inline FockDensity partial_trace_b(const FockKet& k) {
    if (k.mode_count() != 2) {
        throw DimensionError("partial_trace_b needs a two-mode ket");
    }
    const std::size_t d = k.cutoff();
    Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> psi(
        k.amplitudes().data(), static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    FockDensity rho{d, 1, psi * psi.adjoint()};
    return rho;
}

/// -sum lambda log2 lambda over eigenvalues above 1e-12, in bits.
inline double von_neumann_entropy(const FockDensity& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.matrix, Eigen::EigenvaluesOnly);
    double entropy = 0.0;
    for (double lambda : solver.eigenvalues()) {
        if (lambda < -1e-8) {
            throw NotAStateError("density matrix has eigenvalue " + std::to_string(lambda));
        }
        if (lambda > 1e-12) {
            entropy -= lambda * std::log2(lambda);
        }
    }
    return entropy;
}

namespace detail {

inline std::size_t photons_in_mode(const FockKet& k, std::size_t index, std::size_t mode) {
    if (k.mode_count() == 1) {
        return index;
    }
    return mode == 0 ? index / k.cutoff() : index % k.cutoff();
}

inline void check_fock_mode(const FockKet& k, std::size_t mode) {
    if (mode >= k.mode_count()) {
        throw DimensionError("mode " + std::to_string(mode) + " out of range for " +
                             std::to_string(k.mode_count()) + "-mode ket");
    }
}

}  // namespace detail

/// <n_mode> with the ket renormalized.
inline double number_mean(const FockKet& k, std::size_t mode) {
    detail::check_fock_mode(k, mode);
    double first = 0.0;
    const auto& amps = k.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        first += std::norm(amps[i]) * static_cast<double>(detail::photons_in_mode(k, i, mode));
    }
    return first / k.norm_squared();
}

/// <n^2> - <n>^2 for n on the given mode, ket renormalized.
inline double number_variance(const FockKet& k, std::size_t mode) {
    detail::check_fock_mode(k, mode);
    const double mean = number_mean(k, mode);
    double central = 0.0;
    const auto& amps = k.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const double d = static_cast<double>(detail::photons_in_mode(k, i, mode)) - mean;
        central += std::norm(amps[i]) * d * d;
    }
    return central / k.norm_squared();
}

}  // namespace ecs
