// Copyright 2026 The spinq Authors
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

/**
 * @file
 * Two-spin states, the singlet, factorizability and joint measurement
 * probabilities.
 *
 * A TwoSpinState stores amplitudes relative to two reference directions
 * e_a and e_b, ordered ++, +-, -+, --: amplitude k multiplies
 * |eps_a e_a> (x) |eps_b e_b> with eps_a = sign of bit 1, eps_b = sign of bit 0.
 */

#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <span>

#include "spinq/common.hpp"
#include "spinq/qcore.hpp"
#include "spinq/spin.hpp"

namespace spinq {

/// Position of the (eps_a, eps_b) amplitude in the ++, +-, -+, -- ordering.
inline constexpr std::size_t pair_index(Sign eps_a, Sign eps_b) {
    return (eps_a == Sign::Plus ? 0u : 2u) + (eps_b == Sign::Plus ? 0u : 1u);
}

inline constexpr std::array<std::pair<Sign, Sign>, 4> kSignPairs{{
    {Sign::Plus, Sign::Plus},
    {Sign::Plus, Sign::Minus},
    {Sign::Minus, Sign::Plus},
    {Sign::Minus, Sign::Minus},
}};

class TwoSpinState {
  public:
    TwoSpinState(PureState amps, Direction e_a, Direction e_b)
        : amps_(std::move(amps)), e_a_(e_a), e_b_(e_b) {
        if (amps_.dim() != 4) {
            throw ValidationError("a two-spin state needs 4 amplitudes");
        }
    }

    const PureState &amps() const { return amps_; }
    const Complex &alpha(Sign eps_a, Sign eps_b) const { return amps_[pair_index(eps_a, eps_b)]; }
    const Direction &e_a() const { return e_a_; }
    const Direction &e_b() const { return e_b_; }

    /// The same state expanded in the z (x) z computational basis.
    PureState computational() const {
        const auto pa = basis_pair(e_a_);
        const auto pb = basis_pair(e_b_);
        std::array<Complex, 4> out{};
        for (const auto &[sa, sb] : kSignPairs) {
            const PureState &ka = eigenstate(pa, sa);
            const PureState &kb = eigenstate(pb, sb);
            const Complex c = alpha(sa, sb);
            for (std::size_t i = 0; i < 2; ++i) {
                for (std::size_t j = 0; j < 2; ++j) {
                    out[2 * i + j] += c * ka[i] * kb[j];
                }
            }
        }
        return PureState::normalize(out);
    }

  private:
    PureState amps_;
    Direction e_a_;
    Direction e_b_;
};

/// Normalizes `alphas` into a state relative to (e_a, e_b). Rejects the zero vector.
inline TwoSpinState make_two_spin(std::span<const Complex, 4> alphas, const Direction &e_a,
                                  const Direction &e_b) {
    return TwoSpinState(PureState::normalize(alphas), e_a, e_b);
}

inline TwoSpinState make_two_spin(std::array<Complex, 4> alphas,
                                  const Direction &e_a = Direction::plus_z(),
                                  const Direction &e_b = Direction::plus_z()) {
    return make_two_spin(std::span<const Complex, 4>(alphas), e_a, e_b);
}

/// (|+,-> - |-,+>) / sqrt(2) along +z for both spins.
inline TwoSpinState singlet() {
    const double h = 1.0 / std::sqrt(2.0);
    return make_two_spin({Complex{0.0, 0.0}, Complex{h, 0.0}, Complex{-h, 0.0}, Complex{0.0, 0.0}});
}

/// det of C with C[i][j] the amplitude of (i on A, j on B).
inline Complex coefficient_determinant(const TwoSpinState &s) {
    const auto &a = s.amps();
    return a[0] * a[3] - a[1] * a[2];
}

struct FactorizationResult {
    bool factorizable;
    /// Factors relative to e_a and e_b respectively; present iff factorizable.
    std::optional<PureState> factor_a;
    std::optional<PureState> factor_b;
    /// |det C|, in [0, 1/2].
    double defect;
};

/**
 * Factorizable iff |det C| <= tol. Factors come from the column and row
 * through the largest-magnitude entry of C: for C = u v^T those are
 * proportional to u and v.
 */
inline FactorizationResult factorize(const TwoSpinState &s, double tol = kNormTol) {
    const double defect = std::abs(coefficient_determinant(s));
    if (defect > tol) {
        return {false, std::nullopt, std::nullopt, defect};
    }
    const auto &a = s.amps();
    std::size_t best = 0;
    for (std::size_t k = 1; k < 4; ++k) {
        if (std::abs(a[k]) > std::abs(a[best])) {
            best = k;
        }
    }
    const std::size_t row = best / 2;
    const std::size_t col = best % 2;
    const std::array<Complex, 2> column{a[col], a[2 + col]};
    const std::array<Complex, 2> rowv{a[2 * row], a[2 * row + 1]};
    return {true, PureState::normalize(column), PureState::normalize(rowv), defect};
}

/// 2 |det C|: 0 exactly on product states, 1 for the singlet.
inline double entanglement_score(const TwoSpinState &s) {
    return 2.0 * std::abs(coefficient_determinant(s));
}

/// Closed form for the singlet: (1/4)(1 - eps_a eps_b a.b).
inline double singlet_joint_prob(Sign eps_a, const Direction &a, Sign eps_b, const Direction &b) {
    return 0.25 * (1.0 - static_cast<double>(to_int(eps_a) * to_int(eps_b)) * dot(a, b));
}

/// (<eps_a a| (x) <eps_b b|) |psi>.
inline Complex joint_amplitude(const TwoSpinState &s, Sign eps_a, const Direction &a, Sign eps_b,
                               const Direction &b) {
    const PureState psi = s.computational();
    const PureState ka = eigenstate(basis_pair(a), eps_a);
    const PureState kb = eigenstate(basis_pair(b), eps_b);
    return inner_product(tensor_product(ka, kb), psi);
}

/// |(<eps_a a| (x) <eps_b b|) |psi>|^2, by direct projection.
inline double joint_prob_general(const TwoSpinState &s, Sign eps_a, const Direction &a, Sign eps_b,
                                 const Direction &b) {
    return std::norm(joint_amplitude(s, eps_a, a, eps_b, b));
}

/// All four joint probabilities in ++, +-, -+, -- order.
inline std::array<double, 4> joint_table(const TwoSpinState &s, const Direction &a,
                                         const Direction &b) {
    const PureState psi = s.computational();
    const auto pa = basis_pair(a);
    const auto pb = basis_pair(b);
    std::array<double, 4> p{};
    for (const auto &[sa, sb] : kSignPairs) {
        const auto ket = tensor_product(eigenstate(pa, sa), eigenstate(pb, sb));
        p[pair_index(sa, sb)] = std::norm(inner_product(ket, psi));
    }
    return p;
}

}  // namespace spinq
