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
 * Projective measurement: Born-rule sampling with collapse, frequency
 * estimates, sample averages, superposition-versus-mixture discrimination
 * and the many-copies estimation study.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spinq/common.hpp"
#include "spinq/qcore.hpp"
#include "spinq/rng.hpp"
#include "spinq/spin.hpp"

namespace spinq {

/**
 * Inverse-CDF sampler over a fixed, left-to-right ordered outcome list.
 * A draw u in (0, 1) selects the first index whose cumulative probability
 * exceeds u. Outcomes of probability zero are never returned.
 */
class DiscreteSampler {
  public:
    explicit DiscreteSampler(std::span<const double> probs) {
        if (probs.empty()) {
            throw ValidationError("sampler needs at least one outcome");
        }
        cumulative_.reserve(probs.size());
        double acc = 0.0;
        for (std::size_t i = 0; i < probs.size(); ++i) {
            if (!(probs[i] >= 0.0)) {
                throw ValidationError("outcome probabilities must be nonnegative");
            }
            acc += probs[i];
            cumulative_.push_back(acc);
            if (probs[i] > 0.0) {
                last_positive_ = i;
            }
        }
        if (std::abs(acc - 1.0) > kNormTol) {
            throw ValidationError("outcome probabilities must sum to 1");
        }
    }

    std::size_t draw(RngStream &rng) const {
        const double u = rng.uniform();
        for (std::size_t i = 0; i < cumulative_.size(); ++i) {
            if (u < cumulative_[i]) {
                return i;
            }
        }
        // u landed in the rounding gap above the final partial sum.
        return last_positive_;
    }

    std::size_t size() const { return cumulative_.size(); }

  private:
    std::vector<double> cumulative_;
    std::size_t last_positive_ = 0;
};

inline std::vector<PureState> computational_basis(std::size_t dim) {
    require_supported_dim(dim);
    std::vector<PureState> basis;
    for (std::size_t i = 0; i < dim; ++i) {
        basis.push_back(PureState::basis(dim, i));
    }
    return basis;
}

/// (|+e>, |-e>) as a measurement basis.
inline std::vector<PureState> spin_basis(const Direction &e) {
    auto [plus, minus] = basis_pair(e);
    return {std::move(plus), std::move(minus)};
}

/// Rejects a basis that is not orthonormal and complete for `dim`.
inline void require_orthonormal_basis(std::span<const PureState> basis, std::size_t dim) {
    if (basis.size() != dim) {
        throw ValidationError("basis must have exactly " + std::to_string(dim) + " elements");
    }
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (basis[i].dim() != dim) {
            throw ValidationError("basis element has the wrong dimension");
        }
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            if (std::abs(inner_product(basis[i], basis[j])) > kNormTol) {
                throw ValidationError("basis is not orthonormal");
            }
        }
    }
}

/// |<basis_i|psi>|^2 for each basis element.
inline std::vector<double> born_probabilities(const PureState &psi, std::span<const PureState> basis) {
    require_orthonormal_basis(basis, psi.dim());
    std::vector<double> p;
    p.reserve(basis.size());
    for (const auto &b : basis) {
        p.push_back(std::norm(inner_product(b, psi)));
    }
    return p;
}

struct MeasurementOutcome {
    std::size_t index;
    double value;
    PureState collapsed;
};

/// Spin values +1/2, -1/2 for a two-outcome basis.
inline std::vector<double> default_values(std::size_t dim) {
    if (dim == 2) {
        return {0.5, -0.5};
    }
    throw ValidationError("no default observable values for dimension " + std::to_string(dim));
}

inline MeasurementOutcome measure_once(const PureState &psi, std::span<const PureState> basis,
                                       std::span<const double> values, RngStream &rng) {
    if (values.size() != basis.size()) {
        throw ValidationError("need one observable value per basis element");
    }
    const auto probs = born_probabilities(psi, basis);
    const std::size_t i = DiscreteSampler(probs).draw(rng);
    return {i, values[i], basis[i]};
}

inline MeasurementOutcome measure_once(const PureState &psi, std::span<const PureState> basis,
                                       RngStream &rng) {
    const auto values = default_values(basis.size());
    return measure_once(psi, basis, values, rng);
}

/// Outcome counts n_i over M shots.
struct FrequencyEstimate {
    std::vector<std::uint64_t> counts;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;

    double ratio(std::size_t i) const {
        return static_cast<double>(counts.at(i)) / static_cast<double>(shots);
    }

    friend bool operator==(const FrequencyEstimate &, const FrequencyEstimate &) = default;
};

inline FrequencyEstimate sample_frequencies(const PureState &psi, std::span<const PureState> basis,
                                            std::uint64_t shots, RngStream &rng) {
    if (shots == 0) {
        throw ValidationError("shots must be at least 1");
    }
    const auto probs = born_probabilities(psi, basis);
    const DiscreteSampler sampler(probs);
    FrequencyEstimate est{std::vector<std::uint64_t>(basis.size(), 0), shots, rng.seed()};
    for (std::uint64_t s = 0; s < shots; ++s) {
        ++est.counts[sampler.draw(rng)];
    }
    return est;
}

/// sum_i values_i n_i / M.
inline double estimate_average(const FrequencyEstimate &freq, std::span<const double> values) {
    if (values.size() != freq.counts.size()) {
        throw ValidationError("need one value per outcome count");
    }
    if (freq.shots == 0) {
        throw ValidationError("frequency estimate has no shots");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        acc += values[i] * static_cast<double>(freq.counts[i]);
    }
    return acc / static_cast<double>(freq.shots);
}

/// Binomial standard error sqrt(p (1 - p) / M).
inline double binomial_sigma(double p, std::uint64_t shots) {
    return std::sqrt(p * (1.0 - p) / static_cast<double>(shots));
}

/// The statistical test width used throughout: 4 sigma.
inline constexpr double kSigmaWidth = 4.0;

/// |observed - expected| <= 4 sigma, with sigma = 0 demanding exact agreement.
inline bool within_sigma(double observed, double expected, std::uint64_t shots,
                         double width = kSigmaWidth) {
    return std::abs(observed - expected) <= width * binomial_sigma(expected, shots);
}

/**
 * The mixture with the same z-basis populations as `psi` and no coherence:
 * sum_i |C_i|^2 |i><i|.
 */
inline DensityMatrix diagonal_mixture(const PureState &psi) {
    const auto basis = computational_basis(psi.dim());
    std::vector<double> w;
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        w.push_back(std::norm(psi[i]));
    }
    // Absorb roundoff so the weights sum to 1 within the mix tolerance.
    double total = 0.0;
    for (double v : w) {
        total += v;
    }
    for (double &v : w) {
        v /= total;
    }
    return mix(basis, w);
}

struct PhaseDiscrimination {
    double p_pure;
    double p_mixed;

    double gap() const { return std::abs(p_pure - p_mixed); }
};

/**
 * Probability of the +analysis outcome for a superposition and for the
 * mixture that shares its z-basis populations.
 */
inline PhaseDiscrimination discriminate_phase(const PureState &psi, const DensityMatrix &rho,
                                              const Direction &analysis) {
    require_single_spin(psi);
    if (rho.dim() != psi.dim()) {
        throw ValidationError("state and density matrix must have the same dimension");
    }
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        if (std::abs(std::norm(psi[i]) - rho(i, i).real()) > kNormTol) {
            throw ValidationError(
                "state and density matrix must share z-basis populations to be compared");
        }
    }
    const auto [plus, minus] = basis_pair(analysis);
    return {std::norm(inner_product(plus, psi)), expectation_in(rho, plus)};
}

/**
 * Phase-sensitive protocol for a single spin: analyse along +x and +y.
 * With C_0* C_1 = r e^{i delta}, p(+x) = 1/2 + r cos(delta) and
 * p(+y) = 1/2 + r sin(delta); a mixture gives 1/2 for both.
 */
struct PhaseProtocolResult {
    PhaseDiscrimination along_x;
    PhaseDiscrimination along_y;
    /// r for the superposition; 0 means no phase information.
    double pure_coherence;
    double mixed_coherence;
    /// delta in [0, 2 pi) recovered from the pure-state probabilities.
    double recovered_phase;
};

inline PhaseProtocolResult phase_protocol(const PureState &psi, const DensityMatrix &rho) {
    const auto x = discriminate_phase(psi, rho, Direction::plus_x());
    const auto y = discriminate_phase(psi, rho, Direction::plus_y());
    const double pure_coherence = std::hypot(x.p_pure - 0.5, y.p_pure - 0.5);
    const double mixed_coherence = std::hypot(x.p_mixed - 0.5, y.p_mixed - 0.5);
    double delta = std::atan2(y.p_pure - 0.5, x.p_pure - 0.5);
    if (delta < 0.0) {
        delta += kTwoPi;
    }
    if (delta >= kTwoPi) {
        delta = 0.0;
    }
    return {x, y, pure_coherence, mixed_coherence, delta};
}

struct ScalingRow {
    std::uint64_t shots;
    double rmse;
};

/**
 * For each M in `shot_counts`, the root-mean-square error of n_0 / M as an
 * estimate of |C_0|^2 over `trials` independent z-basis runs.
 */
inline std::vector<ScalingRow> estimation_scaling(const PureState &psi,
                                                  std::span<const std::uint64_t> shot_counts,
                                                  std::uint64_t trials, RngStream &rng) {
    if (trials < 30) {
        throw ValidationError("estimation_scaling needs at least 30 trials");
    }
    for (std::size_t i = 0; i < shot_counts.size(); ++i) {
        if (shot_counts[i] == 0) {
            throw ValidationError("shot counts must be positive");
        }
        if (i > 0 && shot_counts[i] <= shot_counts[i - 1]) {
            throw ValidationError("shot counts must be strictly ascending");
        }
    }
    const auto basis = computational_basis(psi.dim());
    const double truth = std::norm(psi[0]);
    std::vector<ScalingRow> rows;
    for (const std::uint64_t m : shot_counts) {
        double sq = 0.0;
        for (std::uint64_t t = 0; t < trials; ++t) {
            const auto est = sample_frequencies(psi, basis, m, rng);
            const double err = est.ratio(0) - truth;
            sq += err * err;
        }
        rows.push_back({m, std::sqrt(sq / static_cast<double>(trials))});
    }
    return rows;
}

}  // namespace spinq
