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
 * Bell's inequality for three directions: the quantum prediction for the
 * singlet, classical joint distributions over definite spin components,
 * local hidden-variable feasibility and Monte Carlo joint measurements.
 *
 * Every quantity here is the combination
 *     p(+a; +b) + p(+b; +c) - p(+a; +c)
 * where p(+u; +v) is the probability that spin A along u and spin B along v
 * both give +1/2. A classical model that reproduces the singlet's perfect
 * anticorrelation and uses nonnegative probabilities keeps it >= 0; the
 * quantum value goes negative for suitable directions.
 *
 * Only the nonnegative-probability case is modelled. Allowing negative
 * joint probabilities is the other classical escape route and is out of
 * scope.
 */

#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "spinq/common.hpp"
#include "spinq/entangle.hpp"
#include "spinq/measure.hpp"
#include "spinq/rng.hpp"
#include "spinq/spin.hpp"

namespace spinq {

struct DirectionTriple {
    Direction a;
    Direction b;
    Direction c;

    /// Directions in the x-z plane at polar angles 0, theta_ab and theta_ab + theta_bc.
    static DirectionTriple coplanar(double theta_ab, double theta_bc) {
        const auto in_plane = [](double t) {
            return Direction::normalized(std::sin(t), 0.0, std::cos(t));
        };
        return {in_plane(0.0), in_plane(theta_ab), in_plane(theta_ab + theta_bc)};
    }

    double theta_ab() const { return angle_between(a, b); }
    double theta_bc() const { return angle_between(b, c); }
    double theta_ac() const { return angle_between(a, c); }
};

struct BellResult {
    double lhs;
    bool violated;
    DirectionTriple triple;
};

inline BellResult make_bell_result(double lhs, const DirectionTriple &t) {
    return {lhs, lhs < -kBellTol, t};
}

/// Bell combination from three values of p(+u; +v).
inline double bell_combination(double p_ab, double p_bc, double p_ac) { return p_ab + p_bc - p_ac; }

/// Sum of singlet probabilities from the closed form (1/4)(1 - a.b).
inline double singlet_bell_from_joint(const DirectionTriple &t) {
    return bell_combination(singlet_joint_prob(Sign::Plus, t.a, Sign::Plus, t.b),
                            singlet_joint_prob(Sign::Plus, t.b, Sign::Plus, t.c),
                            singlet_joint_prob(Sign::Plus, t.a, Sign::Plus, t.c));
}

/// (1/2)[sin^2(theta_ab/2) + sin^2(theta_bc/2) - sin^2(theta_ac/2)].
inline double singlet_bell_from_angles(const DirectionTriple &t) {
    const auto s2 = [](double theta) {
        const double s = std::sin(0.5 * theta);
        return s * s;
    };
    return 0.5 * (s2(t.theta_ab()) + s2(t.theta_bc()) - s2(t.theta_ac()));
}

/**
 * Quantum value of the Bell combination for the singlet. Evaluated from
 * the joint-probability law and from the half-angle form; a disagreement
 * beyond 1e-12 throws CrossCheckError. Returns the half-angle value.
 *
 * At coplanar theta_ab = theta_bc = pi/3 this is -1/8.
 */
inline double quantum_bell_lhs(const DirectionTriple &t) {
    const double via_joint = singlet_bell_from_joint(t);
    const double via_angles = singlet_bell_from_angles(t);
    if (std::abs(via_joint - via_angles) > kExactTol) {
        throw CrossCheckError("Bell combination mismatch: joint-probability form " +
                              std::to_string(via_joint) + " vs half-angle form " +
                              std::to_string(via_angles));
    }
    return via_angles;
}

inline BellResult quantum_bell(const DirectionTriple &t) {
    return make_bell_result(quantum_bell_lhs(t), t);
}

/// Slot of a direction within the triple.
enum class Axis : std::uint8_t { A = 0, B = 1, C = 2 };

inline constexpr std::array<Axis, 3> kAxes{Axis::A, Axis::B, Axis::C};

/**
 * Definite values of all three components on both spins,
 * (s_a, s_b, s_c; t_a, t_b, t_c). Index bit 5 - k holds spin A's slot k and
 * bit 2 - k spin B's slot k, 1 meaning minus; "+++;+++" is index 0.
 */
struct Assignment {
    std::array<Sign, 3> spin_a;
    std::array<Sign, 3> spin_b;

    static Assignment from_index(std::size_t index) {
        if (index >= 64) {
            throw ValidationError("assignment index out of range");
        }
        Assignment out{};
        for (std::size_t k = 0; k < 3; ++k) {
            out.spin_a[k] = (index >> (5 - k)) & 1u ? Sign::Minus : Sign::Plus;
            out.spin_b[k] = (index >> (2 - k)) & 1u ? Sign::Minus : Sign::Plus;
        }
        return out;
    }

    std::size_t index() const {
        std::size_t i = 0;
        for (std::size_t k = 0; k < 3; ++k) {
            if (spin_a[k] == Sign::Minus) {
                i |= std::size_t{1} << (5 - k);
            }
            if (spin_b[k] == Sign::Minus) {
                i |= std::size_t{1} << (2 - k);
            }
        }
        return i;
    }

    Sign on_a(Axis x) const { return spin_a[static_cast<std::size_t>(x)]; }
    Sign on_b(Axis x) const { return spin_b[static_cast<std::size_t>(x)]; }

    /// Spin B opposite to spin A on every slot.
    bool anticorrelated() const {
        for (std::size_t k = 0; k < 3; ++k) {
            if (spin_b[k] == spin_a[k]) {
                return false;
            }
        }
        return true;
    }

    std::string label() const {
        std::string s;
        for (Sign v : spin_a) {
            s += to_char(v);
        }
        s += ';';
        for (Sign v : spin_b) {
            s += to_char(v);
        }
        return s;
    }
};

/// Nonnegative weights over the 64 assignments, summing to 1 within 1e-12.
class JointDistribution {
  public:
    static constexpr std::size_t kSize = 64;

    static JointDistribution from_weights(const std::array<double, kSize> &w) {
        double total = 0.0;
        for (double v : w) {
            if (!(v >= 0.0) || !std::isfinite(v)) {
                throw ValidationError("joint distribution weights must be nonnegative");
            }
            total += v;
        }
        if (std::abs(total - 1.0) > kExactTol) {
            throw ValidationError("joint distribution weights must sum to 1");
        }
        return JointDistribution(w);
    }

    static JointDistribution point_mass(std::size_t index) {
        std::array<double, kSize> w{};
        w.at(index) = 1.0;
        return JointDistribution(w);
    }

    static JointDistribution uniform() {
        std::array<double, kSize> w{};
        w.fill(1.0 / static_cast<double>(kSize));
        return JointDistribution(w);
    }

    double weight(std::size_t index) const { return weights_.at(index); }
    const std::array<double, kSize> &weights() const { return weights_; }

  private:
    explicit JointDistribution(const std::array<double, kSize> &w) : weights_(w) {}

    std::array<double, kSize> weights_;
};

/// Which component of spin A and which of spin B a pairwise marginal refers to.
struct PairSelector {
    Axis on_a;
    Axis on_b;
};

/// p(sign_a on_a; sign_b on_b), summing out the four unconstrained slots.
inline double marginal_pair(const JointDistribution &dist, PairSelector which, Sign sign_a,
                            Sign sign_b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < JointDistribution::kSize; ++i) {
        const auto cfg = Assignment::from_index(i);
        if (cfg.on_a(which.on_a) == sign_a && cfg.on_b(which.on_b) == sign_b) {
            acc += dist.weight(i);
        }
    }
    return acc;
}

/**
 * The singlet's perfect anticorrelation as a constraint on a classical
 * distribution: p(+e; +e) = p(-e; -e) = 0 for e in {a, b, c}.
 */
inline bool is_perfectly_anticorrelated(const JointDistribution &dist, double tol = kExactTol) {
    for (Axis x : kAxes) {
        if (marginal_pair(dist, {x, x}, Sign::Plus, Sign::Plus) > tol ||
            marginal_pair(dist, {x, x}, Sign::Minus, Sign::Minus) > tol) {
            return false;
        }
    }
    return true;
}

/**
 * Bell combination of a classical distribution. Nonnegative whenever the
 * distribution is perfectly anticorrelated; distributions without that
 * property can go as low as -1.
 */
inline BellResult classical_bell_check(const JointDistribution &dist, const DirectionTriple &t) {
    const double p_ab = marginal_pair(dist, {Axis::A, Axis::B}, Sign::Plus, Sign::Plus);
    const double p_bc = marginal_pair(dist, {Axis::B, Axis::C}, Sign::Plus, Sign::Plus);
    const double p_ac = marginal_pair(dist, {Axis::A, Axis::C}, Sign::Plus, Sign::Plus);
    return make_bell_result(bell_combination(p_ab, p_bc, p_ac), t);
}

/// The 8 anticorrelated assignments, indexed by spin A's signs (bit 2 - k = slot k).
inline Assignment anticorrelated_assignment(std::size_t k) {
    if (k >= 8) {
        throw ValidationError("anticorrelated assignment index out of range");
    }
    Assignment out{};
    for (std::size_t s = 0; s < 3; ++s) {
        out.spin_a[s] = (k >> (2 - s)) & 1u ? Sign::Minus : Sign::Plus;
        out.spin_b[s] = flip(out.spin_a[s]);
    }
    return out;
}

struct LhvCertificate {
    /// Over all basic solutions of the equality system, the largest smallest weight.
    double best_min_weight;
    /// Farkas multipliers y on rows (ab, bc, ac, normalization): y^T A >= 0 and y^T q < 0.
    std::array<double, 4> multipliers;
    /// min over assignments of y^T A; >= 0 makes the certificate valid.
    double min_column_value;
    /// y^T q, negative for a valid certificate.
    double target_value;
};

struct LhvReport {
    bool feasible;
    std::optional<std::array<double, 8>> weights;
    std::optional<LhvCertificate> certificate;
    double quantum_lhs;
    /// Singlet values of p(+a; +b), p(+b; +c), p(+a; +c).
    std::array<double, 3> targets;
};

namespace detail {

/// Solves the 4 x 4 system m x = rhs with partial pivoting; nullopt when singular.
inline std::optional<std::array<double, 4>> solve4(std::array<std::array<double, 4>, 4> m,
                                                   std::array<double, 4> rhs) {
    for (std::size_t col = 0; col < 4; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < 4; ++r) {
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) {
                piv = r;
            }
        }
        if (std::abs(m[piv][col]) < 1e-12) {
            return std::nullopt;
        }
        std::swap(m[piv], m[col]);
        std::swap(rhs[piv], rhs[col]);
        for (std::size_t r = col + 1; r < 4; ++r) {
            const double f = m[r][col] / m[col][col];
            for (std::size_t k = col; k < 4; ++k) {
                m[r][k] -= f * m[col][k];
            }
            rhs[r] -= f * rhs[col];
        }
    }
    std::array<double, 4> x{};
    for (std::size_t i = 4; i-- > 0;) {
        double s = rhs[i];
        for (std::size_t k = i + 1; k < 4; ++k) {
            s -= m[i][k] * x[k];
        }
        x[i] = s / m[i][i];
    }
    return x;
}

/// Row r of the constraint matrix evaluated on anticorrelated assignment k.
inline std::array<double, 4> lhv_column(std::size_t k) {
    const auto cfg = anticorrelated_assignment(k);
    const auto hit = [&](Axis x, Axis y) {
        return cfg.on_a(x) == Sign::Plus && cfg.on_b(y) == Sign::Plus ? 1.0 : 0.0;
    };
    return {hit(Axis::A, Axis::B), hit(Axis::B, Axis::C), hit(Axis::A, Axis::C), 1.0};
}

}  // namespace detail

/**
 * Can a local hidden-variable model reproduce the singlet's pairwise
 * statistics on this triple?
 *
 * The model puts nonnegative weight on the 8 anticorrelated assignments
 * (any weight elsewhere would give p(+e; +e) > 0) and must match the three
 * singlet probabilities p(+a; +b), p(+b; +c), p(+a; +c) plus normalization.
 * Every basic solution of that 4 x 8 system is enumerated (70 column
 * choices). If one has all weights >= -kBellTol it is returned as the
 * witness; otherwise the report carries the best basic solution's smallest
 * weight and a Farkas certificate.
 */
inline LhvReport lhv_feasibility(const DirectionTriple &t) {
    const std::array<double, 3> targets{
        singlet_joint_prob(Sign::Plus, t.a, Sign::Plus, t.b),
        singlet_joint_prob(Sign::Plus, t.b, Sign::Plus, t.c),
        singlet_joint_prob(Sign::Plus, t.a, Sign::Plus, t.c),
    };
    const std::array<double, 4> rhs{targets[0], targets[1], targets[2], 1.0};
    std::array<std::array<double, 4>, 8> columns{};
    for (std::size_t k = 0; k < 8; ++k) {
        columns[k] = detail::lhv_column(k);
    }

    double best_min = -std::numeric_limits<double>::infinity();
    std::array<double, 8> best_weights{};
    for (std::size_t mask = 0; mask < 256; ++mask) {
        if (std::popcount(static_cast<unsigned>(mask)) != 4) {
            continue;
        }
        std::array<std::size_t, 4> chosen{};
        std::size_t n = 0;
        for (std::size_t k = 0; k < 8; ++k) {
            if (mask & (std::size_t{1} << k)) {
                chosen[n++] = k;
            }
        }
        std::array<std::array<double, 4>, 4> m{};
        for (std::size_t r = 0; r < 4; ++r) {
            for (std::size_t c = 0; c < 4; ++c) {
                m[r][c] = columns[chosen[c]][r];
            }
        }
        const auto x = detail::solve4(m, rhs);
        if (!x) {
            continue;
        }
        const double lo = *std::min_element(x->begin(), x->end());
        if (lo > best_min) {
            best_min = lo;
            best_weights.fill(0.0);
            for (std::size_t c = 0; c < 4; ++c) {
                best_weights[chosen[c]] = (*x)[c];
            }
        }
    }

    const double q_lhs = quantum_bell_lhs(t);
    if (best_min >= -kBellTol) {
        for (double &w : best_weights) {
            if (w < 0.0) {
                w = 0.0;
            }
        }
        return {true, best_weights, std::nullopt, q_lhs, targets};
    }

    const std::array<double, 4> y{1.0, 1.0, -1.0, 0.0};
    double min_col = std::numeric_limits<double>::infinity();
    for (const auto &col : columns) {
        double v = 0.0;
        for (std::size_t r = 0; r < 4; ++r) {
            v += y[r] * col[r];
        }
        min_col = std::min(min_col, v);
    }
    double target_value = 0.0;
    for (std::size_t r = 0; r < 4; ++r) {
        target_value += y[r] * rhs[r];
    }
    return {false, std::nullopt, LhvCertificate{best_min, y, min_col, target_value}, q_lhs, targets};
}

/// Spreads anticorrelated weights onto the full 64-assignment distribution.
inline JointDistribution lift_anticorrelated(const std::array<double, 8> &w) {
    std::array<double, JointDistribution::kSize> full{};
    for (std::size_t k = 0; k < 8; ++k) {
        full[anticorrelated_assignment(k).index()] = w[k];
    }
    return JointDistribution::from_weights(full);
}

struct ScanRow {
    double theta_ab;
    double theta_bc;
    double theta_ac;
    double lhs;
    bool violated;
};

struct ScanResult {
    std::vector<ScanRow> rows;
    std::size_t min_index = 0;

    const ScanRow &minimum() const { return rows.at(min_index); }
};

/**
 * Coplanar sweep: theta_ab and theta_bc each run over k * step for
 * k = 1 .. floor(max_angle / step), with theta_ac = theta_ab + theta_bc.
 */
inline ScanResult bell_scan(double step, double max_angle = kPi) {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw ValidationError("scan step must be positive");
    }
    if (!(max_angle >= step) || !std::isfinite(max_angle)) {
        throw ValidationError("scan range must contain at least one step");
    }
    const auto n = static_cast<std::size_t>(std::floor(max_angle / step + 1e-9));
    ScanResult out;
    out.rows.reserve(n * n);
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= n; ++j) {
            const double tab = static_cast<double>(i) * step;
            const double tbc = static_cast<double>(j) * step;
            const auto r = quantum_bell(DirectionTriple::coplanar(tab, tbc));
            out.rows.push_back({tab, tbc, tab + tbc, r.lhs, r.violated});
            if (r.lhs < out.rows[out.min_index].lhs) {
                out.min_index = out.rows.size() - 1;
            }
        }
    }
    return out;
}

/// Counts N(eps_a; eps_b) in ++, +-, -+, -- order.
struct JointEstimate {
    std::array<std::uint64_t, 4> counts{};
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;

    double ratio(std::size_t k) const {
        return static_cast<double>(counts.at(k)) / static_cast<double>(shots);
    }

    friend bool operator==(const JointEstimate &, const JointEstimate &) = default;
};

/**
 * Joint measurements of spin A along a and spin B along b on `shots` fresh
 * singlets, sampled from the four projection probabilities.
 */
inline JointEstimate mc_singlet_joint(const Direction &a, const Direction &b, std::uint64_t shots,
                                      RngStream &rng) {
    if (shots == 0) {
        throw ValidationError("shots must be at least 1");
    }
    const auto probs = joint_table(singlet(), a, b);
    const DiscreteSampler sampler(probs);
    JointEstimate est{{}, shots, rng.seed()};
    for (std::uint64_t s = 0; s < shots; ++s) {
        ++est.counts[sampler.draw(rng)];
    }
    return est;
}

}  // namespace spinq
