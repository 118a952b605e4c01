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
 * Directions on the unit sphere and single spin-1/2 states along them.
 * Units: hbar = 1, so component outcomes are +1/2 and -1/2.
 */

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "spinq/common.hpp"
#include "spinq/qcore.hpp"

namespace spinq {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Unit vector in 3-space.
class Direction {
  public:
    /// Rejects vectors whose norm is off by more than 1e-9.
    static Direction from_cartesian(double x, double y, double z) {
        if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
            throw ValidationError("direction components must be finite");
        }
        const double n2 = x * x + y * y + z * z;
        if (std::abs(n2 - 1.0) > kNormTol) {
            throw ValidationError("direction is not a unit vector (|v|^2 = " +
                                  std::to_string(n2) + ")");
        }
        return Direction(x, y, z);
    }

    /// Rescales any nonzero vector onto the sphere.
    static Direction normalized(double x, double y, double z) {
        const double n = std::sqrt(x * x + y * y + z * z);
        if (!(n > kZeroAmp) || !std::isfinite(n)) {
            throw ValidationError("cannot build a direction from a zero vector");
        }
        return Direction(x / n, y / n, z / n);
    }

    /// theta in [0, pi], phi in [0, 2 pi).
    static Direction from_angles(double theta, double phi) {
        check_angles(theta, phi);
        const double st = std::sin(theta);
        return Direction(st * std::cos(phi), st * std::sin(phi), std::cos(theta));
    }

    static Direction plus_x() { return Direction(1.0, 0.0, 0.0); }
    static Direction plus_y() { return Direction(0.0, 1.0, 0.0); }
    static Direction plus_z() { return Direction(0.0, 0.0, 1.0); }

    static void check_angles(double theta, double phi) {
        if (!(theta >= 0.0 && theta <= kPi)) {
            throw ValidationError("theta must lie in [0, pi], got " + std::to_string(theta));
        }
        if (!(phi >= 0.0 && phi < kTwoPi)) {
            throw ValidationError("phi must lie in [0, 2pi), got " + std::to_string(phi));
        }
    }

    double x() const { return v_[0]; }
    double y() const { return v_[1]; }
    double z() const { return v_[2]; }

    /// Polar angle from +z.
    double theta() const { return std::atan2(std::hypot(v_[0], v_[1]), v_[2]); }

    /// Azimuth in [0, 2 pi); 0 on the poles.
    double phi() const {
        if (v_[0] == 0.0 && v_[1] == 0.0) {
            return 0.0;
        }
        double p = std::atan2(v_[1], v_[0]);
        if (p < 0.0) {
            p += kTwoPi;
        }
        return p >= kTwoPi ? 0.0 : p;
    }

    Direction operator-() const { return Direction(-v_[0], -v_[1], -v_[2]); }

    friend double dot(const Direction &a, const Direction &b) {
        return a.v_[0] * b.v_[0] + a.v_[1] * b.v_[1] + a.v_[2] * b.v_[2];
    }

    /// Angle in [0, pi], computed from |a x b| and a.b to stay accurate near 0 and pi.
    friend double angle_between(const Direction &a, const Direction &b) {
        const double cx = a.v_[1] * b.v_[2] - a.v_[2] * b.v_[1];
        const double cy = a.v_[2] * b.v_[0] - a.v_[0] * b.v_[2];
        const double cz = a.v_[0] * b.v_[1] - a.v_[1] * b.v_[0];
        return std::atan2(std::sqrt(cx * cx + cy * cy + cz * cz), dot(a, b));
    }

    friend bool operator==(const Direction &, const Direction &) = default;

  private:
    Direction(double x, double y, double z) : v_{x, y, z} {}

    std::array<double, 3> v_;
};

/// cos(theta/2)|+z> + sin(theta/2) e^{i phi}|-z>.
inline PureState spin_state(double theta, double phi) {
    Direction::check_angles(theta, phi);
    std::array<Complex, 2> amps{Complex{std::cos(0.5 * theta), 0.0},
                                std::sin(0.5 * theta) * std::polar(1.0, phi)};
    return PureState::from_amplitudes({amps.begin(), amps.end()});
}

inline PureState spin_state(const Direction &e) { return spin_state(e.theta(), e.phi()); }

/**
 * (|+e>, |-e>). |-e> is spin_state(pi - theta, phi + pi mod 2 pi), which
 * pins its phase.
 */
inline std::pair<PureState, PureState> basis_pair(const Direction &e) {
    const double theta = e.theta();
    const double phi = e.phi();
    double anti_phi = phi + kPi;
    if (anti_phi >= kTwoPi) {
        anti_phi -= kTwoPi;
    }
    return {spin_state(theta, phi), spin_state(kPi - theta, anti_phi)};
}

inline const PureState &eigenstate(const std::pair<PureState, PureState> &pair, Sign s) {
    return s == Sign::Plus ? pair.first : pair.second;
}

struct ComponentProbs {
    double plus;
    double minus;
};

inline void require_single_spin(const PureState &psi) {
    if (psi.dim() != 2) {
        throw ValidationError("expected a single-spin (dim 2) state");
    }
}

/// Born probabilities of +1/2 and -1/2 for the spin component along e.
inline ComponentProbs component_probs(const PureState &psi, const Direction &e) {
    require_single_spin(psi);
    const auto [plus, minus] = basis_pair(e);
    return {std::norm(inner_product(plus, psi)), std::norm(inner_product(minus, psi))};
}

/// Mean spin component along e, in [-1/2, 1/2].
inline double expectation(const PureState &psi, const Direction &e) {
    const auto p = component_probs(psi, e);
    return 0.5 * p.plus - 0.5 * p.minus;
}

}  // namespace spinq
