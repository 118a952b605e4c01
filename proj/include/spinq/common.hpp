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

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace spinq {

using Complex = std::complex<double>;

/// Tolerance on the squared norm of a state and on the trace of a density matrix.
inline constexpr double kNormTol = 1e-9;
/// Floor below which an eigenvalue counts as negative.
inline constexpr double kPsdTol = 1e-9;
/// Tolerance for identities that hold exactly in closed form.
inline constexpr double kExactTol = 1e-12;
/// Threshold for classifying a Bell combination as violated.
inline constexpr double kBellTol = 1e-9;
/// Largest amplitude magnitude still treated as the zero vector.
inline constexpr double kZeroAmp = 1e-150;

/// Input that fails a documented precondition.
class ValidationError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Two independent evaluations of the same quantity disagree. Always a bug.
class CrossCheckError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// Outcome label of a spin-1/2 component measurement, in units of 1/2.
enum class Sign : int { Plus = 1, Minus = -1 };

inline constexpr int to_int(Sign s) { return static_cast<int>(s); }
inline constexpr Sign flip(Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }
inline constexpr char to_char(Sign s) { return s == Sign::Plus ? '+' : '-'; }

inline Sign sign_from_int(int v) {
    if (v == 1) {
        return Sign::Plus;
    }
    if (v == -1) {
        return Sign::Minus;
    }
    throw ValidationError("sign must be +1 or -1, got " + std::to_string(v));
}

}  // namespace spinq
