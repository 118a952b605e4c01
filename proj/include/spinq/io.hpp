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
 * JSON forms of the value types.
 *
 *   PureState         {"dim": n, "amps": [[re, im], ...]}
 *   DensityMatrix     {"dim": n, "entries": [[[re, im], ...], ...]}   (row-major)
 *   Direction         {"x": .., "y": .., "z": ..} on output;
 *                     {"theta": .., "phi": ..} also accepted on input
 *   TwoSpinState      {"amps": [[re, im] x 4], "e_a": dir, "e_b": dir}  (++, +-, -+, --)
 *   FrequencyEstimate {"counts": [...], "shots": M, "seed": s}
 *   LhvReport         {"feasible": b, "weights": [8] | null, "certificate": {...} | null,
 *                      "quantum_lhs": x}
 *
 * Doubles are written in shortest round-trip form, so parsing the output
 * restores every value bit for bit.
 */

#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "spinq/bell.hpp"
#include "spinq/common.hpp"
#include "spinq/entangle.hpp"
#include "spinq/measure.hpp"
#include "spinq/qcore.hpp"
#include "spinq/spin.hpp"

namespace spinq::io {

using Json = nlohmann::ordered_json;

inline Json complex_to_json(const Complex &c) { return Json::array({c.real(), c.imag()}); }

inline Complex complex_from_json(const Json &j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ValidationError("complex value must be [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

inline const Json &require_field(const Json &j, const char *key) {
    if (!j.is_object() || !j.contains(key)) {
        throw ValidationError(std::string("missing field \"") + key + "\"");
    }
    return j.at(key);
}

inline Json to_json(const PureState &s) {
    Json amps = Json::array();
    for (const auto &c : s.amps()) {
        amps.push_back(complex_to_json(c));
    }
    return Json{{"dim", s.dim()}, {"amps", std::move(amps)}};
}

inline PureState state_from_json(const Json &j) {
    const auto dim = require_field(j, "dim").get<std::size_t>();
    const Json &amps = require_field(j, "amps");
    if (!amps.is_array() || amps.size() != dim) {
        throw ValidationError("\"amps\" must hold dim entries");
    }
    std::vector<Complex> v;
    for (const auto &a : amps) {
        v.push_back(complex_from_json(a));
    }
    return PureState::from_amplitudes(std::move(v));
}

inline Json to_json(const DensityMatrix &rho) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < rho.dim(); ++k) {
            row.push_back(complex_to_json(rho(i, k)));
        }
        rows.push_back(std::move(row));
    }
    return Json{{"dim", rho.dim()}, {"entries", std::move(rows)}};
}

inline DensityMatrix density_from_json(const Json &j) {
    const auto dim = require_field(j, "dim").get<std::size_t>();
    const Json &rows = require_field(j, "entries");
    if (!rows.is_array() || rows.size() != dim) {
        throw ValidationError("\"entries\" must hold dim rows");
    }
    std::vector<Complex> e;
    for (const auto &row : rows) {
        if (!row.is_array() || row.size() != dim) {
            throw ValidationError("each density matrix row must hold dim entries");
        }
        for (const auto &c : row) {
            e.push_back(complex_from_json(c));
        }
    }
    return DensityMatrix::from_entries(dim, std::move(e));
}

inline Json to_json(const Direction &d) { return Json{{"x", d.x()}, {"y", d.y()}, {"z", d.z()}}; }

inline Direction direction_from_json(const Json &j) {
    if (j.is_object() && j.contains("x")) {
        return Direction::from_cartesian(require_field(j, "x").get<double>(),
                                         require_field(j, "y").get<double>(),
                                         require_field(j, "z").get<double>());
    }
    if (j.is_object() && j.contains("theta")) {
        return Direction::from_angles(require_field(j, "theta").get<double>(),
                                      require_field(j, "phi").get<double>());
    }
    throw ValidationError("direction needs {x, y, z} or {theta, phi}");
}

inline Json to_json(const TwoSpinState &s) {
    Json amps = Json::array();
    for (const auto &c : s.amps().amps()) {
        amps.push_back(complex_to_json(c));
    }
    return Json{{"amps", std::move(amps)}, {"e_a", to_json(s.e_a())}, {"e_b", to_json(s.e_b())}};
}

inline TwoSpinState two_spin_from_json(const Json &j) {
    const Json &amps = require_field(j, "amps");
    if (!amps.is_array() || amps.size() != 4) {
        throw ValidationError("two-spin state needs 4 amplitudes");
    }
    std::vector<Complex> v;
    for (const auto &a : amps) {
        v.push_back(complex_from_json(a));
    }
    return TwoSpinState(PureState::from_amplitudes(std::move(v)),
                        direction_from_json(require_field(j, "e_a")),
                        direction_from_json(require_field(j, "e_b")));
}

inline Json to_json(const FrequencyEstimate &f) {
    return Json{{"counts", f.counts}, {"shots", f.shots}, {"seed", f.seed}};
}

inline FrequencyEstimate frequency_from_json(const Json &j) {
    FrequencyEstimate f;
    f.counts = require_field(j, "counts").get<std::vector<std::uint64_t>>();
    f.shots = require_field(j, "shots").get<std::uint64_t>();
    f.seed = require_field(j, "seed").get<std::uint64_t>();
    std::uint64_t total = 0;
    for (auto c : f.counts) {
        total += c;
    }
    if (f.shots == 0 || total != f.shots) {
        throw ValidationError("counts must sum to a positive shot total");
    }
    return f;
}

inline Json to_json(const LhvReport &r) {
    Json j;
    j["feasible"] = r.feasible;
    j["weights"] = r.weights ? Json(*r.weights) : Json(nullptr);
    if (r.certificate) {
        const auto &c = *r.certificate;
        j["certificate"] = Json{{"best_min_weight", c.best_min_weight},
                                {"multipliers", c.multipliers},
                                {"min_column_value", c.min_column_value},
                                {"target_value", c.target_value}};
    } else {
        j["certificate"] = nullptr;
    }
    j["quantum_lhs"] = r.quantum_lhs;
    j["targets"] = r.targets;
    return j;
}

}  // namespace spinq::io
