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

#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "spinq/io.hpp"
#include "spinq/spinq.hpp"

namespace spinq::cli {
namespace {

using io::Json;

std::string num17(double v) { return fmt::format("{:.17g}", v); }
std::string num12(double v) { return fmt::format("{:.12g}", v); }

Json stamp(const RunConfig &cfg, const char *command) {
    Json j;
    j["tool"] = kToolName;
    j["version"] = kVersion;
    j["command"] = command;
    j["invocation"] = cfg.echo;
    j["seed"] = cfg.seed;
    return j;
}

std::string csv_preamble(const RunConfig &cfg) {
    return fmt::format("# tool={} version={} seed={}\n# invocation: {}\n", kToolName, kVersion,
                       cfg.seed, cfg.echo);
}

std::string dump(const Json &j) { return j.dump(2) + "\n"; }

double to_radians(const RunConfig &cfg, double v) { return cfg.degrees ? v * kPi / 180.0 : v; }

Direction direction_arg(const RunConfig &cfg, const std::vector<double> &angles) {
    return Direction::from_angles(to_radians(cfg, angles.at(0)), to_radians(cfg, angles.at(1)));
}

/// |observed - expected| / sigma; nullopt when sigma = 0 and the two differ.
std::optional<double> sigma_deviation(double observed, double expected, std::uint64_t shots) {
    const double sigma = binomial_sigma(expected, shots);
    const double diff = std::abs(observed - expected);
    if (sigma == 0.0) {
        return diff == 0.0 ? std::optional<double>(0.0) : std::nullopt;
    }
    return diff / sigma;
}

Json optional_json(const std::optional<double> &v) { return v ? Json(*v) : Json(nullptr); }
std::string optional_csv(const std::optional<double> &v) { return v ? num17(*v) : "inf"; }

// state

struct StateArgs {
    double theta = 0.0;
    double phi = 0.0;
};

std::string cmd_state(const RunConfig &cfg, const StateArgs &a) {
    const double theta = to_radians(cfg, a.theta);
    const double phi = to_radians(cfg, a.phi);
    const PureState psi = spin_state(theta, phi);
    const auto p = component_probs(psi, Direction::plus_z());
    const double ez = expectation(psi, Direction::plus_z());
    if (cfg.format == Format::Csv) {
        std::string s = csv_preamble(cfg) + "index,re,im,prob\n";
        const double probs[2] = {p.plus, p.minus};
        for (std::size_t i = 0; i < 2; ++i) {
            s += fmt::format("{},{},{},{}\n", i, num17(psi[i].real()), num17(psi[i].imag()),
                             num17(probs[i]));
        }
        s += fmt::format("# expectation_z={}\n", num12(ez));
        return s;
    }
    Json j = stamp(cfg, "state");
    j["theta"] = theta;
    j["phi"] = phi;
    j["state"] = io::to_json(psi);
    j["probs_z"] = {p.plus, p.minus};
    j["expectation_z"] = ez;
    return dump(j);
}

// measure

struct MeasureArgs {
    double theta = 0.0;
    double phi = 0.0;
    std::vector<double> dir{0.0, 0.0};
    std::uint64_t shots = 100000;
};

std::string cmd_measure(const RunConfig &cfg, const MeasureArgs &a) {
    if (a.shots == 0) {
        throw ValidationError("--shots must be at least 1");
    }
    const PureState psi = spin_state(to_radians(cfg, a.theta), to_radians(cfg, a.phi));
    const Direction e = direction_arg(cfg, a.dir);
    const auto basis = spin_basis(e);
    const auto analytic = born_probabilities(psi, basis);
    RngStream rng(cfg.seed);
    const auto freq = sample_frequencies(psi, basis, a.shots, rng);
    const std::vector<double> values{0.5, -0.5};
    const double avg = estimate_average(freq, values);
    const double exact_avg = expectation(psi, e);

    if (cfg.format == Format::Csv) {
        std::string s = csv_preamble(cfg) + "outcome,value,count,ratio,analytic,sigma_dev\n";
        for (std::size_t i = 0; i < 2; ++i) {
            s += fmt::format("{},{},{},{},{},{}\n", i, num17(values[i]), freq.counts[i],
                             num17(freq.ratio(i)), num17(analytic[i]),
                             optional_csv(sigma_deviation(freq.ratio(i), analytic[i], a.shots)));
        }
        s += fmt::format("# average={} analytic_average={}\n", num12(avg), num12(exact_avg));
        return s;
    }
    Json j = stamp(cfg, "measure");
    j["state"] = io::to_json(psi);
    j["direction"] = io::to_json(e);
    j["frequency"] = io::to_json(freq);
    Json ratios = Json::array();
    Json devs = Json::array();
    for (std::size_t i = 0; i < 2; ++i) {
        ratios.push_back(freq.ratio(i));
        devs.push_back(optional_json(sigma_deviation(freq.ratio(i), analytic[i], a.shots)));
    }
    j["values"] = values;
    j["ratios"] = std::move(ratios);
    j["analytic"] = analytic;
    j["sigma_dev"] = std::move(devs);
    j["average"] = avg;
    j["analytic_average"] = exact_avg;
    return dump(j);
}

// bell / lhv

Json triple_json(const DirectionTriple &t) {
    return Json{{"a", io::to_json(t.a)},
                {"b", io::to_json(t.b)},
                {"c", io::to_json(t.c)},
                {"theta_ab", t.theta_ab()},
                {"theta_bc", t.theta_bc()},
                {"theta_ac", t.theta_ac()}};
}

std::string lhv_summary(const LhvReport &r) {
    if (r.feasible) {
        std::string w;
        for (std::size_t k = 0; k < 8; ++k) {
            w += fmt::format("{}{}={}", k ? " " : "", anticorrelated_assignment(k).label(),
                             num12((*r.weights)[k]));
        }
        return "# lhv=FEASIBLE witness: " + w + "\n";
    }
    const auto &c = *r.certificate;
    return fmt::format(
        "# lhv=INFEASIBLE best_min_weight={} farkas_value={} farkas_min_column={}\n",
        num12(c.best_min_weight), num12(c.target_value), num12(c.min_column_value));
}

struct BellArgs {
    double theta_ab = 0.0;
    double theta_bc = 0.0;
};

std::string cmd_bell(const RunConfig &cfg, const BellArgs &a) {
    const double tab = to_radians(cfg, a.theta_ab);
    const double tbc = to_radians(cfg, a.theta_bc);
    if (!(tab > 0.0) || !(tbc > 0.0) || !std::isfinite(tab) || !std::isfinite(tbc)) {
        throw ValidationError("--theta-ab and --theta-bc must be positive");
    }
    const auto t = DirectionTriple::coplanar(tab, tbc);
    const auto result = quantum_bell(t);
    const auto lhv = lhv_feasibility(t);
    if (cfg.format == Format::Csv) {
        std::string s = csv_preamble(cfg) + "theta_ab,theta_bc,theta_ac,lhs,violated,feasible\n";
        s += fmt::format("{},{},{},{},{},{}\n", num17(tab), num17(tbc), num17(tab + tbc),
                         num17(result.lhs), result.violated ? 1 : 0, lhv.feasible ? 1 : 0);
        s += fmt::format("# lhs={} violated={}\n", num12(result.lhs), result.violated);
        return s + lhv_summary(lhv);
    }
    Json j = stamp(cfg, "bell");
    j["theta_ab"] = tab;
    j["theta_bc"] = tbc;
    j["theta_ac"] = tab + tbc;
    j["triple"] = triple_json(t);
    j["lhs"] = result.lhs;
    j["violated"] = result.violated;
    j["lhv"] = io::to_json(lhv);
    return dump(j);
}

struct LhvArgs {
    double theta_ab = 0.0;
    double theta_bc = 0.0;
    std::vector<double> a;
    std::vector<double> b;
    std::vector<double> c;
};

std::string cmd_lhv(const RunConfig &cfg, const LhvArgs &a) {
    const bool explicit_dirs = !a.a.empty() || !a.b.empty() || !a.c.empty();
    DirectionTriple t = DirectionTriple::coplanar(0.0, 0.0);
    if (explicit_dirs) {
        if (a.a.empty() || a.b.empty() || a.c.empty()) {
            throw ValidationError("--a, --b and --c must be given together");
        }
        t = {direction_arg(cfg, a.a), direction_arg(cfg, a.b), direction_arg(cfg, a.c)};
    } else {
        const double tab = to_radians(cfg, a.theta_ab);
        const double tbc = to_radians(cfg, a.theta_bc);
        if (!(tab >= 0.0) || !(tbc >= 0.0) || !std::isfinite(tab) || !std::isfinite(tbc)) {
            throw ValidationError("coplanar angles must be nonnegative");
        }
        t = DirectionTriple::coplanar(tab, tbc);
    }
    const auto lhv = lhv_feasibility(t);
    if (cfg.format == Format::Csv) {
        std::string s = csv_preamble(cfg) + "assignment,weight\n";
        for (std::size_t k = 0; k < 8; ++k) {
            s += fmt::format("{},{}\n", anticorrelated_assignment(k).label(),
                             lhv.weights ? num17((*lhv.weights)[k]) : "");
        }
        s += fmt::format("# quantum_lhs={}\n", num12(lhv.quantum_lhs));
        return s + lhv_summary(lhv);
    }
    Json j = stamp(cfg, "lhv");
    j["triple"] = triple_json(t);
    Json labels = Json::array();
    for (std::size_t k = 0; k < 8; ++k) {
        labels.push_back(anticorrelated_assignment(k).label());
    }
    j["assignments"] = std::move(labels);
    const Json report = io::to_json(lhv);
    for (const auto &[key, value] : report.items()) {
        j[key] = value;
    }
    return dump(j);
}

// scan

struct ScanArgs {
    double step = 0.0;
    double max_angle = kPi;
    bool max_given = false;
};

std::string cmd_scan(const RunConfig &cfg, const ScanArgs &a) {
    const double step = to_radians(cfg, a.step);
    const double max_angle = a.max_given ? to_radians(cfg, a.max_angle) : kPi;
    const auto scan = bell_scan(step, max_angle);
    const auto &m = scan.minimum();
    if (cfg.format == Format::Csv) {
        std::string s = csv_preamble(cfg) + "theta_ab,theta_bc,theta_ac,lhs,violated\n";
        for (const auto &r : scan.rows) {
            s += fmt::format("{},{},{},{},{}\n", num17(r.theta_ab), num17(r.theta_bc),
                             num17(r.theta_ac), num17(r.lhs), r.violated ? 1 : 0);
        }
        s += fmt::format("# minimum lhs={} at theta_ab={} theta_bc={} ({} points)\n", num12(m.lhs),
                         num12(m.theta_ab), num12(m.theta_bc), scan.rows.size());
        return s;
    }
    Json j = stamp(cfg, "scan");
    j["step"] = step;
    j["max_angle"] = max_angle;
    Json rows = Json::array();
    for (const auto &r : scan.rows) {
        rows.push_back(Json::array({r.theta_ab, r.theta_bc, r.theta_ac, r.lhs, r.violated}));
    }
    j["columns"] = {"theta_ab", "theta_bc", "theta_ac", "lhs", "violated"};
    j["rows"] = std::move(rows);
    j["minimum"] = Json{{"theta_ab", m.theta_ab},
                        {"theta_bc", m.theta_bc},
                        {"theta_ac", m.theta_ac},
                        {"lhs", m.lhs},
                        {"violated", m.violated}};
    return dump(j);
}

// singlet-mc

struct SingletMcArgs {
    std::vector<double> a{0.0, 0.0};
    std::vector<double> b{0.0, 0.0};
    std::uint64_t shots = 100000;
};

std::string cmd_singlet_mc(const RunConfig &cfg, const SingletMcArgs &args) {
    if (args.shots == 0) {
        throw ValidationError("--shots must be at least 1");
    }
    const Direction a = direction_arg(cfg, args.a);
    const Direction b = direction_arg(cfg, args.b);
    RngStream rng(cfg.seed);
    const auto est = mc_singlet_joint(a, b, args.shots, rng);
    std::array<double, 4> analytic{};
    for (const auto &[sa, sb] : kSignPairs) {
        analytic[pair_index(sa, sb)] = singlet_joint_prob(sa, a, sb, b);
    }
    if (cfg.format == Format::Csv) {
        std::string s = csv_preamble(cfg) + "eps_a,eps_b,count,ratio,analytic,sigma_dev\n";
        for (const auto &[sa, sb] : kSignPairs) {
            const std::size_t k = pair_index(sa, sb);
            s += fmt::format("{},{},{},{},{},{}\n", to_int(sa), to_int(sb), est.counts[k],
                             num17(est.ratio(k)), num17(analytic[k]),
                             optional_csv(sigma_deviation(est.ratio(k), analytic[k], args.shots)));
        }
        return s;
    }
    Json j = stamp(cfg, "singlet-mc");
    j["a"] = io::to_json(a);
    j["b"] = io::to_json(b);
    j["shots"] = args.shots;
    Json table = Json::array();
    for (const auto &[sa, sb] : kSignPairs) {
        const std::size_t k = pair_index(sa, sb);
        table.push_back(Json{
            {"eps_a", to_int(sa)},
            {"eps_b", to_int(sb)},
            {"count", est.counts[k]},
            {"ratio", est.ratio(k)},
            {"analytic", analytic[k]},
            {"sigma_dev", optional_json(sigma_deviation(est.ratio(k), analytic[k], args.shots))},
        });
    }
    j["table"] = std::move(table);
    return dump(j);
}

// discriminate

struct DiscriminateArgs {
    double theta = kPi / 2.0;
    double phi = 0.0;
    bool theta_given = false;
    std::vector<double> dir;
};

std::string cmd_discriminate(const RunConfig &cfg, const DiscriminateArgs &a) {
    const double theta = a.theta_given ? to_radians(cfg, a.theta) : kPi / 2.0;
    const PureState psi = spin_state(theta, to_radians(cfg, a.phi));
    const DensityMatrix rho = diagonal_mixture(psi);
    const auto protocol = phase_protocol(psi, rho);
    const auto along_z = discriminate_phase(psi, rho, Direction::plus_z());
    std::vector<std::pair<std::string, PhaseDiscrimination>> rows{
        {"z", along_z}, {"x", protocol.along_x}, {"y", protocol.along_y}};
    std::optional<Direction> custom;
    if (!a.dir.empty()) {
        custom = direction_arg(cfg, a.dir);
        rows.emplace_back("custom", discriminate_phase(psi, rho, *custom));
    }
    const double purity_pure = purity(pure_to_density(psi));
    const double purity_mixed = purity(rho);
    if (cfg.format == Format::Csv) {
        std::string s = csv_preamble(cfg) + "analysis,p_pure,p_mixed,gap\n";
        for (const auto &[name, d] : rows) {
            s += fmt::format("{},{},{},{}\n", name, num17(d.p_pure), num17(d.p_mixed),
                             num17(d.gap()));
        }
        s += fmt::format("# purity_pure={} purity_mixed={} recovered_phase={} coherence={}\n",
                         num12(purity_pure), num12(purity_mixed), num12(protocol.recovered_phase),
                         num12(protocol.pure_coherence));
        return s;
    }
    Json j = stamp(cfg, "discriminate");
    j["state"] = io::to_json(psi);
    j["mixture"] = io::to_json(rho);
    j["purity"] = Json{{"pure", purity_pure}, {"mixed", purity_mixed}};
    Json analyses = Json::object();
    for (const auto &[name, d] : rows) {
        analyses[name] = Json{{"p_pure", d.p_pure}, {"p_mixed", d.p_mixed}, {"gap", d.gap()}};
    }
    if (custom) {
        analyses["custom"]["direction"] = io::to_json(*custom);
    }
    j["analyses"] = std::move(analyses);
    j["recovered_phase"] = protocol.recovered_phase;
    j["coherence"] = Json{{"pure", protocol.pure_coherence}, {"mixed", protocol.mixed_coherence}};
    return dump(j);
}

// scaling

struct ScalingArgs {
    double theta = kPi / 2.0;
    double phi = 0.0;
    bool theta_given = false;
    std::vector<std::uint64_t> shots{100, 400, 1600};
    std::uint64_t trials = 200;
};

std::string cmd_scaling(const RunConfig &cfg, const ScalingArgs &a) {
    const double theta = a.theta_given ? to_radians(cfg, a.theta) : kPi / 2.0;
    const PureState psi = spin_state(theta, to_radians(cfg, a.phi));
    RngStream rng(cfg.seed);
    const auto rows = estimation_scaling(psi, a.shots, a.trials, rng);
    if (cfg.format == Format::Csv) {
        std::string s = csv_preamble(cfg) + "M,rmse,trials,seed\n";
        for (const auto &r : rows) {
            s += fmt::format("{},{},{},{}\n", r.shots, num17(r.rmse), a.trials, cfg.seed);
        }
        return s;
    }
    Json j = stamp(cfg, "scaling");
    j["state"] = io::to_json(psi);
    j["trials"] = a.trials;
    Json out = Json::array();
    for (const auto &r : rows) {
        out.push_back(Json{{"M", r.shots}, {"rmse", r.rmse}});
    }
    j["rows"] = std::move(out);
    return dump(j);
}

std::string make_echo(const std::vector<std::string> &args) {
    std::string echo = kToolName;
    for (std::size_t i = 1; i < args.size(); ++i) {
        const std::string &s = args[i];
        if (s == "--output" || s == "-o") {
            ++i;
            continue;
        }
        if (s.rfind("--output=", 0) == 0) {
            continue;
        }
        echo += ' ';
        echo += s;
    }
    return echo;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Spin-1/2 superposition, measurement, entanglement and Bell-inequality experiments",
                 kToolName};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    std::string format = "json";
    std::string output;
    app.add_option("--seed", cfg.seed, "Random seed (u64)")->capture_default_str();
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("-o,--output", output, "Write output to this file instead of stdout");
    app.add_flag("--degrees", cfg.degrees, "Read every angle argument in degrees");

    std::function<std::string()> action;

    StateArgs state_args;
    auto *state = app.add_subcommand("state", "Spin state along (theta, phi) and its z statistics");
    state->add_option("--theta", state_args.theta, "Polar angle in [0, pi]");
    state->add_option("--phi", state_args.phi, "Azimuth in [0, 2pi)");
    state->callback([&] { action = [&] { return cmd_state(cfg, state_args); }; });

    MeasureArgs measure_args;
    auto *measure = app.add_subcommand("measure", "Sample spin-component measurements");
    measure->add_option("--theta", measure_args.theta, "State polar angle");
    measure->add_option("--phi", measure_args.phi, "State azimuth");
    measure->add_option("--dir", measure_args.dir, "Analysis direction THETA PHI")->expected(2);
    measure->add_option("--shots", measure_args.shots, "Number of shots")->capture_default_str();
    measure->callback([&] { action = [&] { return cmd_measure(cfg, measure_args); }; });

    BellArgs bell_args;
    auto *bell = app.add_subcommand("bell", "Quantum Bell combination and LHV verdict, coplanar");
    bell->add_option("--theta-ab", bell_args.theta_ab, "Angle between a and b")->required();
    bell->add_option("--theta-bc", bell_args.theta_bc, "Angle between b and c")->required();
    bell->callback([&] { action = [&] { return cmd_bell(cfg, bell_args); }; });

    ScanArgs scan_args;
    auto *scan = app.add_subcommand("scan", "Sweep coplanar triples");
    scan->add_option("--step", scan_args.step, "Grid step")->required();
    auto *max_opt = scan->add_option("--max", scan_args.max_angle, "Largest angle (default pi)");
    scan->callback([&] {
        scan_args.max_given = max_opt->count() > 0;
        action = [&] { return cmd_scan(cfg, scan_args); };
    });

    SingletMcArgs mc_args;
    auto *mc = app.add_subcommand("singlet-mc", "Monte Carlo joint measurements on singlets");
    mc->add_option("--a", mc_args.a, "Direction for spin A: THETA PHI")->expected(2);
    mc->add_option("--b", mc_args.b, "Direction for spin B: THETA PHI")->expected(2);
    mc->add_option("--shots", mc_args.shots, "Number of singlet pairs")->capture_default_str();
    mc->callback([&] { action = [&] { return cmd_singlet_mc(cfg, mc_args); }; });

    LhvArgs lhv_args;
    auto *lhv = app.add_subcommand("lhv", "Local hidden-variable feasibility for a triple");
    lhv->add_option("--theta-ab", lhv_args.theta_ab, "Coplanar angle between a and b");
    lhv->add_option("--theta-bc", lhv_args.theta_bc, "Coplanar angle between b and c");
    lhv->add_option("--a", lhv_args.a, "Direction a: THETA PHI")->expected(2);
    lhv->add_option("--b", lhv_args.b, "Direction b: THETA PHI")->expected(2);
    lhv->add_option("--c", lhv_args.c, "Direction c: THETA PHI")->expected(2);
    lhv->callback([&] { action = [&] { return cmd_lhv(cfg, lhv_args); }; });

    DiscriminateArgs disc_args;
    auto *disc = app.add_subcommand(
        "discriminate", "Superposition versus mixture with the same z populations");
    auto *disc_theta = disc->add_option("--theta", disc_args.theta, "State polar angle (default pi/2)");
    disc->add_option("--phi", disc_args.phi, "State azimuth");
    disc->add_option("--dir", disc_args.dir, "Extra analysis direction THETA PHI")->expected(2);
    disc->callback([&] {
        disc_args.theta_given = disc_theta->count() > 0;
        action = [&] { return cmd_discriminate(cfg, disc_args); };
    });

    ScalingArgs scaling_args;
    auto *scaling = app.add_subcommand("scaling", "RMSE of the |C_0|^2 estimator versus shots");
    auto *scaling_theta = scaling->add_option("--theta", scaling_args.theta, "State polar angle (default pi/2)");
    scaling->add_option("--phi", scaling_args.phi, "State azimuth");
    scaling->add_option("--shots", scaling_args.shots, "Ascending shot counts")->delimiter(',');
    scaling->add_option("--trials", scaling_args.trials, "Repetitions per shot count")
        ->capture_default_str();
    scaling->callback([&] {
        scaling_args.theta_given = scaling_theta->count() > 0;
        action = [&] { return cmd_scaling(cfg, scaling_args); };
    });

    std::vector<char *> argv;
    std::vector<std::string> storage(args);
    for (auto &s : storage) {
        argv.push_back(s.data());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitValidation;
    }

    cfg.format = format == "csv" ? Format::Csv : Format::Json;
    cfg.echo = make_echo(args);

    std::string text;
    try {
        text = action();
    } catch (const CrossCheckError &e) {
        err << "internal cross-check failed: " << e.what() << "\n";
        return kExitCrossCheck;
    } catch (const ValidationError &e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::out_of_range &e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }

    if (output.empty()) {
        out << text;
        out.flush();
    } else {
        std::ofstream file(output, std::ios::binary | std::ios::trunc);
        if (!file) {
            err << "error: cannot open " << output << " for writing\n";
            return kExitValidation;
        }
        file << text;
        if (!file) {
            err << "error: failed writing " << output << "\n";
            return kExitValidation;
        }
    }
    return kExitOk;
}

}  // namespace spinq::cli
