// Copyright 2026 The DEA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Command-line front end: analyze, reduce, sectors, build, bestapprox.
// All randomness flows from the --seed flag; identical invocations produce
// byte-identical reports.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "dea/analysis.hpp"
#include "dea/autobuild.hpp"
#include "dea/bestapprox.hpp"
#include "dea/circuit.hpp"
#include "dea/sectors.hpp"
#include "dea/shot_protocol.hpp"

namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write file '" + path + "'");
    out << content;
}

dea::ParametricCircuit load_circuit(const std::string& path) {
    return dea::parse_circuit(read_file(path));
}

std::vector<double> load_theta(const std::string& path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw dea::ParseError(std::string("theta file: ") + e.what());
    }
    if (doc.is_object() && doc.contains("theta")) doc = doc["theta"];
    if (!doc.is_array()) throw dea::ParseError("theta file must hold an array of numbers");
    std::vector<double> theta;
    for (const auto& v : doc) {
        if (!v.is_number()) throw dea::ParseError("theta entries must be numbers");
        theta.push_back(v.get<double>());
    }
    return theta;
}

struct ThetaFlags {
    std::string theta_path;
    bool random_theta = false;
};

struct SeedFlag {
    std::uint64_t value = 0;
    bool given = false;
};

void add_seed_flag(CLI::App* cmd, SeedFlag& seed) {
    cmd->add_option_function<std::uint64_t>(
        "--seed", [&seed](std::uint64_t v) { seed.value = v; seed.given = true; },
        "master seed for every stochastic path");
}

void add_theta_flags(CLI::App* cmd, ThetaFlags& flags, SeedFlag& seed) {
    cmd->add_option("--theta", flags.theta_path, "JSON file with parameter values");
    cmd->add_flag("--random-theta", flags.random_theta, "draw a generic parameter point (needs --seed)");
    add_seed_flag(cmd, seed);
}

std::vector<double> resolve_theta(const dea::ParametricCircuit& c, const ThetaFlags& flags,
                                  const SeedFlag& seed) {
    if (flags.theta_path.empty() == !flags.random_theta)
        throw ConfigError("exactly one of --theta or --random-theta is required");
    if (flags.random_theta) {
        if (!seed.given) throw ConfigError("--random-theta requires --seed");
        return dea::random_theta(c.parameter_count(), dea::derive_seed(seed.value, {0x74686574ULL}));
    }
    std::vector<double> theta = load_theta(flags.theta_path);
    if (static_cast<int>(theta.size()) != c.parameter_count())
        throw ConfigError("theta length does not match the circuit's parameter count");
    return theta;
}

std::optional<std::uint64_t> parse_shots(const std::string& text) {
    if (text.empty() || text == "exact") return std::nullopt;
    try {
        std::size_t pos = 0;
        unsigned long long v = std::stoull(text, &pos);
        if (pos != text.size() || v == 0) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw ConfigError("--shots expects a positive integer or 'exact'");
    }
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (...) {
            throw ConfigError("expected a comma-separated list of numbers, got '" + text + "'");
        }
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    for (double v : parse_double_list(text)) out.push_back(static_cast<int>(v));
    return out;
}

// ---------------------------------------------------------------------------

int cmd_analyze(const std::string& circuit_path, const ThetaFlags& theta_flags, const SeedFlag& seed,
                const std::string& shots_text, std::optional<int> cap, double tol_abs, double tol_rel,
                double z_threshold, int resamples, const std::string& report_path,
                const std::string& csv_path) {
    dea::ParametricCircuit circuit = load_circuit(circuit_path);
    std::vector<double> theta = resolve_theta(circuit, theta_flags, seed);
    std::optional<std::uint64_t> shots = parse_shots(shots_text);
    if (shots.has_value() && !seed.given) throw ConfigError("--shots requires --seed");
    dea::TolerancePolicy tol{tol_abs, tol_rel};

    dea::ClassificationReport report;
    if (shots.has_value()) {
        report = dea::classify_with_noise(circuit, theta, shots,
                                          dea::derive_seed(seed.value, {0x73686f74ULL}), z_threshold,
                                          resamples, tol, cap);
    } else {
        report = dea::classify_parameters(circuit, theta, tol, cap);
    }
    if (seed.given) report.seed = seed.value;

    for (const dea::ParameterVerdict& v : report.parameters)
        std::cout << v.name << ": " << (v.independent ? "independent" : "redundant") << "\n";
    std::cout << "independent parameters: " << report.independent_indices().size() << " of "
              << report.parameters.size() << "\n";

    if (!report_path.empty()) write_file(report_path, report.to_json().dump(2) + "\n");
    if (!csv_path.empty()) write_file(csv_path, report.to_csv());
    return 0;
}

int cmd_reduce(const std::string& circuit_path, const ThetaFlags& theta_flags, const SeedFlag& seed,
               const std::string& phi0_text, bool freeze_zero, const std::string& output_path,
               const std::string& report_path) {
    dea::ParametricCircuit circuit = load_circuit(circuit_path);
    if (circuit.symmetry_params().empty())
        throw ConfigError("circuit declares no symmetry_params; nothing to reduce");
    std::vector<double> phi0(circuit.symmetry_params().size(), 0.0);
    if (!phi0_text.empty()) phi0 = parse_double_list(phi0_text);

    dea::RemoveSymmetryOptions options;
    options.freeze_to_zero = freeze_zero;
    if (!theta_flags.theta_path.empty() || theta_flags.random_theta)
        options.theta = resolve_theta(circuit, theta_flags, seed);
    else if (seed.given)
        options.seed = dea::derive_seed(seed.value, {0x74686574ULL});
    else
        throw ConfigError("reduce needs --theta, or --random-theta with --seed, or --seed");

    dea::RemoveSymmetryResult result = dea::remove_symmetry(circuit, phi0, options);
    write_file(output_path, dea::serialize_circuit(result.reduced));
    if (!report_path.empty()) write_file(report_path, result.report.to_json().dump(2) + "\n");

    std::cout << "kept " << result.reduced.parameter_count() << " of "
              << circuit.parameter_count() << " parameters\n";
    return 0;
}

int cmd_sectors(int qubits, const std::string& report_path) {
    if (qubits < 1 || qubits > 24) throw ConfigError("--qubits must lie in [1, 24]");
    std::cout << " Q  d  dim\n";
    for (int d = 1; d <= qubits; ++d) {
        if (qubits % d != 0) continue;
        std::cout << " " << qubits << "  " << d << "  " << dea::sector_dimension(qubits, d) << "\n";
    }
    if (!report_path.empty())
        write_file(report_path, dea::sector_table_json(qubits).dump(2) + "\n");
    return 0;
}

int cmd_build(int qubits, int trials, const SeedFlag& seed, const std::string& output_path,
              const std::string& report_path) {
    dea::ParametricCircuit circuit = dea::build_sector_circuit(qubits);
    dea::SectorVerification verification =
        dea::verify_sector_circuit(circuit, qubits, trials, seed.given ? seed.value : 1);
    write_file(output_path, dea::serialize_circuit(circuit));
    if (!report_path.empty()) write_file(report_path, verification.to_json().dump(2) + "\n");
    std::cout << "built " << circuit.parameter_count() << "-parameter circuit for the omega=1 sector on "
              << qubits << " qubits; verification " << (verification.pass ? "pass" : "FAIL") << "\n";
    if (!verification.pass) throw dea::NumericError("sector circuit verification failed");
    return 0;
}

int cmd_bestapprox(const std::string& circuit_path, const std::string& grid_text,
                   std::uint64_t sobol_n, const SeedFlag& seed, const std::string& space_text,
                   int sector_d, const std::string& method_text, std::uint64_t probes,
                   bool with_volume, bool with_lower_bound, int nodes_per_dim,
                   std::uint64_t qmc_nodes, const std::string& report_path) {
    dea::ParametricCircuit circuit = load_circuit(circuit_path);

    dea::SampleSet samples;
    if (!grid_text.empty() && sobol_n > 0) throw ConfigError("choose one of --grid or --sobol");
    if (!grid_text.empty()) {
        std::vector<int> counts = parse_int_list(grid_text);
        if (static_cast<int>(counts.size()) == 1 && circuit.parameter_count() > 1)
            counts.assign(circuit.parameter_count(), counts[0]);
        samples = dea::grid_sample_set(circuit, counts);
    } else if (sobol_n > 0) {
        samples = dea::sobol_sample_set(
            circuit, sobol_n,
            seed.given ? std::optional<std::uint64_t>(dea::derive_seed(seed.value, {0x736f62ULL}))
                       : std::nullopt);
    } else {
        throw ConfigError("one of --grid or --sobol is required");
    }

    dea::AlphaOptions options;
    options.probes = probes;
    options.seed = seed.given ? dea::derive_seed(seed.value, {0x70726fULL}) : 0;
    if (space_text == "full")
        options.space = dea::StateSpace::FullDevice;
    else if (space_text == "span")
        options.space = dea::StateSpace::SampleSpan;
    else if (space_text == "sector")
        options.space = dea::StateSpace::Sector;
    else
        throw ConfigError("--space must be full, span, or sector");
    if (options.space == dea::StateSpace::Sector) {
        if (sector_d < 1) throw ConfigError("--space sector requires --sector-d");
        options.sector = dea::SectorSpec::of_order(circuit.qubits(), sector_d);
    }
    if (method_text == "auto")
        options.method = dea::AlphaMethod::Auto;
    else if (method_text == "probe")
        options.method = dea::AlphaMethod::Probe;
    else if (method_text == "voronoi")
        options.method = dea::AlphaMethod::Voronoi3D;
    else
        throw ConfigError("--method must be auto, probe, or voronoi");

    dea::AlphaEstimate estimate = dea::alpha_hat(circuit, samples, options);
    nlohmann::json report = estimate.to_json();

    if (with_volume || with_lower_bound) {
        dea::QuadratureSpec spec;
        if (nodes_per_dim > 0) spec.nodes_per_dim = nodes_per_dim;
        spec.qmc_nodes = qmc_nodes;
        if (seed.given) spec.seed = dea::derive_seed(seed.value, {0x766f6cULL});
        if (with_lower_bound) {
            dea::LowerBoundEstimate bound = dea::lower_bound(circuit, spec);
            report["volume"] = bound.volume;
            report["lower_bound_formula"] = bound.value;
            report["flagged_exceeds_diameter"] = bound.exceeds_diameter;
        } else {
            report["volume"] = dea::volume(circuit, spec);
        }
    }

    std::cout << "alpha_hat = " << estimate.alpha_hat << " (" << estimate.method
              << ", N=" << samples.size() << ")\n";
    if (estimate.epsilon.has_value())
        std::cout << "epsilon = " << *estimate.epsilon << ", lower = " << *estimate.lower << "\n";
    if (!report_path.empty()) write_file(report_path, report.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dimensional expressivity analysis for parametric quantum circuits"};
    app.require_subcommand(1);

    auto* analyze = app.add_subcommand("analyze", "classify circuit parameters");
    std::string a_circuit, a_shots, a_report, a_csv;
    ThetaFlags a_theta;
    SeedFlag a_seed;
    std::optional<int> a_cap;
    double a_tol_abs = 1e-10, a_tol_rel = 1e-9, a_z = 3.0;
    int a_resamples = 1000;
    analyze->add_option("--circuit", a_circuit, "circuit description file")->required();
    add_theta_flags(analyze, a_theta, a_seed);
    analyze->add_option("--shots", a_shots, "shot count or 'exact' (default exact)");
    analyze->add_option("--cap", a_cap, "stop once this many independent parameters are found");
    analyze->add_option("--tol-abs", a_tol_abs, "absolute eigenvalue tolerance");
    analyze->add_option("--tol-rel", a_tol_rel, "relative eigenvalue tolerance");
    analyze->add_option("--z-threshold", a_z, "bootstrap spreads needed to call an eigenvalue nonzero");
    analyze->add_option("--resamples", a_resamples, "bootstrap replica count");
    analyze->add_option("--report", a_report, "classification report (JSON)");
    analyze->add_option("--csv", a_csv, "per-step eigenvalue table (CSV)");

    auto* reduce = app.add_subcommand("reduce", "remove declared symmetries");
    std::string r_circuit, r_phi0, r_output, r_report;
    ThetaFlags r_theta;
    SeedFlag r_seed;
    bool r_freeze_zero = false;
    reduce->add_option("--circuit", r_circuit, "circuit description file")->required();
    add_theta_flags(reduce, r_theta, r_seed);
    reduce->add_option("--phi0", r_phi0, "comma-separated symmetry parameter values (default zeros)");
    reduce->add_flag("--freeze-zero", r_freeze_zero,
                     "freeze redundant parameters at 0 instead of keeping their values");
    reduce->add_option("--output", r_output, "reduced circuit file")->required();
    reduce->add_option("--report", r_report, "classification report (JSON)");

    auto* sectors = app.add_subcommand("sectors", "translation sector dimension table");
    int s_qubits = 0;
    std::string s_report;
    sectors->add_option("--qubits", s_qubits, "qubit count")->required();
    sectors->add_option("--report", s_report, "sector table (JSON)");

    auto* build = app.add_subcommand("build", "construct a minimal maximally expressive sector circuit");
    int b_qubits = 0, b_trials = 5;
    SeedFlag b_seed;
    std::string b_output, b_report;
    build->add_option("--qubits", b_qubits, "qubit count")->required();
    build->add_option("--trials", b_trials, "random verification points");
    add_seed_flag(build, b_seed);
    build->add_option("--output", b_output, "circuit output file")->required();
    build->add_option("--report", b_report, "verification report (JSON)");

    auto* bestapprox = app.add_subcommand("bestapprox", "best-approximation error estimates");
    std::string p_circuit, p_grid, p_space = "full", p_method = "auto", p_report;
    std::uint64_t p_sobol = 0, p_probes = 100000, p_qmc_nodes = 4096;
    SeedFlag p_seed;
    int p_sector_d = 0, p_nodes = 0;
    bool p_volume = false, p_lower = false;
    bestapprox->add_option("--circuit", p_circuit, "circuit description file")->required();
    bestapprox->add_option("--grid", p_grid, "points per parameter (single value or comma list)");
    bestapprox->add_option("--sobol", p_sobol, "scrambled Sobol' sample count");
    add_seed_flag(bestapprox, p_seed);
    bestapprox->add_option("--space", p_space, "state space: full, span, or sector");
    bestapprox->add_option("--sector-d", p_sector_d, "eigenvalue order for --space sector");
    bestapprox->add_option("--method", p_method, "auto, probe, or voronoi");
    bestapprox->add_option("--probes", p_probes, "probe count for the probe method");
    bestapprox->add_flag("--volume", p_volume, "also integrate the image volume");
    bestapprox->add_flag("--lower-bound", p_lower, "also evaluate the closed-form lower bound");
    bestapprox->add_option("--nodes", p_nodes, "tensor quadrature nodes per dimension");
    bestapprox->add_option("--qmc-nodes", p_qmc_nodes, "QMC node count for dimensions above 3");
    bestapprox->add_option("--report", p_report, "report file (JSON)");

    try {
        app.parse(argc, argv);
        if (analyze->parsed())
            return cmd_analyze(a_circuit, a_theta, a_seed, a_shots, a_cap, a_tol_abs, a_tol_rel, a_z,
                               a_resamples, a_report, a_csv);
        if (reduce->parsed())
            return cmd_reduce(r_circuit, r_theta, r_seed, r_phi0, r_freeze_zero, r_output, r_report);
        if (sectors->parsed()) return cmd_sectors(s_qubits, s_report);
        if (build->parsed()) return cmd_build(b_qubits, b_trials, b_seed, b_output, b_report);
        if (bestapprox->parsed())
            return cmd_bestapprox(p_circuit, p_grid, p_sobol, p_seed, p_space, p_sector_d, p_method,
                                  p_probes, p_volume, p_lower, p_nodes, p_qmc_nodes, p_report);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const dea::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const dea::NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
