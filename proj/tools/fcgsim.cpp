// Command-line frontend: builds function-controlled gate matrices, runs
// circuits and Grover searches, and cross-checks constructions.
//
// Exit codes: 0 success, 1 a verification check failed, 2 parse error
// (predicate, angle, usage), 3 validation/domain error, 4 I/O error,
// 5 JSON schema error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fcg/errors.hpp"
#include "fcg/gates.hpp"
#include "fcg/predicate.hpp"
#include "fcg/random.hpp"
#include "fcg/serialize.hpp"
#include "fcg/simulator.hpp"
#include "fcg/truth_table.hpp"
#include "fcg/verify.hpp"

namespace {

using nlohmann::json;

struct CliConfig {
    int n = -1;  // -1 = not given
    int m = -1;
    std::string pred;
    std::string table_path;
    std::string u;
    std::string u_else;
    bool phase_oracle = false;
    std::string phase = "pi";
    bool block_output = false;
    std::string circuit_path;
    std::string state_path;
    std::int64_t basis = 0;
    std::string check = "unitary";
    std::string matrix_path;
    std::string matrix_b_path;
    bool up_to_phase = false;
    int count = 0;
    std::int64_t iters = -1;  // -1 = use the suggested count
    double tol = -1.0;        // -1 = per-check default
    std::uint64_t seed = 0;
    std::string out = "-";
    std::string format = "json";
};

void emit(const CliConfig& cfg, const json& j) {
    fcg::write_text_file(cfg.out, j.dump(2) + "\n");
}

// Predicate text or table file; the predicate is parsed (and type-checked)
// before the width requirement so syntax problems are reported even when
// --n is missing.
fcg::TruthTable resolve_table(const CliConfig& cfg) {
    if (cfg.pred.empty() == cfg.table_path.empty()) {
        throw fcg::ValidationError("provide exactly one of --pred and --table");
    }
    if (!cfg.pred.empty()) {
        fcg::PredicateAst ast = fcg::parse_predicate(cfg.pred);
        fcg::check_types(ast);
        if (cfg.n < 0) throw fcg::ValidationError("--pred needs --n to fix the register width");
        return fcg::compile_truth_table(ast, cfg.n);
    }
    const json j = fcg::parse_json_text(fcg::read_text_file(cfg.table_path), cfg.table_path);
    fcg::TruthTable table = fcg::truth_table_from_json(j);
    if (cfg.n >= 0 && cfg.n != table.width()) {
        throw fcg::ValidationError("--n " + std::to_string(cfg.n) + " disagrees with table width " +
                                   std::to_string(table.width()));
    }
    return table;
}

// A library gate name (possibly tensored, "H,H") or a matrix JSON file.
fcg::ComplexMatrix resolve_unitary(const std::string& text) {
    try {
        return fcg::tensored_gate(text);
    } catch (const fcg::DomainError&) {
        if (!std::filesystem::exists(text)) throw;
        return fcg::matrix_from_json(fcg::parse_json_text(fcg::read_text_file(text), text));
    }
}

fcg::ComplexMatrix load_matrix(const std::string& path) {
    const json j = fcg::parse_json_text(fcg::read_text_file(path), path);
    if (j.is_object() && j.contains("blocks")) return fcg::block_gate_from_json(j).dense();
    return fcg::matrix_from_json(j);
}

int cmd_build_matrix(const CliConfig& cfg) {
    const fcg::TruthTable table = resolve_table(cfg);

    if (cfg.phase_oracle) {
        if (!cfg.u.empty() || !cfg.u_else.empty()) {
            throw fcg::ValidationError("--phase-oracle does not take --u/--u-else");
        }
        if (cfg.block_output) {
            throw fcg::ValidationError("--block does not apply to the diagonal phase oracle");
        }
        const fcg::ComplexMatrix g = fcg::phase_oracle_matrix(table, fcg::parse_angle(cfg.phase));
        if (cfg.format == "csv") {
            fcg::write_text_file(cfg.out, fcg::matrix_to_csv(g));
        } else {
            emit(cfg, fcg::matrix_to_json(g));
        }
        return 0;
    }

    if (cfg.u.empty()) throw fcg::ValidationError("build-matrix needs --u (or --phase-oracle)");
    const fcg::ComplexMatrix u = resolve_unitary(cfg.u);

    fcg::BlockDiagonalGate gate = [&] {
        if (!cfg.u_else.empty()) {
            return fcg::conditional_matrix(
                fcg::ConditionalSpec(table, u, resolve_unitary(cfg.u_else)));
        }
        return fcg::fcg_matrix(fcg::FcgSpec(table, u));
    }();

    if (cfg.m >= 0 && cfg.m != gate.target_width()) {
        throw fcg::ValidationError("--m " + std::to_string(cfg.m) +
                                   " disagrees with the operator's width " +
                                   std::to_string(gate.target_width()));
    }
    if (cfg.block_output) {
        if (cfg.format == "csv") {
            throw fcg::ValidationError("--format csv applies to dense output only");
        }
        emit(cfg, fcg::block_gate_to_json(gate));
    } else if (cfg.format == "csv") {
        fcg::write_text_file(cfg.out, fcg::matrix_to_csv(gate.dense()));
    } else {
        emit(cfg, fcg::matrix_to_json(gate.dense()));
    }
    return 0;
}

int cmd_simulate(const CliConfig& cfg) {
    if (cfg.format == "csv") throw fcg::ValidationError("simulate emits JSON only");
    const json cj = fcg::parse_json_text(fcg::read_text_file(cfg.circuit_path), cfg.circuit_path);
    const fcg::Circuit circuit = fcg::circuit_from_json(cj);

    fcg::SimState initial = [&] {
        if (!cfg.state_path.empty()) {
            return fcg::state_from_json(
                fcg::parse_json_text(fcg::read_text_file(cfg.state_path), cfg.state_path));
        }
        if (cfg.basis < 0) throw fcg::DomainError("--basis must be non-negative");
        return fcg::make_basis_state(circuit.control_width, circuit.target_width,
                                     static_cast<std::uint64_t>(cfg.basis));
    }();

    const fcg::SimState final_state = fcg::run_circuit(circuit, initial);
    json out;
    out["state"] = fcg::state_to_json(final_state);
    out["probabilities"] = fcg::probabilities_to_json(final_state);
    emit(cfg, out);
    return 0;
}

double check_tol(const CliConfig& cfg, double fallback) {
    return cfg.tol >= 0.0 ? cfg.tol : fallback;
}

int cmd_verify(const CliConfig& cfg) {
    if (cfg.format == "csv") throw fcg::ValidationError("verify emits JSON only");
    std::vector<fcg::VerificationReport> reports;

    // Builds the spec suite: either the single configured spec or --count
    // random instances drawn from --seed.
    const auto for_each_spec = [&](const auto& body) {
        if (cfg.count > 0) {
            if (cfg.n < 0 || cfg.m < 0) {
                throw fcg::ValidationError("random batches need --n and --m");
            }
            fcg::RandomSource rng(cfg.seed);
            for (int i = 0; i < cfg.count; ++i) {
                fcg::TruthTable table = fcg::random_truth_table(cfg.n, rng);
                fcg::ComplexMatrix u = fcg::random_unitary(std::size_t{1} << cfg.m, rng);
                body(fcg::FcgSpec(std::move(table), std::move(u)));
            }
        } else {
            if (cfg.u.empty()) throw fcg::ValidationError("this check needs --u (or --count)");
            body(fcg::FcgSpec(resolve_table(cfg), resolve_unitary(cfg.u)));
        }
    };

    if (cfg.check == "unitary") {
        if (cfg.matrix_path.empty()) throw fcg::ValidationError("--check unitary needs --matrix");
        reports.push_back(fcg::check_unitary(load_matrix(cfg.matrix_path), check_tol(cfg, 1e-9)));
    } else if (cfg.check == "lemma3") {
        for_each_spec([&](const fcg::FcgSpec& spec) {
            reports.push_back(fcg::check_fcg_equals_bcg_product(spec, check_tol(cfg, 1e-9)));
        });
    } else if (cfg.check == "qit-equivalence") {
        for_each_spec([&](const fcg::FcgSpec& spec) {
            fcg::VerificationReport r = fcg::check_equivalence(
                fcg::fcg_matrix(spec).dense(), fcg::qit_matrix(spec.table(), spec.unitary()),
                check_tol(cfg, 1e-12), false);
            r.check = "qit_equivalence";
            reports.push_back(std::move(r));
        });
    } else if (cfg.check == "entry-formula") {
        for_each_spec([&](const fcg::FcgSpec& spec) {
            reports.push_back(fcg::check_entry_formula(spec, check_tol(cfg, 1e-15)));
        });
    } else if (cfg.check == "equivalence") {
        if (cfg.matrix_path.empty() || cfg.matrix_b_path.empty()) {
            throw fcg::ValidationError("--check equivalence needs --matrix and --matrix-b");
        }
        reports.push_back(fcg::check_equivalence(load_matrix(cfg.matrix_path),
                                                 load_matrix(cfg.matrix_b_path),
                                                 check_tol(cfg, 1e-9), cfg.up_to_phase));
    } else {
        throw fcg::ValidationError(
            "unknown check '" + cfg.check +
            "'; expected unitary, lemma3, qit-equivalence, entry-formula, or equivalence");
    }

    bool all_pass = true;
    json out;
    if (reports.size() == 1) {
        out = fcg::report_to_json(reports.front());
        all_pass = reports.front().pass;
    } else {
        out = json::array();
        for (const auto& r : reports) {
            out.push_back(fcg::report_to_json(r));
            all_pass = all_pass && r.pass;
        }
    }
    emit(cfg, out);
    return all_pass ? 0 : 1;
}

int cmd_grover(const CliConfig& cfg) {
    if (cfg.format == "csv") throw fcg::ValidationError("grover emits JSON only");
    if (cfg.m > 0) throw fcg::ValidationError("grover runs on the control register; drop --m");
    const fcg::TruthTable table = resolve_table(cfg);
    const std::uint64_t suggested = fcg::grover_suggested_iterations(table);
    const std::uint64_t iters =
        cfg.iters >= 0 ? static_cast<std::uint64_t>(cfg.iters) : suggested;
    const fcg::GroverResult result = fcg::grover_run(table, iters);

    json out;
    out["iterations"] = iters;
    out["suggested_iterations"] = suggested;
    out["marked"] = table.marked_set();
    out["marked_probability"] = result.marked_probability;
    out["probabilities"] = result.probabilities;
    emit(cfg, out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Function-controlled gate toolkit: matrix construction, blockwise simulation, "
                 "Grover search, and cross-checking."};
    app.require_subcommand(1);
    CliConfig cfg;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--n", cfg.n, "Control register width in qubits");
        sub->add_option("--pred", cfg.pred, "Control predicate over x, e.g. \"x == 3\"");
        sub->add_option("--table", cfg.table_path, "Truth table JSON file ({n, bits|hex})");
        sub->add_option("--tol", cfg.tol, "Tolerance override for checks");
        sub->add_option("--seed", cfg.seed, "Seed for randomized batches")->default_val(0);
        sub->add_option("--out", cfg.out, "Output path ('-' = stdout)")->default_val("-");
        sub->add_option("--format", cfg.format, "Output format")
            ->check(CLI::IsMember({"json", "csv"}))
            ->default_val("json");
    };

    CLI::App* build = app.add_subcommand(
        "build-matrix", "Build an FCG, conditional, or phase-oracle matrix and write it out");
    add_common(build);
    build->add_option("--m", cfg.m, "Target register width in qubits (checked against --u)");
    build->add_option("--u", cfg.u, "Applied operator: gate name(s) like X or H,H, or a matrix "
                                    "JSON file");
    build->add_option("--u-else", cfg.u_else, "Else-branch operator (makes an if-then-else gate)");
    build->add_flag("--phase-oracle", cfg.phase_oracle, "Build the diagonal phase oracle instead");
    build->add_option("--phase", cfg.phase, "Oracle phase: radians or pi, pi/2, 3pi/4, ...")
        ->default_val("pi");
    build->add_flag("--block", cfg.block_output, "Write block-diagonal JSON instead of dense");

    CLI::App* simulate =
        app.add_subcommand("simulate", "Run a circuit JSON file and write the final state");
    add_common(simulate);
    simulate->add_option("--circuit", cfg.circuit_path, "Circuit JSON file")->required();
    simulate->add_option("--state", cfg.state_path, "Initial state JSON file (default |0...0>)");
    simulate->add_option("--basis", cfg.basis, "Initial basis index (alternative to --state)");

    CLI::App* verify = app.add_subcommand("verify", "Run verification checks; exit 1 on failure");
    add_common(verify);
    verify->add_option("--check", cfg.check,
                       "unitary | lemma3 | qit-equivalence | entry-formula | equivalence")
        ->required();
    verify->add_option("--m", cfg.m, "Target register width for random batches");
    verify->add_option("--u", cfg.u, "Applied operator for spec checks");
    verify->add_option("--matrix", cfg.matrix_path, "Matrix JSON file (dense or block form)");
    verify->add_option("--matrix-b", cfg.matrix_b_path, "Second matrix for --check equivalence");
    verify->add_flag("--up-to-phase", cfg.up_to_phase, "Allow a global phase in equivalence");
    verify->add_option("--count", cfg.count, "Check this many seeded random specs");

    CLI::App* grover = app.add_subcommand(
        "grover", "Uniform start, then oracle + diffusion rounds; reports probabilities");
    add_common(grover);
    grover->add_option("--iters", cfg.iters, "Iteration count (default: suggested optimum)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (build->parsed()) return cmd_build_matrix(cfg);
        if (simulate->parsed()) return cmd_simulate(cfg);
        if (verify->parsed()) return cmd_verify(cfg);
        return cmd_grover(cfg);
    } catch (const fcg::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const fcg::TypeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const fcg::SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const fcg::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const fcg::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
