// aqo: problem -> processor -> embedding -> program -> run -> solution.
//
// Entities live in a flat JSON store (--store, $AQO_STORE or ./aqo_store).
// Exit codes: 0 success, 1 domain error, 2 usage error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "aqo/analysis.hpp"
#include "aqo/benchmark_model.hpp"
#include "aqo/io.hpp"
#include "aqo/store.hpp"

namespace fs = std::filesystem;
using aqo::io::json;

namespace {

struct RunArgs {
    std::string plugin = "rk4";
    double dt_evolve = 1e-4;
    double dt_anneal = 0.05;
    double snapshots = 3.0;
    int eigenstates = 0;
    std::uint64_t seed = 0;
    bool swap = false;
    std::string eval = "midpoint";
    int samples = 0;
    bool save_eigenvectors = false;
};

void add_run_options(CLI::App* cmd, RunArgs& a) {
    cmd->add_option("--plugin", a.plugin, "Simulation plug-in")
        ->check(CLI::IsMember({"rk4", "fop", "zero"}))
        ->capture_default_str();
    cmd->add_option("--dt-evolve", a.dt_evolve, "Inner integration step")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--dt-anneal", a.dt_anneal, "Window over which H is frozen")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--snapshots", a.snapshots, "Snapshot interval")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--eigenstates", a.eigenstates, "Eigenvalues per snapshot (0 = all)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd->add_option("--seed", a.seed, "Seed for readout sampling")->capture_default_str();
    cmd->add_option("--samples", a.samples, "Readout samples drawn from the final state")->check(CLI::NonNegativeNumber);
    cmd->add_flag("--swap-schedules", a.swap, "Exchange A and B");
    cmd->add_option("--eval", a.eval, "Where H is evaluated in each window")
        ->check(CLI::IsMember({"midpoint", "left"}))
        ->capture_default_str();
    cmd->add_flag("--save-eigenvectors", a.save_eigenvectors, "Write eigenvectors into the snapshot files");
}

aqo::SimulationOptions options_of(const RunArgs& a) {
    aqo::SimulationOptions o;
    o.plugin = aqo::plugin_from_string(a.plugin);
    o.dt_evolve = a.dt_evolve;
    o.dt_anneal = a.dt_anneal;
    o.snapshot_interval = a.snapshots;
    o.num_eigenstates = a.eigenstates;
    o.seed = a.seed;
    o.samples = a.samples;
    o.evaluation = a.eval == "left" ? aqo::HamiltonianEvaluation::Left : aqo::HamiltonianEvaluation::Midpoint;
    return o;
}

aqo::QuboProblem load_problem(const aqo::EntityStore& store, const std::string& name) {
    return aqo::io::problem_from_json(store.load("problem", name));
}

aqo::Processor load_processor(const aqo::EntityStore& store, const std::string& name) {
    return aqo::io::processor_from_json(store.load("processor", name));
}

aqo::QuboProblem read_qubo_file(const std::string& path) {
    const std::string text = aqo::io::read_file(path);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (text[first] == '[' || text[first] == '{')) {
        json j = aqo::io::parse_json(text, path);
        if (j.is_object() && j.contains("qubo")) return aqo::io::problem_from_json(j);
        aqo::QuboProblem q;
        q.p = aqo::io::matrix_from_json(j.is_object() ? j.at("P") : j);
        if (j.is_object()) q.constant_offset = j.value("offset", 0.0);
        q.num_original = q.size();
        return q;
    }
    aqo::QuboProblem q;
    q.p = aqo::io::parse_matrix_text(text);
    q.num_original = q.size();
    return q;
}

std::pair<aqo::Schedule, aqo::Schedule> schedules(const std::string& kind) {
    if (kind == "linear") return {aqo::Schedule::linear_off(), aqo::Schedule::linear_on()};
    throw aqo::Error("unknown schedule '" + kind + "'");
}

// Runs a program, writing snapshots as they arrive plus the reports.
aqo::ProgramResult execute(const aqo::EntityStore& store, const std::string& name, aqo::QuantumProgram prog,
                           const RunArgs& args) {
    if (args.swap) prog = prog.with_swapped_schedules();
    aqo::SimulationOptions opts = options_of(args);
    const bool dense = prog.size() <= aqo::kDenseSpectrumLimit;
    opts.store_eigenvectors = dense;
    const fs::path dir = store.run_directory(name);
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.path().filename().string().starts_with("snapshot_")) fs::remove(entry.path());

    auto result = aqo::run(prog, opts, [&](std::size_t k, const aqo::SpectrumSnapshot& s) {
        aqo::SpectrumSnapshot out = s;
        if (!args.save_eigenvectors) out.eigenvectors.reset();
        aqo::io::write_file((dir / ("snapshot_" + std::to_string(k) + ".json")).string(),
                            aqo::io::to_json(out).dump() + "\n");
    });
    std::cout << "snapshots: " << result.snapshots.size() << " in " << dir.string() << "\n";

    if (dense && result.snapshots.size() >= 2 && result.snapshots.front().eigenvalues.size() >= 2) {
        const auto gap = aqo::gap_profile(result.snapshots, prog);
        aqo::io::write_file((dir / "gap.json").string(), aqo::io::to_json(gap).dump(2) + "\n");
        std::cout << "gap: delta* = " << gap.delta_star << " at t = " << gap.t_star << ", rate bound " << gap.rate_bound
                  << "\n";
        const auto trace = aqo::track_eigenpaths(result.snapshots);
        std::ostringstream csv;
        aqo::io::write_trace_csv(csv, trace);
        aqo::io::write_file((dir / "trace.csv").string(), csv.str());
        std::cout << "ground manifold at T: " << trace.ground_manifold.size() << " states";
        if (!trace.ambiguous.empty()) std::cout << " (" << trace.ambiguous.size() << " ambiguous matches)";
        std::cout << "\n";
        if (result.final_state) {
            const auto pops = aqo::population_trace(result.snapshots, trace);
            std::ostringstream pcsv;
            aqo::io::write_population_csv(pcsv, pops);
            aqo::io::write_file((dir / "populations.csv").string(), pcsv.str());
        }
    }
    if (result.final_state) {
        store.save("result", name, aqo::io::result_to_json(result, opts));
        std::cout << "result: " << store.path("result", name).string() << "\n";
        const int n = result.qubits;
        for (std::size_t k = 0; k < std::min<std::size_t>(5, result.distribution.size()); ++k) {
            const auto [z, p] = result.distribution[k];
            std::cout << "  " << aqo::format_bits(aqo::basis_bits(z, n)) << "  (" << z << ")  " << p << "\n";
        }
    }
    return result;
}

void print_solution(const aqo::Solution& s) {
    std::cout << "solution: " << aqo::format_bits(s.bits, false) << "  probability " << s.probability << "\n";
    if (s.qubo_value) std::cout << "  qubo value " << *s.qubo_value << ", objective " << *s.objective_value << "\n";
    if (s.bop_value) std::cout << "  bop value " << *s.bop_value << "\n";
    if (s.provenance.had_ties()) std::cout << "  majority-vote ties resolved by objective\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adiabatic quantum optimization toolchain"};
    app.require_subcommand(1);
    std::string store_root;
    app.add_option("--store", store_root, "Entity store directory (default $AQO_STORE or ./aqo_store)");

    // problem create
    auto* problem = app.add_subcommand("problem", "Problems")->require_subcommand(1);
    auto* create = problem->add_subcommand("create", "Create a problem from a BOP or QUBO file");
    std::string bop_file, qubo_file, out_name;
    double penalty = 0.0;
    auto* bop_opt = create->add_option("--bop", bop_file, "Weighted Boolean clauses")->check(CLI::ExistingFile);
    auto* qubo_opt = create->add_option("--qubo", qubo_file, "QUBO matrix (JSON or whitespace text)")->check(CLI::ExistingFile);
    bop_opt->excludes(qubo_opt);
    create->add_option("--out", out_name, "Problem name")->required();
    create->add_option("--penalty", penalty, "Quadratization penalty (default 1 + sum |c|)")->check(CLI::PositiveNumber);

    // processor chimera
    auto* processor = app.add_subcommand("processor", "Processors")->require_subcommand(1);
    auto* chim = processor->add_subcommand("chimera", "Chimera lattice of K4,4 cells");
    int rows = 1, cols = 1;
    chim->add_option("--rows", rows)->required()->check(CLI::PositiveNumber);
    chim->add_option("--cols", cols)->required()->check(CLI::PositiveNumber);
    chim->add_option("--out", out_name, "Processor name (default chimera_RxC)");

    // embed
    auto* embed = app.add_subcommand("embed", "Find a minor embedding");
    std::string problem_name, processor_name, embedding_name;
    std::uint64_t budget = aqo::EmbeddingOptions{}.node_budget;
    embed->add_option("--problem", problem_name)->required();
    embed->add_option("--processor", processor_name)->required();
    embed->add_option("--out", out_name, "Embedding name (default: problem name)");
    embed->add_option("--budget", budget, "Search node budget")->capture_default_str();

    // program synth / physical
    auto* program = app.add_subcommand("program", "Quantum programs")->require_subcommand(1);
    auto* synth = program->add_subcommand("synth", "Synthesize a program from a problem");
    double final_time = 30.0;
    std::string schedule = "linear";
    std::optional<double> penalty_j;
    synth->add_option("--problem", problem_name)->required();
    synth->add_option("--processor", processor_name)->required();
    synth->add_option("--embedding", embedding_name, "Stored embedding (searched when absent)");
    synth->add_option("--T", final_time, "Final time")->check(CLI::PositiveNumber)->capture_default_str();
    synth->add_option("--schedule", schedule)->check(CLI::IsMember({"linear"}))->capture_default_str();
    synth->add_option("--penalty-j", penalty_j, "Chain strength (default 1 + sum |alpha| + sum |beta|)");
    synth->add_option("--out", out_name, "Program name (default: problem name)");
    synth->add_option("--budget", budget, "Search node budget")->capture_default_str();

    auto* phys = program->add_subcommand("physical", "Program from a physical Ising model");
    std::string ising_file;
    phys->add_option("--ising", ising_file, "Ising model JSON")->required()->check(CLI::ExistingFile);
    phys->add_option("--T", final_time, "Final time")->check(CLI::PositiveNumber)->capture_default_str();
    phys->add_option("--schedule", schedule)->check(CLI::IsMember({"linear"}))->capture_default_str();
    phys->add_option("--out", out_name, "Program name")->required();

    // run
    auto* run = app.add_subcommand("run", "Execute a program");
    std::string program_name;
    RunArgs run_args;
    run->add_option("--program", program_name)->required();
    run->add_option("--out", out_name, "Result name (default: program name)");
    add_run_options(run, run_args);

    // solve
    auto* solve = app.add_subcommand("solve", "Embed, synthesize, run and decode a problem");
    solve->add_option("--problem", problem_name)->required();
    solve->add_option("--processor", processor_name)->required();
    solve->add_option("--T", final_time, "Final time")->check(CLI::PositiveNumber)->capture_default_str();
    solve->add_option("--penalty-j", penalty_j, "Chain strength");
    solve->add_option("--out", out_name, "Name for every produced entity (default: problem name)");
    solve->add_option("--budget", budget, "Search node budget")->capture_default_str();
    add_run_options(solve, run_args);

    // example
    auto* example = app.add_subcommand("example", "Emit the 8-qubit benchmark Ising model");
    std::string example_file;
    example->add_option("--file", example_file, "Write here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (example->parsed()) {
            const std::string doc = aqo::io::to_json(aqo::benchmark_ising()).dump(2) + "\n";
            if (example_file.empty()) std::cout << doc;
            else aqo::io::write_file(example_file, doc);
            return 0;
        }

        const auto store = aqo::EntityStore::open(store_root);
        aqo::EmbeddingOptions search;
        search.node_budget = budget;

        if (create->parsed()) {
            if (bop_file.empty() && qubo_file.empty()) {
                std::cerr << "problem create: one of --bop or --qubo is required\n";
                return 2;
            }
            std::optional<double> m;
            if (penalty > 0.0) m = penalty;
            aqo::QuboProblem q = !bop_file.empty() ? aqo::bop_to_qubo(aqo::parse_bop(aqo::io::read_file(bop_file)), m)
                                                   : read_qubo_file(qubo_file);
            store.save("problem", out_name, aqo::io::to_json(q));
            std::cout << "problem " << out_name << ": " << q.size() << " QUBO variables (" << q.num_original
                      << " original, " << q.ancillas.size() << " ancillas)\n";
        } else if (chim->parsed()) {
            auto proc = aqo::chimera(rows, cols);
            const std::string name = out_name.empty() ? proc.name : out_name;
            store.save("processor", name, aqo::io::to_json(proc));
            std::cout << "processor " << name << ": " << proc.size() << " qubits, " << proc.hardware.edge_count()
                      << " couplers\n";
        } else if (embed->parsed()) {
            const auto q = load_problem(store, problem_name);
            const auto proc = load_processor(store, processor_name);
            const auto emb = aqo::find_embedding(aqo::qubo_to_ising(q).topology(), proc, search);
            const std::string name = out_name.empty() ? problem_name : out_name;
            store.save("embedding", name, aqo::io::to_json(emb));
            std::cout << "embedding " << name << ": " << emb.used_qubits().size() << " physical qubits for "
                      << emb.size() << " logical\n";
        } else if (synth->parsed()) {
            const auto q = load_problem(store, problem_name);
            const auto proc = load_processor(store, processor_name);
            aqo::SynthesisOptions so;
            so.search = search;
            so.chain_strength = penalty_j;
            if (!embedding_name.empty()) so.embedding = aqo::io::embedding_from_json(store.load("embedding", embedding_name));
            auto [a, b] = schedules(schedule);
            const auto prog = aqo::synthesize(q, proc, final_time, a, b, so);
            const std::string name = out_name.empty() ? problem_name : out_name;
            store.save("program", name, aqo::io::to_json(prog));
            std::cout << "program " << name << ": " << prog.size() << " physical qubits, T = " << prog.final_time
                      << ", J = " << prog.logical_part->penalty_j << "\n";
        } else if (phys->parsed()) {
            const auto model = aqo::io::ising_from_json(aqo::io::parse_json(aqo::io::read_file(ising_file), ising_file));
            auto [a, b] = schedules(schedule);
            const auto prog = aqo::physical_program(model, final_time, a, b);
            store.save("program", out_name, aqo::io::to_json(prog));
            std::cout << "program " << out_name << ": " << prog.size() << " qubits, T = " << prog.final_time << "\n";
        } else if (run->parsed()) {
            const auto prog = aqo::io::program_from_json(store.load("program", program_name));
            execute(store, out_name.empty() ? program_name : out_name, prog, run_args);
        } else if (solve->parsed()) {
            const std::string name = out_name.empty() ? problem_name : out_name;
            const auto q = load_problem(store, problem_name);
            const auto proc = load_processor(store, processor_name);
            const auto emb = aqo::find_embedding(aqo::qubo_to_ising(q).topology(), proc, search);
            store.save("embedding", name, aqo::io::to_json(emb));
            aqo::SynthesisOptions so;
            so.embedding = emb;
            so.chain_strength = penalty_j;
            const auto prog = aqo::synthesize(q, proc, final_time, aqo::Schedule::linear_off(),
                                              aqo::Schedule::linear_on(), so);
            store.save("program", name, aqo::io::to_json(prog));
            if (run_args.plugin == "zero") throw aqo::Error("solve needs a plug-in that evolves the state");
            const auto result = execute(store, name, prog, run_args);
            const auto sol = aqo::assemble_solution(result, prog);
            store.save("solution", name, aqo::io::to_json(sol));
            print_solution(sol);
        }
    } catch (const aqo::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
