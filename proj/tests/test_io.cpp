#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "aqo/benchmark_model.hpp"
#include "aqo/io.hpp"
#include "aqo/store.hpp"

using namespace aqo;
using io::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    auto p = fs::temp_directory_path() / ("aqo_test_io_" + name);
    fs::remove_all(p);
    return p;
}

}  // namespace

TEST_CASE("graph JSON enforces i < j") {
    WeightedGraph g({1, 2, 3}, {{0, 2, 0.5}});
    auto j = io::to_json(g);
    CHECK(j["n"] == 3);
    CHECK(j["edges"] == json::parse("[[0, 2, 0.5]]"));
    CHECK(io::graph_from_json(j) == g);
    CHECK_THROWS_AS(io::graph_from_json(json::parse(R"({"n": 3, "vertex_weights": [0,0,0], "edges": [[2, 0, 1]]})")),
                    Error);
    CHECK_THROWS_AS(io::graph_from_json(json::parse(R"({"n": 2, "vertex_weights": [0], "edges": []})")), Error);
    CHECK_THROWS_AS(io::graph_from_json(json::parse(R"({"n": 2})")), Error);
}

TEST_CASE("Ising, embedding and processor round trips") {
    auto m = benchmark_ising();
    m.gamma = 0.25;
    CHECK(io::ising_from_json(io::to_json(m)) == m);
    CHECK(io::to_json(m)["beta"].size() == 8);

    Embedding e{{{0, 4}, {5}, {1}}};
    auto ej = io::to_json(e);
    CHECK(ej["trees"]["0"] == json::parse("[0, 4]"));
    CHECK(io::embedding_from_json(ej) == e);
    CHECK_THROWS_AS(io::embedding_from_json(json::parse(R"({"trees": {"0": [1], "2": [3]}})")), Error);
    CHECK_THROWS_AS(io::embedding_from_json(json::parse(R"({"trees": {"a": [1]}})")), Error);

    auto p = chimera(2, 2);
    auto pj = io::to_json(p);
    CHECK(pj["name"] == "chimera_2x2");
    auto back = io::processor_from_json(pj);
    CHECK(back.name == p.name);
    CHECK(back.hardware == p.hardware);
}

TEST_CASE("problem round trips with and without BOP") {
    auto q = bop_to_qubo(parse_bop("1 : (b1 AND b2) OR NOT b3\n-2 : b4 OR b1"));
    auto j = io::to_json(q);
    CHECK(j["kind"] == "bop");
    auto back = io::problem_from_json(j);
    CHECK(back.p == q.p);
    CHECK(back.constant_offset == q.constant_offset);
    CHECK(back.ancillas == q.ancillas);
    REQUIRE(back.bop);
    CHECK(back.bop->labels == q.bop->labels);
    CHECK(back.bop->clauses.size() == 2);
    for (std::size_t k = 0; k < 2; ++k) CHECK(back.bop->clauses[k].expr == q.bop->clauses[k].expr);

    QuboProblem plain;
    plain.p = SymmetricMatrix(std::vector<std::vector<double>>{{1, 0.1}, {0.1, -2}});
    plain.num_original = 2;
    auto pj = io::to_json(plain);
    CHECK(pj["kind"] == "qubo");
    CHECK(io::problem_from_json(pj).p == plain.p);
    pj["qubo"]["num_original"] = 1;
    CHECK_THROWS_AS(io::problem_from_json(pj), Error);
}

TEST_CASE("program round trip") {
    auto prog = benchmark_program(30);
    auto j = io::to_json(prog);
    CHECK(j["schedule_A"] == "linear_off");
    CHECK(j["embedding"].is_null());
    auto back = io::program_from_json(j);
    CHECK(back.physical == prog.physical);
    CHECK(back.final_time == 30);
    CHECK_FALSE(back.logical_part);

    QuboProblem q;
    q.p = SymmetricMatrix(std::vector<std::vector<double>>{{-1, 1, 1}, {1, -1, 1}, {1, 1, -1}});
    q.num_original = 3;
    auto synth = synthesize(q, chimera(1, 1), 10);
    synth.schedule_b = Schedule::tabulated({{0, 0}, {0.5, 0.2}, {1, 1}});
    auto sj = io::to_json(synth);
    auto sback = io::program_from_json(sj);
    REQUIRE(sback.logical_part);
    CHECK(sback.logical_part->embedding == synth.logical_part->embedding);
    CHECK(sback.logical_part->physical_qubits == synth.logical_part->physical_qubits);
    CHECK(sback.schedule_b == synth.schedule_b);
    CHECK(io::to_json(sback) == sj);
}

TEST_CASE("snapshot and result documents") {
    SpectrumSnapshot s;
    s.t = 3;
    s.eigenvalues = {-1, 1};
    s.populations = std::vector<double>{0.25, 0.75};
    s.state = StateVector{{0.5, 0}, {0, std::sqrt(0.75)}};
    auto j = io::to_json(s);
    CHECK(j.contains("amplitudes"));
    CHECK_FALSE(j.contains("eigenvectors"));
    auto back = io::snapshot_from_json(j);
    CHECK(back.state == s.state);
    CHECK(back.populations == s.populations);

    ProgramResult r;
    r.distribution = {{3, 0.5}, {0, 0.5}};
    r.norm = 1;
    SimulationOptions o;
    auto rj = io::result_to_json(r, o);
    CHECK(rj["distribution"] == json::parse("[[3, 0.5], [0, 0.5]]"));
    CHECK(rj["options"]["plugin"] == "rk4");
    CHECK(io::options_from_json(rj["options"]).dt_anneal == o.dt_anneal);

    GapProfile g;
    g.t_adiabatic = std::numeric_limits<double>::infinity();
    CHECK(io::to_json(g)["t_adiabatic"].is_null());
}

TEST_CASE("matrix text") {
    auto m = io::parse_matrix_text("# P\n1 2\n2 -1  # row two\n\n");
    CHECK(m.size() == 2);
    CHECK(m(0, 1) == 2);
    CHECK_THROWS_AS(io::parse_matrix_text("1 2\n3 4"), Error);
    CHECK_THROWS_AS(io::parse_matrix_text("1 x\n2 1"), Error);
    CHECK_THROWS_AS(io::parse_matrix_text("1 2 3\n2 1 0"), Error);
    CHECK_THROWS_AS(io::parse_matrix_text(""), Error);
}

TEST_CASE("CSV output") {
    EigenpathTrace tr;
    tr.times = {0, 1};
    tr.tracked[0] = {{0, -2}, {1, -3}};
    tr.tracked[2] = {{0, 0}, {1, 1}};
    std::ostringstream out;
    io::write_trace_csv(out, tr);
    CHECK(out.str() == "t,E_trace_1,E_trace_2\n0,-2,0\n1,-3,1\n");
    std::ostringstream pout;
    io::write_population_csv(pout, {{0, 1, 1, 0}, {2, 0.5, 0.75, 0.25}});
    CHECK(pout.str() == "t,ground,manifold\n0,1,1\n2,0.5,0.75\n");
}

TEST_CASE("entity store") {
    const auto root = scratch("store");
    EntityStore store(root);
    CHECK(fs::is_directory(root));
    store.save("processor", "cell", io::to_json(chimera(1, 1)));
    CHECK(store.contains("processor", "cell"));
    CHECK(fs::exists(root / "cell.processor.json"));
    CHECK(io::processor_from_json(store.load("processor", "cell")).size() == 8);
    store.save("processor", "b", io::to_json(chimera(1, 2)));
    CHECK(store.list("processor") == std::vector<std::string>{"b", "cell"});
    CHECK(store.list("problem").empty());
    CHECK_THROWS_AS(store.load("processor", "missing"), Error);
    CHECK_THROWS_AS(store.save("widget", "x", json{}), Error);
    CHECK_THROWS_AS(store.save("problem", "../escape", json{}), Error);
    CHECK_THROWS_AS(store.save("problem", ".hidden", json{}), Error);
    CHECK(fs::is_directory(store.run_directory("cell")));

    setenv(EntityStore::kRootVariable, (root / "env").c_str(), 1);
    CHECK(EntityStore::open().root() == root / "env");
    CHECK(EntityStore::open((root / "flag").string()).root() == root / "flag");
    unsetenv(EntityStore::kRootVariable);
    fs::remove_all(root);
}
