#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aqo/benchmark_model.hpp"
#include "aqo/program.hpp"
#include "oracles.hpp"

using namespace aqo;

TEST_CASE("linear schedules") {
    auto a = Schedule::linear_off();
    auto b = Schedule::linear_on();
    CHECK(a.value(0) == 1);
    CHECK(a.value(0.25) == 0.75);
    CHECK(b.value(0.25) == 0.25);
    CHECK(a.slope(0.3) == -1);
    CHECK(b.slope(0.3) == 1);
    CHECK_NOTHROW(check_schedule_boundaries(a, b));
    CHECK_THROWS_AS(check_schedule_boundaries(b, a), Error);
}

TEST_CASE("tabulated schedule interpolates") {
    auto s = Schedule::tabulated({{0, 0}, {0.5, 0.8}, {1, 1}});
    CHECK(s.value(0.25) == doctest::Approx(0.4));
    CHECK(s.value(0.75) == doctest::Approx(0.9));
    CHECK(s.value(1.0) == doctest::Approx(1.0));
    CHECK(s.slope(0.1) == doctest::Approx(1.6));
    CHECK(s.slope(0.6) == doctest::Approx(0.4));
    CHECK_THROWS_AS(Schedule::tabulated({{0, 1}}), Error);
    CHECK_THROWS_AS(Schedule::tabulated({{0, 1}, {0, 2}, {1, 0}}), Error);
    CHECK_THROWS_AS(Schedule::tabulated({{0.1, 1}, {1, 0}}), Error);
}

TEST_CASE("physical program checks") {
    CHECK_NOTHROW(physical_program(benchmark_ising(), 30));
    CHECK_THROWS_AS(physical_program(benchmark_ising(), 0), Error);
    CHECK_THROWS_AS(physical_program(benchmark_ising(), -1), Error);
    CHECK_THROWS_AS(physical_program(benchmark_ising(), 30, Schedule::linear_on(), Schedule::linear_off()), Error);
    IsingModel big(std::vector<double>(17, 1.0), {});
    CHECK_THROWS_AS(physical_program(big, 1), Error);
    auto p = benchmark_program(30).with_swapped_schedules();
    CHECK(p.schedule_a == Schedule::linear_on());
}

TEST_CASE("H(t) endpoints and interior against the dense oracle") {
    auto prog = benchmark_program(30);
    HamiltonianGenerator gen(prog);
    auto h0 = gen.at(0);
    CHECK(h0.transverse_strength() == 1);
    CHECK(h0.diagonal_scale() == 0);
    auto hT = gen.at(30);
    CHECK(hT.transverse_strength() == 0);
    CHECK(hT.diagonal(15) == -8);
    CHECK_THROWS_AS(gen.at(30.5), Error);
    CHECK_THROWS_AS(gen.at(-0.1), Error);

    const int n = 8;
    const std::size_t dim = 256;
    Eigen::MatrixXd hi = oracle::transverse(n);
    std::vector<std::tuple<int, int, double>> beta;
    for (auto& e : prog.physical.beta) beta.emplace_back(e.i, e.j, e.weight);
    const double t = 7.5, s = t / 30;
    Eigen::MatrixXd h = (1 - s) * hi;
    for (std::size_t z = 0; z < dim; ++z) h(z, z) += s * oracle::ising(prog.physical.alpha, beta, oracle::bits(z, n));
    std::vector<std::complex<double>> v(dim);
    for (std::size_t z = 0; z < dim; ++z) v[z] = {std::cos(0.1 * z), std::sin(0.3 * z)};
    auto out = apply_hamiltonian(gen.at(t), v);
    Eigen::VectorXcd ref = h.cast<std::complex<double>>() * Eigen::Map<Eigen::VectorXcd>(v.data(), dim);
    for (std::size_t z = 0; z < dim; ++z) CHECK(std::abs(out[z] - ref[z]) < 1e-12);

    auto dh = gen.derivative_at(t);
    CHECK(dh.transverse_strength() == doctest::Approx(-1.0 / 30));
    CHECK(dh.diagonal_scale() == doctest::Approx(1.0 / 30));

    std::vector<std::complex<double>> wrong(10);
    CHECK_THROWS_AS(apply_hamiltonian(gen.at(t), wrong), Error);
}

TEST_CASE("synthesize keeps the logical provenance") {
    QuboProblem q;
    q.p = SymmetricMatrix(std::vector<std::vector<double>>{{-1, 1, 1}, {1, -1, 1}, {1, 1, -1}});
    q.num_original = 3;
    auto prog = synthesize(q, chimera(1, 1), 10);
    REQUIRE(prog.logical_part);
    CHECK(prog.logical_part->logical == qubo_to_ising(q));
    CHECK(prog.logical_part->processor == "chimera_1x1");
    CHECK(static_cast<int>(prog.logical_part->physical_qubits.size()) == prog.size());
    CHECK(prog.size() == 4);  // a triangle needs one chain of two
    SynthesisOptions bad;
    bad.embedding = Embedding{{{0}, {1}, {2}}};
    CHECK_THROWS_AS(synthesize(q, chimera(1, 1), 10, Schedule::linear_off(), Schedule::linear_on(), bad), Error);
}
