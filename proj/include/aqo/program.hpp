#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aqo/frontend.hpp"
#include "aqo/hardware.hpp"
#include "aqo/ising.hpp"

namespace aqo {

/// Annealing schedule as a function of normalized time s = t/T in [0, 1].
class Schedule {
public:
    enum class Kind { LinearOn, LinearOff, Tabulated };

    static Schedule linear_on() { return Schedule(Kind::LinearOn, {}); }    // s
    static Schedule linear_off() { return Schedule(Kind::LinearOff, {}); }  // 1 - s
    /// Piecewise-linear through (s, value) knots; s strictly increasing and
    /// covering [0, 1].
    static Schedule tabulated(std::vector<std::pair<double, double>> knots);

    Kind kind() const { return kind_; }
    const std::vector<std::pair<double, double>>& knots() const { return knots_; }

    double value(double s) const;
    /// d value / ds (right derivative at knots).
    double slope(double s) const;

    bool operator==(const Schedule&) const = default;

private:
    Schedule(Kind kind, std::vector<std::pair<double, double>> knots) : kind_(kind), knots_(std::move(knots)) {}

    Kind kind_;
    std::vector<std::pair<double, double>> knots_;
};

/// Provenance of a program synthesized from a problem.
struct LogicalPart {
    QuboProblem problem;
    IsingModel logical;
    Embedding embedding;
    std::vector<int> physical_qubits;  // model index -> hardware qubit
    double penalty_j = 0.0;
    std::string processor;
};

inline constexpr int kEngineQubitLimit = 16;

struct QuantumProgram {
    IsingModel physical;
    Schedule schedule_a = Schedule::linear_off();  // weight of the transverse field
    Schedule schedule_b = Schedule::linear_on();   // weight of the problem Hamiltonian
    double final_time = 1.0;                       // T, dimensionless (hbar = 1)
    std::optional<LogicalPart> logical_part;

    int size() const { return physical.size(); }
    /// Same program with A and B exchanged (skips the boundary check).
    QuantumProgram with_swapped_schedules() const;
};

/// Throws unless A(0) > B(0) and A(1) < B(1).
void check_schedule_boundaries(const Schedule& a, const Schedule& b);

/// Engineer path: a program directly from a physical Ising model.
QuantumProgram physical_program(IsingModel model, double final_time, Schedule a = Schedule::linear_off(),
                                Schedule b = Schedule::linear_on());

struct SynthesisOptions {
    std::optional<Embedding> embedding;  // search when absent
    std::optional<double> chain_strength;
    EmbeddingOptions search;
};

/// qubo_to_ising -> find_embedding -> embed_ising -> program.
QuantumProgram synthesize(const QuboProblem& problem, const Processor& proc, double final_time,
                          Schedule a = Schedule::linear_off(), Schedule b = Schedule::linear_on(),
                          const SynthesisOptions& options = {});

/// H = A H_I + B H_P with H_I = -Σ X_i applied matrix-free and H_P stored as
/// its computational-basis diagonal.  The diagonal is shared between
/// operators built from the same program.
class HamiltonianOperator {
public:
    HamiltonianOperator(int n, std::shared_ptr<const std::vector<double>> problem_diagonal, double transverse,
                        double diagonal_scale);

    int qubits() const { return n_; }
    std::size_t dimension() const { return std::size_t{1} << n_; }
    double transverse_strength() const { return transverse_; }
    double diagonal_scale() const { return diagonal_scale_; }
    /// Unscaled H_P diagonal.
    std::span<const double> problem_diagonal() const { return *diag_; }
    double diagonal(std::size_t z) const { return diagonal_scale_ * (*diag_)[z]; }

    void apply(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) const;

private:
    int n_;
    std::shared_ptr<const std::vector<double>> diag_;
    double transverse_;
    double diagonal_scale_;
};

/// Builds H(t) for a program; caches the problem diagonal.
class HamiltonianGenerator {
public:
    explicit HamiltonianGenerator(const QuantumProgram& prog);

    const QuantumProgram& program() const { return prog_; }
    HamiltonianOperator at(double t) const;
    /// dH/dt = A'(t) H_I + B'(t) H_P.
    HamiltonianOperator derivative_at(double t) const;
    std::shared_ptr<const std::vector<double>> problem_diagonal() const { return diag_; }

private:
    QuantumProgram prog_;
    std::shared_ptr<const std::vector<double>> diag_;
};

HamiltonianOperator hamiltonian_at(const QuantumProgram& prog, double t);

std::vector<std::complex<double>> apply_hamiltonian(const HamiltonianOperator& h,
                                                    std::span<const std::complex<double>> v);

}  // namespace aqo
