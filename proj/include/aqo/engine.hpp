#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "aqo/kernels.hpp"
#include "aqo/program.hpp"

namespace aqo {

using StateVector = std::vector<std::complex<double>>;

struct SpectrumSnapshot {
    double t = 0.0;
    std::vector<double> eigenvalues;          // ascending, the k lowest
    std::optional<Eigen::MatrixXd> eigenvectors;  // columns match eigenvalues
    std::optional<StateVector> state;
    std::optional<std::vector<double>> populations;  // |<z|ψ>|² over the computational basis
};

enum class Plugin { SpectrumZero, Rk4, FopMagnus };
enum class HamiltonianEvaluation { Midpoint, Left };

std::string to_string(Plugin p);
Plugin plugin_from_string(const std::string& name);

struct SimulationOptions {
    Plugin plugin = Plugin::Rk4;
    double dt_evolve = 1e-4;
    double dt_anneal = 0.05;
    double snapshot_interval = 3.0;
    int num_eigenstates = 0;  // 0 = full spectrum
    std::uint64_t seed = 0;
    HamiltonianEvaluation evaluation = HamiltonianEvaluation::Midpoint;
    bool store_eigenvectors = false;
    bool store_state = true;
    int samples = 0;                   // > 0 draws seeded readout samples in addition to the distribution
    bool allow_large_spectrum = false;  // dense spectra above kDenseSpectrumLimit qubits
};

inline constexpr int kDenseSpectrumLimit = 12;

/// Throws unless 0 < dt_evolve <= dt_anneal <= snapshot_interval <= T and
/// dt_anneal is an integer multiple of dt_evolve.
void validate_options(const SimulationOptions& opts, const QuantumProgram& prog);

struct ProgramResult {
    std::optional<StateVector> final_state;
    std::vector<std::pair<std::uint64_t, double>> distribution;  // descending; ties by ascending index
    std::vector<SpectrumSnapshot> snapshots;
    std::vector<std::pair<std::uint64_t, int>> samples;  // histogram of sampled readouts, if requested
    double norm = 0.0;
    double max_norm_drift = 0.0;  // max |1 - ‖ψ‖²| observed at snapshots and the end
    int qubits = 0;
};

/// Dense real-symmetric realization of H (n <= 14).
Eigen::MatrixXd dense_matrix(const HamiltonianOperator& h);

/// k lowest eigenpairs via dense diagonalization.
SpectrumSnapshot spectrum_at(const HamiltonianOperator& h, int k, bool with_vectors = false, double t = 0.0);

/// Classical RK4 step of dψ/dt = -i H ψ with H held fixed.
StateVector step_rk4(const StateVector& psi, const HamiltonianOperator& h, double dt);

/// ψ -> V exp(-i Λ dt) Vᵀ ψ for H = V Λ Vᵀ.
StateVector step_magnus1(const StateVector& psi, const HamiltonianOperator& h, double dt);

/// Ground state of -Σ X_i: the uniform superposition.
StateVector uniform_state(int n);

/// Plug-in base class.  The driver calls initialize, then anneal once per
/// dt_anneal window (query_state at snapshot times), then measure and
/// finalize.  Only anneal is mandatory.
class Simulation {
public:
    Simulation(const QuantumProgram& prog, const SimulationOptions& opts);
    virtual ~Simulation() = default;

    Simulation(const Simulation&) = delete;
    Simulation& operator=(const Simulation&) = delete;

    virtual void initialize();
    /// Advance the state from t0 to t1.
    virtual void anneal(double t0, double t1) = 0;
    virtual SpectrumSnapshot query_state(double t);
    virtual void measure(ProgramResult& result);
    virtual void finalize(ProgramResult& result);

    /// False for plug-ins that only look at the spectrum.
    virtual bool evolves_state() const { return true; }

    const StateVector& state() const { return psi_; }

protected:
    double evaluation_time(double t0, double t1) const;

    const HamiltonianGenerator& generator() const { return gen_; }
    const SimulationOptions& options() const { return opts_; }

    HamiltonianGenerator gen_;
    SimulationOptions opts_;
    StateVector psi_;
    double max_drift_ = 0.0;
};

/// Diagonalizes H at the snapshot times only; no dynamics.
class SimulationZero : public Simulation {
public:
    using Simulation::Simulation;
    void anneal(double, double) override {}
    bool evolves_state() const override { return false; }
    void measure(ProgramResult&) override {}
};

class Rk4Simulation : public Simulation {
public:
    using Simulation::Simulation;
    void anneal(double t0, double t1) override;

private:
    kernels::Rk4Workspace ws_;
};

/// First-order Magnus: the frozen-H propagator is diagonalized once per
/// anneal window and applied for each evolve step.
class FopSimulation : public Simulation {
public:
    using Simulation::Simulation;
    void anneal(double t0, double t1) override;
};

std::unique_ptr<Simulation> make_simulation(const QuantumProgram& prog, const SimulationOptions& opts);

/// Snapshot hook, called as each snapshot is produced (in time order).
using SnapshotSink = std::function<void(std::size_t index, const SpectrumSnapshot&)>;

ProgramResult run(const QuantumProgram& prog, const SimulationOptions& opts, const SnapshotSink& sink = {});

/// Full probability list sorted descending, ties broken by ascending index.
std::vector<std::pair<std::uint64_t, double>> probability_distribution(const StateVector& psi);

double fidelity(const StateVector& a, const StateVector& b);

}  // namespace aqo
