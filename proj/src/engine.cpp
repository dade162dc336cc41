#include "aqo/engine.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace aqo {

std::string to_string(Plugin p) {
    switch (p) {
        case Plugin::SpectrumZero: return "zero";
        case Plugin::Rk4: return "rk4";
        case Plugin::FopMagnus: return "fop";
    }
    return "unknown";
}

Plugin plugin_from_string(const std::string& name) {
    if (name == "zero" || name == "spectrum_zero") return Plugin::SpectrumZero;
    if (name == "rk4") return Plugin::Rk4;
    if (name == "fop" || name == "fop_magnus" || name == "magnus") return Plugin::FopMagnus;
    throw Error("unknown simulation plug-in '" + name + "' (expected zero, rk4 or fop)");
}

namespace {

bool is_integer_multiple(double big, double small) {
    const double ratio = big / small;
    return std::abs(ratio - std::round(ratio)) <= 1e-9 * std::max(1.0, ratio);
}

std::string describe(double v) {
    std::ostringstream s;
    s << v;
    return s.str();
}

}  // namespace

void validate_options(const SimulationOptions& o, const QuantumProgram& prog) {
    const double T = prog.final_time;
    if (!(o.dt_evolve > 0.0)) throw Error("dt_evolve must be positive");
    if (!(o.dt_evolve <= o.dt_anneal)) throw Error("dt_evolve must not exceed dt_anneal");
    if (!(o.dt_anneal <= o.snapshot_interval)) throw Error("dt_anneal must not exceed the snapshot interval");
    if (!(o.snapshot_interval <= T * (1 + 1e-12)))
        throw Error("snapshot interval " + describe(o.snapshot_interval) + " exceeds the final time " + describe(T));
    if (!is_integer_multiple(o.dt_anneal, o.dt_evolve))
        throw Error("dt_anneal (" + describe(o.dt_anneal) + ") is not an integer multiple of dt_evolve (" +
                    describe(o.dt_evolve) + ")");
    const auto dim = std::size_t{1} << prog.size();
    if (o.num_eigenstates < 0 || static_cast<std::size_t>(o.num_eigenstates) > dim)
        throw Error("num_eigenstates must lie in [0, " + std::to_string(dim) + "]");
    if (prog.size() > kDenseSpectrumLimit && !o.allow_large_spectrum)
        throw Error("dense spectra above " + std::to_string(kDenseSpectrumLimit) +
                    " qubits need allow_large_spectrum");
    if (o.samples < 0) throw Error("samples must be non-negative");
}

Eigen::MatrixXd dense_matrix(const HamiltonianOperator& h) {
    const int n = h.qubits();
    if (n > 14) throw Error("dense_matrix: too many qubits");
    const auto dim = static_cast<Eigen::Index>(h.dimension());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index z = 0; z < dim; ++z) {
        m(z, z) = h.diagonal(static_cast<std::size_t>(z));
        for (int b = 0; b < n; ++b) m(z ^ (Eigen::Index{1} << b), z) -= h.transverse_strength();
    }
    return m;
}

SpectrumSnapshot spectrum_at(const HamiltonianOperator& h, int k, bool with_vectors, double t) {
    const auto dim = static_cast<int>(h.dimension());
    if (k < 1 || k > dim) throw Error("spectrum_at: k must lie in [1, " + std::to_string(dim) + "]");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        dense_matrix(h), with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw Error("spectrum_at: eigensolver did not converge");
    SpectrumSnapshot snap;
    snap.t = t;
    const auto& values = solver.eigenvalues();
    snap.eigenvalues.assign(values.data(), values.data() + k);
    if (with_vectors) snap.eigenvectors = solver.eigenvectors().leftCols(k);
    return snap;
}

StateVector step_rk4(const StateVector& psi, const HamiltonianOperator& h, double dt) {
    if (psi.size() != h.dimension()) throw Error("step_rk4: state dimension mismatch");
    StateVector out = psi;
    kernels::Rk4Workspace ws;
    kernels::rk4_step(h.qubits(), h.transverse_strength(), h.diagonal_scale(), h.problem_diagonal(), dt, out, ws);
    return out;
}

namespace {

// Coefficients of ψ in the eigenbasis, phase rotation, and back.
struct EigenPropagator {
    Eigen::MatrixXd vectors;
    Eigen::VectorXd values;

    explicit EigenPropagator(const HamiltonianOperator& h) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense_matrix(h));
        if (solver.info() != Eigen::Success) throw Error("magnus step: eigensolver did not converge");
        vectors = solver.eigenvectors();
        values = solver.eigenvalues();
    }

    void propagate(StateVector& psi, double dt, long steps) const {
        const auto dim = static_cast<Eigen::Index>(psi.size());
        Eigen::Map<Eigen::VectorXcd> state(psi.data(), dim);
        Eigen::VectorXd re = vectors.transpose() * state.real();
        Eigen::VectorXd im = vectors.transpose() * state.imag();
        std::vector<std::complex<double>> coeff(static_cast<std::size_t>(dim)), phases(coeff.size());
        for (Eigen::Index j = 0; j < dim; ++j) {
            coeff[j] = {re[j], im[j]};
            phases[j] = std::polar(1.0, -values[j] * dt);
        }
        for (long s = 0; s < steps; ++s) kernels::apply_phases(phases, coeff);
        for (Eigen::Index j = 0; j < dim; ++j) {
            re[j] = coeff[j].real();
            im[j] = coeff[j].imag();
        }
        Eigen::VectorXd out_re = vectors * re;
        Eigen::VectorXd out_im = vectors * im;
        for (Eigen::Index z = 0; z < dim; ++z) psi[z] = {out_re[z], out_im[z]};
    }
};

long inner_steps(double t0, double t1, double dt_evolve) {
    return std::max(1L, std::lround((t1 - t0) / dt_evolve));
}

}  // namespace

StateVector step_magnus1(const StateVector& psi, const HamiltonianOperator& h, double dt) {
    if (psi.size() != h.dimension()) throw Error("step_magnus1: state dimension mismatch");
    StateVector out = psi;
    EigenPropagator(h).propagate(out, dt, 1);
    return out;
}

StateVector uniform_state(int n) {
    const auto dim = std::size_t{1} << n;
    return StateVector(dim, std::complex<double>(1.0 / std::sqrt(static_cast<double>(dim)), 0.0));
}

Simulation::Simulation(const QuantumProgram& prog, const SimulationOptions& opts) : gen_(prog), opts_(opts) {}

void Simulation::initialize() { psi_ = uniform_state(gen_.program().size()); }

double Simulation::evaluation_time(double t0, double t1) const {
    return opts_.evaluation == HamiltonianEvaluation::Midpoint ? 0.5 * (t0 + t1) : t0;
}

SpectrumSnapshot Simulation::query_state(double t) {
    const auto dim = static_cast<int>(std::size_t{1} << gen_.program().size());
    const int k = opts_.num_eigenstates > 0 ? opts_.num_eigenstates : dim;
    SpectrumSnapshot snap = spectrum_at(gen_.at(t), k, opts_.store_eigenvectors, t);
    if (evolves_state()) {
        const double norm = kernels::norm_squared(psi_);
        max_drift_ = std::max(max_drift_, std::abs(1.0 - norm));
        std::vector<double> pops(psi_.size());
        for (std::size_t z = 0; z < psi_.size(); ++z) pops[z] = std::norm(psi_[z]);
        snap.populations = std::move(pops);
        if (opts_.store_state) snap.state = psi_;
    }
    return snap;
}

void Simulation::measure(ProgramResult& result) {
    result.distribution = probability_distribution(psi_);
    if (opts_.samples > 0) {
        std::vector<double> weights(psi_.size());
        for (std::size_t z = 0; z < psi_.size(); ++z) weights[z] = std::norm(psi_[z]);
        std::mt19937_64 rng(opts_.seed);
        std::discrete_distribution<std::uint64_t> draw(weights.begin(), weights.end());
        std::vector<int> counts(psi_.size(), 0);
        for (int s = 0; s < opts_.samples; ++s) ++counts[draw(rng)];
        for (std::size_t z = 0; z < counts.size(); ++z)
            if (counts[z]) result.samples.emplace_back(z, counts[z]);
        std::stable_sort(result.samples.begin(), result.samples.end(),
                         [](const auto& a, const auto& b) { return a.second > b.second; });
    }
}

void Simulation::finalize(ProgramResult& result) {
    result.qubits = gen_.program().size();
    if (!evolves_state()) return;
    result.norm = kernels::norm_squared(psi_);
    max_drift_ = std::max(max_drift_, std::abs(1.0 - result.norm));
    result.max_norm_drift = max_drift_;
    result.final_state = psi_;
}

void Rk4Simulation::anneal(double t0, double t1) {
    const auto h = gen_.at(evaluation_time(t0, t1));
    const long steps = inner_steps(t0, t1, opts_.dt_evolve);
    const double dt = (t1 - t0) / static_cast<double>(steps);
    for (long s = 0; s < steps; ++s)
        kernels::rk4_step(h.qubits(), h.transverse_strength(), h.diagonal_scale(), h.problem_diagonal(), dt, psi_,
                          ws_);
}

void FopSimulation::anneal(double t0, double t1) {
    const long steps = inner_steps(t0, t1, opts_.dt_evolve);
    EigenPropagator(gen_.at(evaluation_time(t0, t1))).propagate(psi_, (t1 - t0) / static_cast<double>(steps), steps);
}

std::unique_ptr<Simulation> make_simulation(const QuantumProgram& prog, const SimulationOptions& opts) {
    switch (opts.plugin) {
        case Plugin::SpectrumZero: return std::make_unique<SimulationZero>(prog, opts);
        case Plugin::Rk4: return std::make_unique<Rk4Simulation>(prog, opts);
        case Plugin::FopMagnus: return std::make_unique<FopSimulation>(prog, opts);
    }
    throw Error("unknown plug-in");
}

std::vector<std::pair<std::uint64_t, double>> probability_distribution(const StateVector& psi) {
    std::vector<std::pair<std::uint64_t, double>> out(psi.size());
    for (std::size_t z = 0; z < psi.size(); ++z) out[z] = {z, std::norm(psi[z])};
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    return out;
}

double fidelity(const StateVector& a, const StateVector& b) {
    if (a.size() != b.size()) throw Error("fidelity: dimension mismatch");
    std::complex<double> overlap = 0.0;
    for (std::size_t z = 0; z < a.size(); ++z) overlap += std::conj(a[z]) * b[z];
    return std::norm(overlap);
}

ProgramResult run(const QuantumProgram& prog, const SimulationOptions& opts, const SnapshotSink& sink) {
    validate_options(opts, prog);
    const double T = prog.final_time;
    const double si = opts.snapshot_interval;
    const double eps = 1e-9 * std::max(1.0, T);
    const auto last_snapshot = static_cast<long>(std::floor(T / si + 1e-9));

    auto sim = make_simulation(prog, opts);
    sim->initialize();
    ProgramResult result;

    if (!sim->evolves_state()) {
        // No state to carry, so snapshots are independent; emit in time order afterwards.
        result.snapshots.resize(static_cast<std::size_t>(last_snapshot + 1));
        std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
        for (long k = 0; k <= last_snapshot; ++k) {
            try {
                result.snapshots[k] = sim->query_state(std::min(static_cast<double>(k) * si, T));
            } catch (...) {
#pragma omp critical
                failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);
        if (sink)
            for (std::size_t k = 0; k < result.snapshots.size(); ++k) sink(k, result.snapshots[k]);
    } else {
        long next = 0;
        auto emit_due = [&](double t) {
            while (next <= last_snapshot && t >= static_cast<double>(next) * si - eps) {
                const double scheduled = static_cast<double>(next) * si;
                auto snap = sim->query_state(std::abs(t - scheduled) <= eps ? scheduled : t);
                if (sink) sink(result.snapshots.size(), snap);
                result.snapshots.push_back(std::move(snap));
                ++next;
            }
        };
        emit_due(0.0);
        const auto windows = static_cast<long>(std::ceil(T / opts.dt_anneal - 1e-9));
        for (long w = 0; w < windows; ++w) {
            const double t0 = static_cast<double>(w) * opts.dt_anneal;
            const double t1 = w + 1 == windows ? T : std::min(static_cast<double>(w + 1) * opts.dt_anneal, T);
            sim->anneal(t0, t1);
            emit_due(t1);
        }
    }
    sim->measure(result);
    sim->finalize(result);
    return result;
}

}  // namespace aqo
