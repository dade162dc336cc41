#include "aqo/program.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "aqo/kernels.hpp"

namespace aqo {

Schedule Schedule::tabulated(std::vector<std::pair<double, double>> knots) {
    if (knots.size() < 2) throw Error("tabulated schedule needs at least two knots");
    for (std::size_t k = 1; k < knots.size(); ++k)
        if (!(knots[k].first > knots[k - 1].first)) throw Error("tabulated schedule knots must be strictly increasing");
    if (knots.front().first > 0.0 || knots.back().first < 1.0)
        throw Error("tabulated schedule must cover normalized time [0, 1]");
    return Schedule(Kind::Tabulated, std::move(knots));
}

namespace {

std::size_t segment(const std::vector<std::pair<double, double>>& knots, double s) {
    auto it = std::upper_bound(knots.begin(), knots.end(), s,
                               [](double v, const auto& knot) { return v < knot.first; });
    std::size_t k = it == knots.begin() ? 0 : static_cast<std::size_t>(it - knots.begin()) - 1;
    return std::min(k, knots.size() - 2);
}

}  // namespace

double Schedule::value(double s) const {
    switch (kind_) {
        case Kind::LinearOn: return s;
        case Kind::LinearOff: return 1.0 - s;
        case Kind::Tabulated: {
            const auto k = segment(knots_, s);
            const auto [s0, v0] = knots_[k];
            const auto [s1, v1] = knots_[k + 1];
            return v0 + (v1 - v0) * (s - s0) / (s1 - s0);
        }
    }
    return 0.0;
}

double Schedule::slope(double s) const {
    switch (kind_) {
        case Kind::LinearOn: return 1.0;
        case Kind::LinearOff: return -1.0;
        case Kind::Tabulated: {
            const auto k = segment(knots_, s);
            return (knots_[k + 1].second - knots_[k].second) / (knots_[k + 1].first - knots_[k].first);
        }
    }
    return 0.0;
}

QuantumProgram QuantumProgram::with_swapped_schedules() const {
    QuantumProgram out = *this;
    std::swap(out.schedule_a, out.schedule_b);
    return out;
}

void check_schedule_boundaries(const Schedule& a, const Schedule& b) {
    if (!(a.value(0.0) > b.value(0.0)) || !(a.value(1.0) < b.value(1.0))) {
        std::ostringstream msg;
        msg << "schedules violate the boundary conditions A(0) > B(0), A(T) < B(T): A(0)=" << a.value(0.0)
            << " B(0)=" << b.value(0.0) << " A(T)=" << a.value(1.0) << " B(T)=" << b.value(1.0);
        throw Error(msg.str());
    }
}

namespace {

void check_program_shape(int n, double final_time) {
    if (!(final_time > 0.0) || !std::isfinite(final_time)) throw Error("final time T must be positive");
    if (n < 1) throw Error("program has no qubits");
    if (n > kEngineQubitLimit)
        throw Error("program has " + std::to_string(n) + " qubits; the engine limit is " +
                    std::to_string(kEngineQubitLimit));
}

}  // namespace

QuantumProgram physical_program(IsingModel model, double final_time, Schedule a, Schedule b) {
    check_program_shape(model.size(), final_time);
    check_schedule_boundaries(a, b);
    QuantumProgram prog;
    prog.physical = std::move(model);
    prog.schedule_a = std::move(a);
    prog.schedule_b = std::move(b);
    prog.final_time = final_time;
    return prog;
}

QuantumProgram synthesize(const QuboProblem& problem, const Processor& proc, double final_time, Schedule a,
                          Schedule b, const SynthesisOptions& options) {
    check_schedule_boundaries(a, b);
    IsingModel logical = qubo_to_ising(problem);
    Embedding emb = options.embedding ? *options.embedding
                                      : find_embedding(logical.topology(), proc, options.search);
    if (options.embedding) {
        auto report = validate_embedding(logical.topology(), proc, emb);
        if (!report.ok()) throw Error("invalid embedding: " + report.violations.front().message);
    }
    PhysicalIsing phys = embed_ising(logical, emb, proc, options.chain_strength);
    QuantumProgram prog = physical_program(phys.model, final_time, std::move(a), std::move(b));
    prog.logical_part = LogicalPart{problem, std::move(logical), std::move(phys.embedding),
                                    std::move(phys.physical_qubits), phys.penalty_j, proc.name};
    return prog;
}

HamiltonianOperator::HamiltonianOperator(int n, std::shared_ptr<const std::vector<double>> problem_diagonal,
                                         double transverse, double diagonal_scale)
    : n_(n), diag_(std::move(problem_diagonal)), transverse_(transverse), diagonal_scale_(diagonal_scale) {
    if (!diag_ || diag_->size() != dimension()) throw Error("HamiltonianOperator: diagonal size mismatch");
}

void HamiltonianOperator::apply(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) const {
    if (in.size() != dimension() || out.size() != dimension())
        throw Error("apply_hamiltonian: vector length " + std::to_string(in.size()) + " does not match dimension " +
                    std::to_string(dimension()));
    kernels::apply_hamiltonian(n_, transverse_, diagonal_scale_, *diag_, in, out);
}

HamiltonianGenerator::HamiltonianGenerator(const QuantumProgram& prog) : prog_(prog) {
    check_program_shape(prog.size(), prog.final_time);
    auto diag = std::make_shared<std::vector<double>>(std::size_t{1} << prog.size());
    kernels::ising_diagonal(prog.physical, *diag);
    diag_ = std::move(diag);
}

namespace {

double normalized_time(const QuantumProgram& prog, double t) {
    const double T = prog.final_time;
    const double eps = 1e-12 * std::max(1.0, T);
    if (t < -eps || t > T + eps) {
        std::ostringstream msg;
        msg << "time " << t << " outside [0, " << T << "]";
        throw Error(msg.str());
    }
    return std::clamp(t / T, 0.0, 1.0);
}

}  // namespace

HamiltonianOperator HamiltonianGenerator::at(double t) const {
    const double s = normalized_time(prog_, t);
    return HamiltonianOperator(prog_.size(), diag_, prog_.schedule_a.value(s), prog_.schedule_b.value(s));
}

HamiltonianOperator HamiltonianGenerator::derivative_at(double t) const {
    const double s = normalized_time(prog_, t);
    const double T = prog_.final_time;
    return HamiltonianOperator(prog_.size(), diag_, prog_.schedule_a.slope(s) / T, prog_.schedule_b.slope(s) / T);
}

HamiltonianOperator hamiltonian_at(const QuantumProgram& prog, double t) { return HamiltonianGenerator(prog).at(t); }

std::vector<std::complex<double>> apply_hamiltonian(const HamiltonianOperator& h,
                                                    std::span<const std::complex<double>> v) {
    std::vector<std::complex<double>> out(v.size());
    h.apply(v, out);
    return out;
}

}  // namespace aqo
