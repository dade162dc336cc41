#include "aqo/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include <Eigen/Eigenvalues>

namespace aqo {

double rate_at(const HamiltonianGenerator& gen, double t) {
    if (gen.program().size() > kDenseSpectrumLimit)
        throw Error("rate bound needs a dense spectrum; " + std::to_string(gen.program().size()) + " qubits exceed " +
                    std::to_string(kDenseSpectrumLimit));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense_matrix(gen.derivative_at(t)), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw Error("rate bound: eigensolver did not converge");
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

GapProfile gap_profile(const std::vector<SpectrumSnapshot>& snapshots, const QuantumProgram& prog) {
    if (snapshots.size() < 2) throw Error("gap profile needs at least two snapshots");
    GapProfile g;
    HamiltonianGenerator gen(prog);
    g.delta_star = std::numeric_limits<double>::infinity();
    for (const auto& s : snapshots) {
        if (s.eigenvalues.size() < 2)
            throw Error("gap profile needs at least two eigenvalues per snapshot (t = " + std::to_string(s.t) + ")");
        const double d = std::max(0.0, s.eigenvalues[1] - s.eigenvalues[0]);
        g.times.push_back(s.t);
        g.delta.push_back(d);
        if (d < g.delta_star) {
            g.delta_star = d;
            g.t_star = s.t;
        }
        g.rate_bound = std::max(g.rate_bound, rate_at(gen, s.t));
    }
    g.t_adiabatic = g.delta_star > 0.0 ? g.rate_bound / g.delta_star : std::numeric_limits<double>::infinity();
    return g;
}

EigenpathTrace track_eigenpaths(const std::vector<SpectrumSnapshot>& snapshots, const std::vector<int>& extra) {
    if (snapshots.empty()) throw Error("eigenpath tracking needs snapshots");
    for (std::size_t k = 0; k < snapshots.size(); ++k)
        if (!snapshots[k].eigenvectors)
            throw Error("eigenpath tracking needs eigenvectors at every snapshot (missing at index " +
                        std::to_string(k) + ")");

    EigenpathTrace tr;
    const auto& last = snapshots.back();
    const double e0 = last.eigenvalues.front();
    const double tol = 1e-9 * std::max(1.0, std::abs(e0));
    const int count = static_cast<int>(last.eigenvalues.size());
    for (int i = 0; i < count; ++i)
        if (std::abs(last.eigenvalues[i] - e0) < tol) tr.ground_manifold.push_back(i);

    std::vector<int> keys = tr.ground_manifold;
    for (int i : extra) {
        if (i < 0 || i >= count) throw Error("eigenpath index " + std::to_string(i) + " out of range");
        keys.push_back(i);
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

    const std::size_t K = snapshots.size();
    for (int key : keys) tr.indices[key].assign(K, -1);
    for (int key : keys) tr.indices[key][K - 1] = key;

    for (std::size_t k = K - 1; k-- > 0;) {
        const Eigen::MatrixXd& later = *snapshots[k + 1].eigenvectors;
        const Eigen::MatrixXd& earlier = *snapshots[k].eigenvectors;
        if (later.rows() != earlier.rows()) throw Error("eigenpath tracking: snapshot dimensions differ");
        std::vector<std::tuple<double, int, int>> candidates;  // overlap, key, earlier index
        for (int key : keys) {
            const int cur = tr.indices[key][k + 1];
            const Eigen::VectorXd ov = (earlier.transpose() * later.col(cur)).cwiseAbs();
            for (Eigen::Index j = 0; j < ov.size(); ++j) candidates.emplace_back(ov[j], key, static_cast<int>(j));
        }
        std::stable_sort(candidates.begin(), candidates.end(),
                         [](const auto& a, const auto& b) { return std::get<0>(a) > std::get<0>(b); });
        std::vector<bool> used(static_cast<std::size_t>(earlier.cols()), false);
        std::size_t assigned = 0;
        for (const auto& [ov, key, j] : candidates) {
            if (assigned == keys.size()) break;
            if (used[j] || tr.indices[key][k] >= 0) continue;
            tr.indices[key][k] = j;
            used[j] = true;
            ++assigned;
            if (ov < kOverlapThreshold) tr.ambiguous.push_back({key, k, ov});
        }
        if (assigned != keys.size()) throw Error("eigenpath tracking: more paths than eigenvectors");
    }

    for (const auto& s : snapshots) tr.times.push_back(s.t);
    for (int key : keys) {
        auto& path = tr.tracked[key];
        for (std::size_t k = 0; k < K; ++k) path.emplace_back(snapshots[k].t, snapshots[k].eigenvalues[tr.indices[key][k]]);
    }
    return tr;
}

namespace {

double overlap_squared(const Eigen::MatrixXd& vectors, int col, const StateVector& psi) {
    std::complex<double> acc = 0.0;
    for (std::size_t z = 0; z < psi.size(); ++z) acc += vectors(static_cast<Eigen::Index>(z), col) * psi[z];
    return std::norm(acc);
}

}  // namespace

std::vector<PopulationPoint> population_trace(const std::vector<SpectrumSnapshot>& snapshots,
                                              const EigenpathTrace& trace) {
    std::vector<PopulationPoint> out;
    for (std::size_t k = 0; k < snapshots.size(); ++k) {
        const auto& s = snapshots[k];
        if (!s.state || !s.eigenvectors)
            throw Error("population trace needs state and eigenvectors at every snapshot (missing at index " +
                        std::to_string(k) + ")");
        if (static_cast<std::size_t>(s.eigenvectors->rows()) != s.state->size())
            throw Error("population trace: eigenvector and state dimensions differ");
        PopulationPoint p;
        p.t = s.t;
        p.ground = overlap_squared(*s.eigenvectors, 0, *s.state);
        for (int key : trace.ground_manifold) {
            const auto it = trace.indices.find(key);
            if (it == trace.indices.end() || it->second.size() != snapshots.size())
                throw Error("population trace: eigenpath trace does not match the snapshots");
            p.manifold += overlap_squared(*s.eigenvectors, it->second[k], *s.state);
        }
        p.excited = kernels::norm_squared(*s.state) - p.manifold;
        out.push_back(p);
    }
    return out;
}

std::optional<double> departure_time(const std::vector<PopulationPoint>& trace, double threshold) {
    for (const auto& p : trace)
        if (p.ground < threshold) return p.t;
    return std::nullopt;
}

bool Readout::had_ties() const {
    return std::any_of(votes.begin(), votes.end(), [](const TreeVote& v) { return v.tie; });
}

Readout decode_readout(const BitString& physical, const Embedding& emb, const std::vector<int>& physical_qubits,
                       const TieObjective& objective) {
    std::map<int, int> index_of;  // hardware qubit -> position in `physical`
    if (!physical_qubits.empty()) {
        if (physical_qubits.size() != physical.size())
            throw Error("decode_readout: readout length does not match the physical qubit map");
        for (std::size_t k = 0; k < physical_qubits.size(); ++k) index_of[physical_qubits[k]] = static_cast<int>(k);
    }
    Readout r;
    std::vector<int> tied;
    for (int i = 0; i < emb.size(); ++i) {
        TreeVote v;
        for (int q : emb.trees[i]) {
            int pos = q;
            if (!physical_qubits.empty()) {
                auto it = index_of.find(q);
                if (it == index_of.end()) throw Error("decode_readout: qubit " + std::to_string(q) + " not read out");
                pos = it->second;
            } else if (q < 0 || q >= static_cast<int>(physical.size())) {
                throw Error("decode_readout: qubit " + std::to_string(q) + " not read out");
            }
            (physical[pos] ? v.ones : v.zeros) += 1;
        }
        v.tie = v.ones == v.zeros;
        v.value = v.ones > v.zeros ? 1 : 0;
        if (v.tie) tied.push_back(i);
        r.votes.push_back(v);
        r.logical.push_back(v.value);
    }
    if (!tied.empty() && objective) {
        if (tied.size() > 20) throw Error("decode_readout: too many tied trees to enumerate");
        double best = std::numeric_limits<double>::infinity();
        std::uint64_t best_mask = 0;
        BitString trial = r.logical;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << tied.size()); ++mask) {
            for (std::size_t b = 0; b < tied.size(); ++b) trial[tied[b]] = static_cast<int>((mask >> b) & 1);
            const double value = objective(trial);
            if (value < best) {
                best = value;
                best_mask = mask;
            }
        }
        for (std::size_t b = 0; b < tied.size(); ++b) {
            const int value = static_cast<int>((best_mask >> b) & 1);
            r.logical[tied[b]] = value;
            r.votes[tied[b]].value = value;
        }
    }
    return r;
}

Solution assemble_solution(const ProgramResult& result, const QuantumProgram& prog) {
    if (result.distribution.empty()) throw Error("result has no probability distribution (spectrum-only run?)");
    Solution sol;
    sol.readout = result.distribution.front().first;
    sol.probability = result.distribution.front().second;
    const int n = prog.size();
    const BitString physical = basis_bits(sol.readout, n);
    sol.physical_energy = ising_energy(prog.physical, bit_spin_encode(physical)) + prog.physical.gamma;

    if (!prog.logical_part) {
        Embedding identity;
        for (int i = 0; i < n; ++i) identity.trees.push_back({i});
        sol.provenance = decode_readout(physical, identity);
        sol.bits = physical;
        sol.logical = physical;
        return sol;
    }
    const auto& lp = *prog.logical_part;
    const QuboProblem& q = lp.problem;
    sol.provenance = decode_readout(physical, lp.embedding, lp.physical_qubits,
                                    [&](const BitString& x) { return q.objective(x); });
    sol.logical = sol.provenance.logical;
    const int keep = q.num_original > 0 ? q.num_original : q.size();
    sol.bits.assign(sol.logical.begin(), sol.logical.begin() + std::min<std::size_t>(keep, sol.logical.size()));
    sol.qubo_value = q.objective(sol.logical);
    sol.objective_value = *sol.qubo_value + q.constant_offset;
    if (q.bop) sol.bop_value = q.bop->evaluate(sol.bits);
    return sol;
}

}  // namespace aqo
