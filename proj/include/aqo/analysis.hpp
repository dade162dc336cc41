#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aqo/engine.hpp"

namespace aqo {

struct GapProfile {
    std::vector<double> times;
    std::vector<double> delta;  // E_1 - E_0 per snapshot
    double delta_star = 0.0;
    double t_star = 0.0;
    double rate_bound = 0.0;   // max_t ‖dH/dt‖₂ over the snapshot times
    double t_adiabatic = 0.0;  // rate_bound / delta_star, +inf when the gap closes
};

/// Needs >= 2 snapshots with >= 2 eigenvalues each.  The rate bound uses the
/// dense spectral norm of A'(t) H_I + B'(t) H_P (n <= kDenseSpectrumLimit).
GapProfile gap_profile(const std::vector<SpectrumSnapshot>& snapshots, const QuantumProgram& prog);

/// Spectral norm of dH/dt at t.
double rate_at(const HamiltonianGenerator& gen, double t);

inline constexpr double kOverlapThreshold = 0.5;

struct AmbiguousMatch {
    int final_index = 0;  // trace key
    std::size_t snapshot = 0;  // matching snapshot -> snapshot + 1 was below threshold
    double overlap = 0.0;
};

struct EigenpathTrace {
    std::vector<double> times;
    /// final-time eigenindex -> eigenindex at every snapshot (same length as times)
    std::map<int, std::vector<int>> indices;
    /// final-time eigenindex -> (t, energy) along the path
    std::map<int, std::vector<std::pair<double, double>>> tracked;
    std::vector<int> ground_manifold;  // sorted final-time indices
    std::vector<AmbiguousMatch> ambiguous;
};

/// Ground-manifold members at the last snapshot (|E - E_0| < 1e-9 max(1, |E_0|))
/// are followed backwards by greedy maximal-overlap matching of consecutive
/// eigenvector sets.  `extra` adds further final-time indices to follow.
EigenpathTrace track_eigenpaths(const std::vector<SpectrumSnapshot>& snapshots, const std::vector<int>& extra = {});

struct PopulationPoint {
    double t = 0.0;
    double ground = 0.0;    // |<φ_0(t)|ψ(t)>|²
    double manifold = 0.0;  // Σ over the tracked ground-manifold paths
    double excited = 0.0;   // ‖ψ‖² - manifold
};

/// Needs state and eigenvectors at every snapshot.
std::vector<PopulationPoint> population_trace(const std::vector<SpectrumSnapshot>& snapshots,
                                              const EigenpathTrace& trace);

/// First snapshot time with ground population below `threshold`.
std::optional<double> departure_time(const std::vector<PopulationPoint>& trace, double threshold = 0.99);

struct TreeVote {
    int ones = 0;
    int zeros = 0;
    bool tie = false;
    int value = 0;
};

struct Readout {
    BitString logical;
    std::vector<TreeVote> votes;
    bool had_ties() const;
};

/// Objective to minimize when breaking majority-vote ties.
using TieObjective = std::function<double(const BitString&)>;

/// Majority vote per tree.  `physical` is indexed by model index and
/// physical_qubits maps model index -> hardware qubit (empty means the
/// trees index `physical` directly).  Ties are resolved by evaluating every
/// combination of tied bits with `objective` and keeping the lowest (first
/// in enumeration order on equality); without an objective tied bits are 0.
Readout decode_readout(const BitString& physical, const Embedding& emb, const std::vector<int>& physical_qubits = {},
                       const TieObjective& objective = {});

struct Solution {
    BitString bits;                   // original problem variables (ancillas stripped)
    BitString logical;                // every QUBO variable, as decoded
    std::optional<double> qubo_value;  // x^T P x over `logical`, equal to Ising energy + γ
    std::optional<double> objective_value;  // qubo_value + constant offset
    std::optional<double> bop_value;
    std::uint64_t readout = 0;  // most probable physical basis index
    double probability = 0.0;
    double physical_energy = 0.0;  // physical Ising energy + γ of the readout
    Readout provenance;
};

/// Decodes the most probable readout.  Without a logical part the physical
/// configuration is returned as is.
Solution assemble_solution(const ProgramResult& result, const QuantumProgram& prog);

}  // namespace aqo
