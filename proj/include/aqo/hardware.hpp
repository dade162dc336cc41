#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aqo/graph.hpp"
#include "aqo/ising.hpp"

namespace aqo {

/// Processor connectivity.  Vertex and edge weights are availability flags
/// and are always 1.
struct Processor {
    std::string name;
    WeightedGraph hardware;

    Processor() = default;
    Processor(std::string name, WeightedGraph hardware);

    int size() const { return hardware.size(); }
};

/// Chimera lattice of K_{4,4} unit cells.  Cell (r, c) owns qubits
/// 8(r*cols + c) + k; k < 4 is the left half (coupled to the same k in the
/// cells above and below), k >= 4 the right half (coupled left/right).
Processor chimera(int rows, int cols);

/// trees[i] = hardware qubits representing logical vertex i, sorted.
struct Embedding {
    std::vector<std::vector<int>> trees;

    int size() const { return static_cast<int>(trees.size()); }
    /// Sorted union of all trees.
    std::vector<int> used_qubits() const;
    bool all_singletons() const;

    bool operator==(const Embedding&) const = default;
};

class EmbeddingError : public Error {
public:
    enum class Reason { Impossible, BudgetExhausted };
    EmbeddingError(Reason reason, const std::string& what) : Error(what), reason_(reason) {}
    Reason reason() const { return reason_; }

private:
    Reason reason_;
};

struct EmbeddingOptions {
    std::uint64_t node_budget = 2'000'000;  // candidate trees tried, summed over all passes
    int max_tree_size = 0;                  // 0 = limited only by free qubits
};

/// Exhaustive backtracking search, deepened on the number of extra qubits
/// (Σ |T_i| - 1), so an all-singleton embedding is returned whenever the
/// problem graph is a subgraph of the hardware.  Deterministic.
Embedding find_embedding(const WeightedGraph& problem, const Processor& proc,
                         const EmbeddingOptions& options = {});

struct EmbeddingViolation {
    enum class Kind { TreeCount, EmptyTree, OutOfRange, Overlap, Disconnected, MissingCoverage };
    Kind kind;
    int i = -1;  // logical vertex (or first endpoint)
    int j = -1;  // second endpoint / other tree
    int qubit = -1;
    std::string message;
};

struct EmbeddingReport {
    std::vector<EmbeddingViolation> violations;
    bool ok() const { return violations.empty(); }
};

EmbeddingReport validate_embedding(const WeightedGraph& problem, const Processor& proc, const Embedding& emb);

/// Ising model on the used hardware subgraph.  Model index k refers to
/// hardware qubit physical_qubits[k].
struct PhysicalIsing {
    IsingModel model;
    Embedding embedding;
    std::vector<int> physical_qubits;
    double penalty_j = 0.0;

    /// Model index of every qubit in tree i.
    std::vector<int> tree_indices(int i) const;
};

/// Chain strength used when none is given: 1 + Σ|α| + Σ|β|.
double auto_chain_strength(const IsingModel& logical);

/// α*_k = α_i / |T_i|; β* = β_ij / edges(T_i, T_j) on inter-tree hardware
/// edges, J on intra-tree hardware edges.  γ* = γ + J * (#intra-tree edges) so
/// aligned configurations keep the logical energy.
PhysicalIsing embed_ising(const IsingModel& logical, const Embedding& emb, const Processor& proc,
                          std::optional<double> chain_strength = std::nullopt);

}  // namespace aqo
