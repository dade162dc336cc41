#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace aqo {

// Base class for every domain error raised by the library.  The CLI maps
// these to exit code 1; argument errors are reported separately.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dense real symmetric matrix.  Symmetry is checked exactly on construction.
class SymmetricMatrix {
public:
    SymmetricMatrix() = default;
    explicit SymmetricMatrix(std::size_t n);
    /// Throws aqo::Error naming the first (i, j) with rows[i][j] != rows[j][i].
    explicit SymmetricMatrix(const std::vector<std::vector<double>>& rows);

    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    /// Sets both (i, j) and (j, i).
    void set(std::size_t i, std::size_t j, double value);
    void add(std::size_t i, std::size_t j, double value);

    std::vector<std::vector<double>> rows() const;

    /// x^T P x for a 0/1 vector.
    double quadratic_form(const std::vector<int>& x) const;

    bool operator==(const SymmetricMatrix&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

struct Edge {
    int i = 0;
    int j = 0;
    double weight = 0.0;

    bool operator==(const Edge&) const = default;
};

/// Undirected weighted graph with vertex weights.  Edges are stored once per
/// unordered pair with i < j and kept sorted; the graph is immutable once
/// built.
class WeightedGraph {
public:
    WeightedGraph() = default;
    explicit WeightedGraph(int n);
    /// Edges may be given in either orientation; self-loops, out-of-range
    /// vertices and duplicate pairs throw aqo::Error.
    WeightedGraph(std::vector<double> vertex_weights, std::vector<Edge> edges);

    int size() const { return static_cast<int>(vertex_weights_.size()); }
    const std::vector<double>& vertex_weights() const { return vertex_weights_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t edge_count() const { return edges_.size(); }

    bool has_edge(int i, int j) const;
    std::optional<double> weight(int i, int j) const;
    const std::vector<int>& neighbors(int v) const { return adjacency_[v]; }
    int degree(int v) const { return static_cast<int>(adjacency_[v].size()); }

    bool operator==(const WeightedGraph& o) const {
        return vertex_weights_ == o.vertex_weights_ && edges_ == o.edges_;
    }

private:
    std::vector<double> vertex_weights_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adjacency_;
};

/// vertex_weights[i] = P[i][i]; edge (i, j, P[i][j]) iff i < j and P[i][j] != 0.
WeightedGraph graph_from_matrix(const SymmetricMatrix& p);
/// Inverse of graph_from_matrix.
SymmetricMatrix matrix_from_graph(const WeightedGraph& g);

/// Maximal connected pieces of `subset` using only edges inside `subset`.
/// Each component is sorted; components are ordered by their smallest vertex.
std::vector<std::vector<int>> connected_components(const WeightedGraph& g,
                                                   const std::vector<int>& subset);

}  // namespace aqo
