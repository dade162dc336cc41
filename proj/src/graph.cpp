#include "aqo/graph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace aqo {

SymmetricMatrix::SymmetricMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

SymmetricMatrix::SymmetricMatrix(const std::vector<std::vector<double>>& rows)
    : n_(rows.size()), data_(rows.size() * rows.size()) {
    for (std::size_t i = 0; i < n_; ++i) {
        if (rows[i].size() != n_) {
            std::ostringstream msg;
            msg << "matrix row " << i << " has " << rows[i].size() << " entries, expected " << n_;
            throw Error(msg.str());
        }
    }
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            if (rows[i][j] != rows[j][i]) {
                std::ostringstream msg;
                msg << "matrix is not symmetric: entry (" << i << ", " << j << ") = " << rows[i][j]
                    << " but (" << j << ", " << i << ") = " << rows[j][i];
                throw Error(msg.str());
            }
            data_[i * n_ + j] = rows[i][j];
        }
    }
}

void SymmetricMatrix::set(std::size_t i, std::size_t j, double value) {
    data_[i * n_ + j] = value;
    data_[j * n_ + i] = value;
}

void SymmetricMatrix::add(std::size_t i, std::size_t j, double value) {
    data_[i * n_ + j] += value;
    if (i != j) data_[j * n_ + i] += value;
}

std::vector<std::vector<double>> SymmetricMatrix::rows() const {
    std::vector<std::vector<double>> out(n_, std::vector<double>(n_));
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) out[i][j] = data_[i * n_ + j];
    return out;
}

double SymmetricMatrix::quadratic_form(const std::vector<int>& x) const {
    if (x.size() != n_) throw Error("quadratic_form: dimension mismatch");
    double value = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        if (!x[i]) continue;
        for (std::size_t j = 0; j < n_; ++j)
            if (x[j]) value += data_[i * n_ + j];
    }
    return value;
}

WeightedGraph::WeightedGraph(int n)
    : vertex_weights_(static_cast<std::size_t>(n), 0.0), adjacency_(static_cast<std::size_t>(n)) {}

WeightedGraph::WeightedGraph(std::vector<double> vertex_weights, std::vector<Edge> edges)
    : vertex_weights_(std::move(vertex_weights)), adjacency_(vertex_weights_.size()) {
    const int n = size();
    for (auto& e : edges) {
        if (e.i == e.j) throw Error("self-loop on vertex " + std::to_string(e.i));
        if (e.i < 0 || e.j < 0 || e.i >= n || e.j >= n)
            throw Error("edge (" + std::to_string(e.i) + ", " + std::to_string(e.j) +
                        ") out of range for " + std::to_string(n) + " vertices");
        if (e.i > e.j) std::swap(e.i, e.j);
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });
    for (std::size_t k = 1; k < edges.size(); ++k) {
        if (edges[k].i == edges[k - 1].i && edges[k].j == edges[k - 1].j)
            throw Error("duplicate edge (" + std::to_string(edges[k].i) + ", " +
                        std::to_string(edges[k].j) + ")");
    }
    edges_ = std::move(edges);
    for (const auto& e : edges_) {
        adjacency_[e.i].push_back(e.j);
        adjacency_[e.j].push_back(e.i);
    }
    for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
}

bool WeightedGraph::has_edge(int i, int j) const { return weight(i, j).has_value(); }

std::optional<double> WeightedGraph::weight(int i, int j) const {
    if (i == j || i < 0 || j < 0 || i >= size() || j >= size()) return std::nullopt;
    if (i > j) std::swap(i, j);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{i, j},
                               [](const Edge& e, const std::pair<int, int>& key) {
                                   return e.i != key.first ? e.i < key.first : e.j < key.second;
                               });
    if (it != edges_.end() && it->i == i && it->j == j) return it->weight;
    return std::nullopt;
}

WeightedGraph graph_from_matrix(const SymmetricMatrix& p) {
    const int n = static_cast<int>(p.size());
    std::vector<double> diag(static_cast<std::size_t>(n));
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
        diag[i] = p(i, i);
        for (int j = i + 1; j < n; ++j)
            if (p(i, j) != 0.0) edges.push_back({i, j, p(i, j)});
    }
    return WeightedGraph(std::move(diag), std::move(edges));
}

SymmetricMatrix matrix_from_graph(const WeightedGraph& g) {
    SymmetricMatrix p(static_cast<std::size_t>(g.size()));
    for (int i = 0; i < g.size(); ++i) p.set(i, i, g.vertex_weights()[i]);
    for (const auto& e : g.edges()) p.set(e.i, e.j, e.weight);
    return p;
}

std::vector<std::vector<int>> connected_components(const WeightedGraph& g,
                                                   const std::vector<int>& subset) {
    std::vector<char> member(static_cast<std::size_t>(g.size()), 0);
    for (int v : subset) {
        if (v < 0 || v >= g.size()) throw Error("connected_components: vertex out of range");
        member[v] = 1;
    }
    std::vector<int> ordered(subset);
    std::sort(ordered.begin(), ordered.end());
    ordered.erase(std::unique(ordered.begin(), ordered.end()), ordered.end());

    std::vector<char> seen(member.size(), 0);
    std::vector<std::vector<int>> components;
    for (int root : ordered) {
        if (seen[root]) continue;
        std::vector<int> component;
        std::deque<int> queue{root};
        seen[root] = 1;
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            component.push_back(v);
            for (int w : g.neighbors(v)) {
                if (member[w] && !seen[w]) {
                    seen[w] = 1;
                    queue.push_back(w);
                }
            }
        }
        std::sort(component.begin(), component.end());
        components.push_back(std::move(component));
    }
    return components;
}

}  // namespace aqo
