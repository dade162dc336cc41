#include "aqo/hardware.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace aqo {

Processor::Processor(std::string n, WeightedGraph hw) : name(std::move(n)), hardware(std::move(hw)) {
    for (double w : hardware.vertex_weights())
        if (w != 1.0) throw Error("processor vertex weights must all be 1");
    for (const auto& e : hardware.edges())
        if (e.weight != 1.0) throw Error("processor edge weights must all be 1");
}

Processor chimera(int rows, int cols) {
    if (rows < 1 || cols < 1) throw Error("chimera: rows and cols must be positive");
    const int n = 8 * rows * cols;
    auto qubit = [cols](int r, int c, int k) { return 8 * (r * cols + c) + k; };
    std::vector<Edge> edges;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            for (int a = 0; a < 4; ++a)
                for (int b = 4; b < 8; ++b) edges.push_back({qubit(r, c, a), qubit(r, c, b), 1.0});
            if (r + 1 < rows)
                for (int k = 0; k < 4; ++k) edges.push_back({qubit(r, c, k), qubit(r + 1, c, k), 1.0});
            if (c + 1 < cols)
                for (int k = 4; k < 8; ++k) edges.push_back({qubit(r, c, k), qubit(r, c + 1, k), 1.0});
        }
    }
    std::ostringstream name;
    name << "chimera_" << rows << "x" << cols;
    return Processor(name.str(), WeightedGraph(std::vector<double>(static_cast<std::size_t>(n), 1.0),
                                               std::move(edges)));
}

std::vector<int> Embedding::used_qubits() const {
    std::vector<int> out;
    for (const auto& t : trees) out.insert(out.end(), t.begin(), t.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool Embedding::all_singletons() const {
    return std::all_of(trees.begin(), trees.end(), [](const auto& t) { return t.size() == 1; });
}

namespace {

struct BudgetExceeded {};

class EmbeddingSearch {
public:
    EmbeddingSearch(const WeightedGraph& problem, const WeightedGraph& hardware, const EmbeddingOptions& options)
        : problem_(problem), hw_(hardware), options_(options) {
        order_ = search_order();
        position_.assign(order_.size(), 0);
        for (std::size_t p = 0; p < order_.size(); ++p) position_[order_[p]] = static_cast<int>(p);
    }

    std::optional<Embedding> run(int extra) {
        trees_.assign(static_cast<std::size_t>(problem_.size()), {});
        used_.assign(static_cast<std::size_t>(hw_.size()), 0);
        if (!place(0, extra)) return std::nullopt;
        return Embedding{trees_};
    }

private:
    // BFS from the highest-degree vertex so that every vertex after the first
    // of its component already has a placed neighbour.
    std::vector<int> search_order() const {
        const int n = problem_.size();
        std::vector<int> order;
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        while (static_cast<int>(order.size()) < n) {
            int root = -1;
            for (int v = 0; v < n; ++v)
                if (!seen[v] && (root < 0 || problem_.degree(v) > problem_.degree(root))) root = v;
            std::vector<int> frontier{root};
            seen[root] = 1;
            for (std::size_t k = 0; k < frontier.size(); ++k) {
                const int v = frontier[k];
                order.push_back(v);
                std::vector<int> next;
                for (int w : problem_.neighbors(v))
                    if (!seen[w]) next.push_back(w);
                std::stable_sort(next.begin(), next.end(),
                                 [&](int a, int b) { return problem_.degree(a) > problem_.degree(b); });
                for (int w : next) {
                    seen[w] = 1;
                    frontier.push_back(w);
                }
            }
        }
        return order;
    }

    bool touches(const std::vector<int>& tree, const std::vector<int>& other) const {
        for (int a : tree)
            for (int b : hw_.neighbors(a))
                if (std::binary_search(other.begin(), other.end(), b)) return true;
        return false;
    }

    void grow(std::vector<int>& current, std::size_t max_size, std::set<std::vector<int>>& out) {
        std::vector<int> sorted = current;
        std::sort(sorted.begin(), sorted.end());
        if (!out.insert(sorted).second) return;
        if (++nodes_ > options_.node_budget) throw BudgetExceeded{};
        if (current.size() >= max_size) return;
        std::set<int> frontier;
        for (int a : current)
            for (int b : hw_.neighbors(a))
                if (!used_[b] && std::find(current.begin(), current.end(), b) == current.end())
                    frontier.insert(b);
        for (int b : frontier) {
            current.push_back(b);
            grow(current, max_size, out);
            current.pop_back();
        }
    }

    std::vector<std::vector<int>> candidates(int v, int extra) {
        std::vector<int> placed;
        for (int u : problem_.neighbors(v))
            if (position_[u] < position_[v]) placed.push_back(u);

        std::vector<int> seeds;
        if (placed.empty()) {
            for (int q = 0; q < hw_.size(); ++q)
                if (!used_[q]) seeds.push_back(q);
        } else {
            std::set<int> adjacent;
            for (int a : trees_[placed.front()])
                for (int b : hw_.neighbors(a))
                    if (!used_[b]) adjacent.insert(b);
            seeds.assign(adjacent.begin(), adjacent.end());
        }

        std::size_t max_size = static_cast<std::size_t>(1 + extra);
        if (options_.max_tree_size > 0) max_size = std::min(max_size, static_cast<std::size_t>(options_.max_tree_size));
        std::set<std::vector<int>> sets;
        for (int s : seeds) {
            std::vector<int> current{s};
            grow(current, max_size, sets);
        }

        std::vector<std::vector<int>> out;
        for (const auto& t : sets) {
            bool ok = true;
            for (int u : placed) ok = ok && touches(t, trees_[u]);
            if (ok) out.push_back(t);
        }
        std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
            return a.size() != b.size() ? a.size() < b.size() : a < b;
        });
        return out;
    }

    bool place(std::size_t pos, int extra) {
        if (pos == order_.size()) return true;
        const int remaining = static_cast<int>(order_.size() - pos);
        const int free = static_cast<int>(std::count(used_.begin(), used_.end(), 0));
        if (free < remaining) return false;
        const int v = order_[pos];
        for (auto& tree : candidates(v, extra)) {
            if (++nodes_ > options_.node_budget) throw BudgetExceeded{};
            for (int q : tree) used_[q] = 1;
            trees_[v] = tree;
            if (place(pos + 1, extra - static_cast<int>(tree.size() - 1))) return true;
            for (int q : tree) used_[q] = 0;
            trees_[v].clear();
        }
        return false;
    }

    const WeightedGraph& problem_;
    const WeightedGraph& hw_;
    EmbeddingOptions options_;
    std::vector<int> order_;
    std::vector<int> position_;
    std::vector<std::vector<int>> trees_;
    std::vector<char> used_;
    std::uint64_t nodes_ = 0;
};

}  // namespace

Embedding find_embedding(const WeightedGraph& problem, const Processor& proc, const EmbeddingOptions& options) {
    const int n = problem.size();
    const int h = proc.size();
    if (n < 1) throw Error("find_embedding: problem graph has no vertices");
    if (n > h) {
        throw EmbeddingError(EmbeddingError::Reason::Impossible,
                             "cannot embed " + std::to_string(n) + " logical vertices into " + std::to_string(h) +
                                 " qubits of " + proc.name);
    }
    EmbeddingSearch search(problem, proc.hardware, options);
    try {
        for (int extra = 0; extra <= h - n; ++extra)
            if (auto found = search.run(extra)) return *found;
    } catch (const BudgetExceeded&) {
        throw EmbeddingError(EmbeddingError::Reason::BudgetExhausted,
                             "embedding search budget of " + std::to_string(options.node_budget) +
                                 " nodes exhausted on " + proc.name);
    }
    if (options.max_tree_size > 0) {
        throw EmbeddingError(EmbeddingError::Reason::BudgetExhausted,
                             "no embedding into " + proc.name + " with trees of at most " +
                                 std::to_string(options.max_tree_size) + " qubits");
    }
    throw EmbeddingError(EmbeddingError::Reason::Impossible,
                         "problem graph is not a minor of " + proc.name + " (exhaustive search)");
}

EmbeddingReport validate_embedding(const WeightedGraph& problem, const Processor& proc, const Embedding& emb) {
    using Kind = EmbeddingViolation::Kind;
    EmbeddingReport report;
    auto add = [&](Kind kind, int i, int j, int qubit, std::string msg) {
        report.violations.push_back({kind, i, j, qubit, std::move(msg)});
    };
    if (emb.size() != problem.size()) {
        add(Kind::TreeCount, -1, -1, -1,
            "embedding has " + std::to_string(emb.size()) + " trees for " + std::to_string(problem.size()) +
                " logical vertices");
    }
    std::vector<int> owner(static_cast<std::size_t>(proc.size()), -1);
    for (int i = 0; i < emb.size(); ++i) {
        const auto& tree = emb.trees[i];
        if (tree.empty()) {
            add(Kind::EmptyTree, i, -1, -1, "tree " + std::to_string(i) + " is empty");
            continue;
        }
        std::vector<int> in_range;
        for (int q : tree) {
            if (q < 0 || q >= proc.size()) {
                add(Kind::OutOfRange, i, -1, q,
                    "tree " + std::to_string(i) + " uses qubit " + std::to_string(q) + " outside the processor");
                continue;
            }
            if (owner[q] >= 0 && owner[q] != i) {
                add(Kind::Overlap, owner[q], i, q,
                    "qubit " + std::to_string(q) + " is shared by trees " + std::to_string(owner[q]) + " and " +
                        std::to_string(i));
            }
            owner[q] = i;
            in_range.push_back(q);
        }
        if (!in_range.empty() && connected_components(proc.hardware, in_range).size() > 1) {
            add(Kind::Disconnected, i, -1, -1,
                "condition (i): tree " + std::to_string(i) + " is not connected in the hardware graph");
        }
    }
    for (const auto& e : problem.edges()) {
        if (e.i >= emb.size() || e.j >= emb.size()) continue;
        bool covered = false;
        for (int a : emb.trees[e.i]) {
            if (a < 0 || a >= proc.size()) continue;
            for (int b : proc.hardware.neighbors(a))
                covered = covered || std::find(emb.trees[e.j].begin(), emb.trees[e.j].end(), b) != emb.trees[e.j].end();
        }
        if (!covered) {
            add(Kind::MissingCoverage, e.i, e.j, -1,
                "condition (ii): no hardware edge between trees " + std::to_string(e.i) + " and " +
                    std::to_string(e.j) + " for logical edge (" + std::to_string(e.i) + ", " + std::to_string(e.j) +
                    ")");
        }
    }
    return report;
}

std::vector<int> PhysicalIsing::tree_indices(int i) const {
    std::vector<int> out;
    for (int q : embedding.trees.at(static_cast<std::size_t>(i))) {
        auto it = std::lower_bound(physical_qubits.begin(), physical_qubits.end(), q);
        out.push_back(static_cast<int>(it - physical_qubits.begin()));
    }
    return out;
}

double auto_chain_strength(const IsingModel& logical) {
    double j = 1.0;
    for (double a : logical.alpha) j += std::abs(a);
    for (const auto& b : logical.beta) j += std::abs(b.weight);
    return j;
}

PhysicalIsing embed_ising(const IsingModel& logical, const Embedding& emb, const Processor& proc,
                          std::optional<double> chain_strength) {
    if (emb.size() != logical.size())
        throw Error("embed_ising: embedding has " + std::to_string(emb.size()) + " trees, model has " +
                    std::to_string(logical.size()) + " spins");
    std::vector<int> owner(static_cast<std::size_t>(proc.size()), -1);
    for (int i = 0; i < emb.size(); ++i) {
        if (emb.trees[i].empty()) throw Error("embed_ising: tree " + std::to_string(i) + " is empty");
        for (int q : emb.trees[i]) {
            if (q < 0 || q >= proc.size()) throw Error("embed_ising: qubit " + std::to_string(q) + " out of range");
            if (owner[q] >= 0) throw Error("embed_ising: qubit " + std::to_string(q) + " used by two trees");
            owner[q] = i;
        }
    }

    PhysicalIsing out;
    out.embedding = emb;
    for (auto& t : out.embedding.trees) std::sort(t.begin(), t.end());
    out.physical_qubits = emb.used_qubits();
    out.penalty_j = chain_strength.value_or(auto_chain_strength(logical));
    auto index_of = [&](int q) {
        return static_cast<int>(std::lower_bound(out.physical_qubits.begin(), out.physical_qubits.end(), q) -
                                out.physical_qubits.begin());
    };

    std::map<std::pair<int, int>, int> boundary;
    for (const auto& e : proc.hardware.edges()) {
        const int ti = owner[e.i], tj = owner[e.j];
        if (ti < 0 || tj < 0 || ti == tj) continue;
        ++boundary[{std::min(ti, tj), std::max(ti, tj)}];
    }
    const auto logical_graph = logical.topology();
    for (const auto& b : logical.beta) {
        if (b.weight != 0.0 && !boundary.count({b.i, b.j}))
            throw Error("embed_ising: no hardware edge between trees " + std::to_string(b.i) + " and " +
                        std::to_string(b.j));
    }

    std::vector<double> alpha(out.physical_qubits.size(), 0.0);
    for (int i = 0; i < emb.size(); ++i)
        for (int q : emb.trees[i]) alpha[index_of(q)] = logical.alpha[i] / static_cast<double>(emb.trees[i].size());

    std::vector<Edge> beta;
    int intra = 0;
    for (const auto& e : proc.hardware.edges()) {
        const int ti = owner[e.i], tj = owner[e.j];
        if (ti < 0 || tj < 0) continue;
        if (ti == tj) {
            beta.push_back({index_of(e.i), index_of(e.j), out.penalty_j});
            ++intra;
            continue;
        }
        const auto w = logical_graph.weight(ti, tj);
        if (!w || *w == 0.0) continue;
        const int count = boundary.at({std::min(ti, tj), std::max(ti, tj)});
        beta.push_back({index_of(e.i), index_of(e.j), *w / count});
    }
    out.model = IsingModel(std::move(alpha), std::move(beta), logical.gamma + out.penalty_j * intra);
    return out;
}

}  // namespace aqo
