#include "aqo/ising.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "aqo/kernels.hpp"

namespace aqo {

IsingModel::IsingModel(std::vector<double> a, std::vector<Edge> b, double g)
    : alpha(std::move(a)), gamma(g) {
    // Reuse the graph validation (range, self-loops, duplicates, i < j order).
    WeightedGraph checked(std::vector<double>(alpha.size(), 0.0), std::move(b));
    beta = checked.edges();
}

WeightedGraph IsingModel::topology() const { return WeightedGraph(alpha, beta); }

IsingModel qubo_to_ising(const SymmetricMatrix& p) {
    // With x = (1 - s)/2 and x^T P x = Σ_i P_ii x_i + 2 Σ_{i<j} P_ij x_i x_j:
    //   α_i = ½ Σ_j P_ij   (diagonal included)
    //   β_ij = -½ P_ij
    //   γ = ½ Σ_i P_ii + ½ Σ_{i<j} P_ij
    const auto n = p.size();
    std::vector<double> alpha(n, 0.0);
    std::vector<Edge> beta;
    double gamma = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) alpha[i] += 0.5 * p(i, j);
        gamma += 0.5 * p(i, i);
        for (std::size_t j = i + 1; j < n; ++j) {
            if (p(i, j) == 0.0) continue;
            beta.push_back({static_cast<int>(i), static_cast<int>(j), -0.5 * p(i, j)});
            gamma += 0.5 * p(i, j);
        }
    }
    return IsingModel(std::move(alpha), std::move(beta), gamma);
}

IsingModel qubo_to_ising(const QuboProblem& q) { return qubo_to_ising(q.p); }

double ising_energy(const IsingModel& m, const SpinConfiguration& s) {
    if (static_cast<int>(s.size()) != m.size())
        throw Error("ising_energy: configuration has " + std::to_string(s.size()) + " spins, model has " +
                    std::to_string(m.size()));
    double e = 0.0;
    for (int i = 0; i < m.size(); ++i) e -= m.alpha[i] * s[i];
    for (const auto& c : m.beta) e -= c.weight * s[c.i] * s[c.j];
    return e;
}

GroundStates brute_force_ising(const IsingModel& m, double tolerance) {
    const int n = m.size();
    if (n > kBruteForceLimit)
        throw Error("brute_force_ising: " + std::to_string(n) + " spins exceeds the limit of " +
                    std::to_string(kBruteForceLimit));
    std::vector<double> energies(std::size_t{1} << n);
    kernels::ising_diagonal(m, energies);

    GroundStates out;
    out.energy = *std::min_element(energies.begin(), energies.end());
    out.next_energy = std::numeric_limits<double>::infinity();
    for (std::size_t z = 0; z < energies.size(); ++z) {
        if (energies[z] - out.energy <= tolerance) {
            out.configurations.push_back(basis_spins(z, n));
        } else {
            out.next_energy = std::min(out.next_energy, energies[z]);
        }
    }
    return out;
}

BitString spin_bit_decode(const SpinConfiguration& s) {
    BitString x(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != 1 && s[i] != -1) throw Error("spin values must be +1 or -1");
        x[i] = (1 - s[i]) / 2;
    }
    return x;
}

SpinConfiguration bit_spin_encode(const BitString& x) {
    SpinConfiguration s(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] != 0 && x[i] != 1) throw Error("bit values must be 0 or 1");
        s[i] = 1 - 2 * x[i];
    }
    return s;
}

std::uint64_t basis_index(const BitString& x) {
    std::uint64_t z = 0;
    for (int b : x) z = (z << 1) | static_cast<std::uint64_t>(b & 1);
    return z;
}

BitString basis_bits(std::uint64_t z, int n) {
    BitString x(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) x[i] = static_cast<int>((z >> (n - 1 - i)) & 1);
    return x;
}

SpinConfiguration basis_spins(std::uint64_t z, int n) { return bit_spin_encode(basis_bits(z, n)); }

std::string format_bits(const BitString& x, bool grouped) {
    std::string out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (grouped && i && i % 4 == 0) out += ' ';
        out += x[i] ? '1' : '0';
    }
    return out;
}

}  // namespace aqo
