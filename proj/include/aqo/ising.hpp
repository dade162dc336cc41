#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aqo/frontend.hpp"
#include "aqo/graph.hpp"

namespace aqo {

// Spin/bit convention used everywhere:
//   x_i = (1 - s_i) / 2      (spin +1 <-> bit 0, spin -1 <-> bit 1)
// and qubit 0 is the most significant bit of a computational-basis index, so
// the bit string of basis state z reads qubit 0 first.

using SpinConfiguration = std::vector<int>;  // entries are exactly +1 or -1
using BitString = std::vector<int>;          // entries are 0 or 1

/// H = -Σ α_i Z_i - Σ β_ij Z_i Z_j; γ is the shift that aligns the Ising
/// energy with the QUBO objective and is only added when reporting values.
struct IsingModel {
    std::vector<double> alpha;
    std::vector<Edge> beta;  // i < j, sorted, no duplicates
    double gamma = 0.0;

    IsingModel() = default;
    IsingModel(std::vector<double> alpha, std::vector<Edge> beta, double gamma = 0.0);

    int size() const { return static_cast<int>(alpha.size()); }
    /// Topology with α as vertex weights and β as edge weights.
    WeightedGraph topology() const;

    bool operator==(const IsingModel&) const = default;
};

IsingModel qubo_to_ising(const QuboProblem& q);
IsingModel qubo_to_ising(const SymmetricMatrix& p);

/// -Σ α_i s_i - Σ β_ij s_i s_j (γ not included).
double ising_energy(const IsingModel& m, const SpinConfiguration& s);

struct GroundStates {
    double energy = 0.0;
    std::vector<SpinConfiguration> configurations;  // sorted by basis index
    double next_energy = 0.0;                         // lowest energy above the ground level
};

inline constexpr int kBruteForceLimit = 24;

/// Exhaustive enumeration; configurations within `tolerance` of the minimum
/// are reported as ground states.
GroundStates brute_force_ising(const IsingModel& m, double tolerance = 1e-9);

BitString spin_bit_decode(const SpinConfiguration& s);
SpinConfiguration bit_spin_encode(const BitString& x);

std::uint64_t basis_index(const BitString& x);
BitString basis_bits(std::uint64_t z, int n);
SpinConfiguration basis_spins(std::uint64_t z, int n);

/// "0000 1111" style rendering, qubit 0 first, grouped by four.
std::string format_bits(const BitString& x, bool grouped = true);

}  // namespace aqo
