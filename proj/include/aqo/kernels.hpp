#pragma once

// State-vector kernels over the 2^n computational basis.
//
// Every kernel exists twice: `serial::` is the straightforward reference
// loop and `parallel::` distributes the basis index over OpenMP threads.
// Both produce bit-identical results (no parallel reductions); the unscoped
// names dispatch to the parallel variant.  The serial versions are kept for
// the equivalence tests and the benchmark.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace aqo {
struct IsingModel;
}

namespace aqo::kernels {

using cplx = std::complex<double>;

// Scratch vectors for one RK4 step.
struct Rk4Workspace {
    std::vector<cplx> k, stage, acc;
    void resize(std::size_t n) {
        k.resize(n);
        stage.resize(n);
        acc.resize(n);
    }
};

#define AQO_KERNEL_DECLS                                                                     \
    /* out[z] = energy of basis state z under -Σ α Z - Σ β Z Z */                            \
    void ising_diagonal(const IsingModel& m, std::span<double> out);                         \
    /* out = transverse * (-Σ_i X_i) in + diag_scale * diag ⊙ in */                          \
    void apply_hamiltonian(int n, double transverse, double diag_scale,                      \
                           std::span<const double> diag, std::span<const cplx> in,           \
                           std::span<cplx> out);                                             \
    /* one classical RK4 step of dψ/dt = -i H ψ with H frozen */                             \
    void rk4_step(int n, double transverse, double diag_scale, std::span<const double> diag, \
                  double dt, std::span<cplx> psi, Rk4Workspace& ws);                         \
    /* psi ⊙= phases */                                                                      \
    void apply_phases(std::span<const cplx> phases, std::span<cplx> psi);

namespace serial {
AQO_KERNEL_DECLS
}  // namespace serial

namespace parallel {
AQO_KERNEL_DECLS
}  // namespace parallel

#undef AQO_KERNEL_DECLS

using parallel::apply_hamiltonian;
using parallel::apply_phases;
using parallel::ising_diagonal;
using parallel::rk4_step;

/// Σ |ψ_z|², accumulated serially so the result is deterministic.
double norm_squared(std::span<const cplx> psi);

/// Number of OpenMP threads the parallel kernels will use (1 without OpenMP).
int thread_count();

}  // namespace aqo::kernels
