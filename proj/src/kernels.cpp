#include "aqo/kernels.hpp"

#include <cstddef>

#include "aqo/ising.hpp"

#if defined(AQO_HAVE_OPENMP)
#include <omp.h>
#endif

namespace aqo::kernels {
namespace {

// Below this many amplitudes the thread fork costs more than the loop.
constexpr std::int64_t kParallelThreshold = 1024;

template <bool Parallel>
void ising_diagonal_impl(const IsingModel& m, std::span<double> out) {
    const int n = m.size();
    const std::int64_t dim = std::int64_t{1} << n;
    const auto* alpha = m.alpha.data();
    const auto* beta = m.beta.data();
    const std::size_t nb = m.beta.size();
#pragma omp parallel for schedule(static) if (Parallel && dim >= kParallelThreshold)
    for (std::int64_t z = 0; z < dim; ++z) {
        double e = 0.0;
        for (int i = 0; i < n; ++i) {
            const double s = ((z >> (n - 1 - i)) & 1) ? -1.0 : 1.0;
            e -= alpha[i] * s;
        }
        for (std::size_t k = 0; k < nb; ++k) {
            const auto& c = beta[k];
            const double si = ((z >> (n - 1 - c.i)) & 1) ? -1.0 : 1.0;
            const double sj = ((z >> (n - 1 - c.j)) & 1) ? -1.0 : 1.0;
            e -= c.weight * si * sj;
        }
        out[static_cast<std::size_t>(z)] = e;
    }
}

template <bool Parallel>
void apply_hamiltonian_impl(int n, double transverse, double diag_scale, std::span<const double> diag,
                            std::span<const cplx> in, std::span<cplx> out) {
    const std::int64_t dim = std::int64_t{1} << n;
#pragma omp parallel for schedule(static) if (Parallel && dim >= kParallelThreshold)
    for (std::int64_t z = 0; z < dim; ++z) {
        cplx flips = 0.0;
        for (int b = 0; b < n; ++b) flips += in[static_cast<std::size_t>(z ^ (std::int64_t{1} << b))];
        out[static_cast<std::size_t>(z)] =
            diag_scale * diag[static_cast<std::size_t>(z)] * in[static_cast<std::size_t>(z)] -
            transverse * flips;
    }
}

template <bool Parallel>
void rk4_step_impl(int n, double transverse, double diag_scale, std::span<const double> diag, double dt,
                   std::span<cplx> psi, Rk4Workspace& ws) {
    const std::int64_t dim = std::int64_t{1} << n;
    ws.resize(static_cast<std::size_t>(dim));
    const cplx minus_i(0.0, -1.0);
    const bool par = Parallel && dim >= kParallelThreshold;
    (void)par;

    // k1 = -i H ψ
    apply_hamiltonian_impl<Parallel>(n, transverse, diag_scale, diag, psi, ws.k);
    const double weights[3] = {0.5, 0.5, 1.0};
    const double acc_weights[3] = {2.0, 2.0, 1.0};
#pragma omp parallel for schedule(static) if (par)
    for (std::int64_t z = 0; z < dim; ++z) {
        const auto k = minus_i * ws.k[z];
        ws.acc[z] = k;
        ws.stage[z] = psi[z] + (0.5 * dt) * k;
    }
    for (int s = 0; s < 3; ++s) {
        apply_hamiltonian_impl<Parallel>(n, transverse, diag_scale, diag, ws.stage, ws.k);
        const double next = s < 2 ? weights[s + 1] * dt : 0.0;
        const double w = acc_weights[s];
#pragma omp parallel for schedule(static) if (par)
        for (std::int64_t z = 0; z < dim; ++z) {
            const auto k = minus_i * ws.k[z];
            ws.acc[z] += w * k;
            if (next != 0.0) ws.stage[z] = psi[z] + next * k;
        }
    }
#pragma omp parallel for schedule(static) if (par)
    for (std::int64_t z = 0; z < dim; ++z) psi[z] += (dt / 6.0) * ws.acc[z];
}

template <bool Parallel>
void apply_phases_impl(std::span<const cplx> phases, std::span<cplx> psi) {
    const auto dim = static_cast<std::int64_t>(psi.size());
#pragma omp parallel for schedule(static) if (Parallel && dim >= kParallelThreshold)
    for (std::int64_t z = 0; z < dim; ++z) psi[z] *= phases[z];
}

}  // namespace

#define AQO_KERNEL_DEFS(NS, PAR)                                                                     \
    namespace NS {                                                                                   \
    void ising_diagonal(const IsingModel& m, std::span<double> out) {                               \
        ising_diagonal_impl<PAR>(m, out);                                                            \
    }                                                                                                \
    void apply_hamiltonian(int n, double transverse, double diag_scale, std::span<const double> diag, \
                           std::span<const cplx> in, std::span<cplx> out) {                          \
        apply_hamiltonian_impl<PAR>(n, transverse, diag_scale, diag, in, out);                       \
    }                                                                                                \
    void rk4_step(int n, double transverse, double diag_scale, std::span<const double> diag,         \
                  double dt, std::span<cplx> psi, Rk4Workspace& ws) {                                \
        rk4_step_impl<PAR>(n, transverse, diag_scale, diag, dt, psi, ws);                            \
    }                                                                                                \
    void apply_phases(std::span<const cplx> phases, std::span<cplx> psi) {                           \
        apply_phases_impl<PAR>(phases, psi);                                                         \
    }                                                                                                \
    }

AQO_KERNEL_DEFS(serial, false)
AQO_KERNEL_DEFS(parallel, true)

#undef AQO_KERNEL_DEFS

double norm_squared(std::span<const cplx> psi) {
    double s = 0.0;
    for (const auto& a : psi) s += std::norm(a);
    return s;
}

int thread_count() {
#if defined(AQO_HAVE_OPENMP)
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace aqo::kernels
