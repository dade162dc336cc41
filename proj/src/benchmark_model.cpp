#include "aqo/benchmark_model.hpp"

namespace aqo {

IsingModel benchmark_ising() {
    std::vector<double> alpha{1, 1, 1, 1, -1, -1, -1, -1};
    std::vector<Edge> beta;
    for (int i = 0; i < 4; ++i) {
        beta.push_back({i, (i + 1) % 4, 1.0});
        beta.push_back({i, i + 4, 1.0});
    }
    return IsingModel(std::move(alpha), std::move(beta), 0.0);
}

QuantumProgram benchmark_program(double final_time) { return physical_program(benchmark_ising(), final_time); }

}  // namespace aqo
