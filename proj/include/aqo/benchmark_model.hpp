#pragma once

#include "aqo/program.hpp"

namespace aqo {

/// The 8-qubit benchmark on one Chimera cell: a ring 0-1-2-3-0 with pendant
/// couplers i-(i+4), α = +1 on qubits 0..3 and -1 on 4..7, β = +1.  Its
/// ground level -8 is 17-fold degenerate (0000 xxxx and 1111 1111).
IsingModel benchmark_ising();

/// Linear schedules A = 1 - t/T, B = t/T.
QuantumProgram benchmark_program(double final_time = 30.0);

}  // namespace aqo
