#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "aqo/analysis.hpp"

namespace aqo::io {

using json = nlohmann::json;

json to_json(const WeightedGraph& g);
WeightedGraph graph_from_json(const json& j);

json to_json(const IsingModel& m);
IsingModel ising_from_json(const json& j);

json to_json(const Embedding& e);
Embedding embedding_from_json(const json& j);

json to_json(const Processor& p);
Processor processor_from_json(const json& j);

json to_json(const Schedule& s);
Schedule schedule_from_json(const json& j);

json to_json(const SymmetricMatrix& p);
SymmetricMatrix matrix_from_json(const json& j);

/// {"kind": "bop"|"qubo", "bop": {...}?, "qubo": {"P", "offset", "num_original", "ancillas"}}
json to_json(const QuboProblem& q);
QuboProblem problem_from_json(const json& j);

json to_json(const QuantumProgram& p);
QuantumProgram program_from_json(const json& j);

json to_json(const SimulationOptions& o);
SimulationOptions options_from_json(const json& j);

json to_json(const SpectrumSnapshot& s);
SpectrumSnapshot snapshot_from_json(const json& j);

/// {"distribution": [[index, prob]], "norm", "max_norm_drift", "qubits", "samples"?, "options"}
json result_to_json(const ProgramResult& r, const SimulationOptions& o);

json to_json(const GapProfile& g);
json to_json(const Solution& s);

/// Whitespace-separated square matrix, one row per line; `#` comments.
SymmetricMatrix parse_matrix_text(const std::string& text);

/// t, E_trace_1..k (one column per tracked final-time index, ascending).
void write_trace_csv(std::ostream& out, const EigenpathTrace& trace);
/// t, ground, manifold
void write_population_csv(std::ostream& out, const std::vector<PopulationPoint>& points);

std::string read_file(const std::string& path);
/// Writes through a temporary file and renames it into place.
void write_file(const std::string& path, const std::string& content);

json parse_json(const std::string& text, const std::string& what);

}  // namespace aqo::io
