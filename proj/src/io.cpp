#include "aqo/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace aqo::io {

namespace {

[[noreturn]] void schema_error(const std::string& what) { throw Error("invalid document: " + what); }

const json& field(const json& j, const char* key) {
    if (!j.is_object()) schema_error(std::string("expected an object holding '") + key + "'");
    auto it = j.find(key);
    if (it == j.end()) schema_error(std::string("missing field '") + key + "'");
    return *it;
}

template <class T>
T get(const json& j, const char* key) {
    try {
        return field(j, key).get<T>();
    } catch (const json::exception& e) {
        schema_error(std::string("field '") + key + "': " + e.what());
    }
}

json edges_to_json(const std::vector<Edge>& edges) {
    json out = json::array();
    for (const auto& e : edges) out.push_back({e.i, e.j, e.weight});
    return out;
}

std::vector<Edge> edges_from_json(const json& arr, const char* what) {
    if (!arr.is_array()) schema_error(std::string(what) + " must be an array");
    std::vector<Edge> edges;
    for (const auto& e : arr) {
        if (!e.is_array() || e.size() != 3) schema_error(std::string(what) + " entries must be [i, j, w]");
        const int i = e[0].get<int>();
        const int j = e[1].get<int>();
        if (!(i < j))
            schema_error(std::string(what) + " entry [" + std::to_string(i) + ", " + std::to_string(j) +
                         ", ...] must have i < j");
        edges.push_back({i, j, e[2].get<double>()});
    }
    return edges;
}

// JSON has no infinity; the adiabatic time of a closed gap is written as null.
json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json parse_json(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(what + ": " + e.what());
    }
}

json to_json(const WeightedGraph& g) {
    return {{"n", g.size()}, {"vertex_weights", g.vertex_weights()}, {"edges", edges_to_json(g.edges())}};
}

WeightedGraph graph_from_json(const json& j) {
    const int n = get<int>(j, "n");
    auto w = get<std::vector<double>>(j, "vertex_weights");
    if (static_cast<int>(w.size()) != n) schema_error("vertex_weights has " + std::to_string(w.size()) + " entries, n = " + std::to_string(n));
    return WeightedGraph(std::move(w), edges_from_json(field(j, "edges"), "edges"));
}

json to_json(const IsingModel& m) {
    return {{"n", m.size()}, {"alpha", m.alpha}, {"beta", edges_to_json(m.beta)}, {"gamma", m.gamma}};
}

IsingModel ising_from_json(const json& j) {
    const int n = get<int>(j, "n");
    auto alpha = get<std::vector<double>>(j, "alpha");
    if (static_cast<int>(alpha.size()) != n) schema_error("alpha has " + std::to_string(alpha.size()) + " entries, n = " + std::to_string(n));
    return IsingModel(std::move(alpha), edges_from_json(field(j, "beta"), "beta"), get<double>(j, "gamma"));
}

json to_json(const Embedding& e) {
    json trees = json::object();
    for (int i = 0; i < e.size(); ++i) trees[std::to_string(i)] = e.trees[i];
    return {{"trees", trees}};
}

Embedding embedding_from_json(const json& j) {
    const json& trees = field(j, "trees");
    if (!trees.is_object()) schema_error("trees must be an object keyed by logical index");
    Embedding e;
    e.trees.resize(trees.size());
    std::vector<bool> seen(trees.size(), false);
    for (auto it = trees.begin(); it != trees.end(); ++it) {
        std::size_t idx = 0;
        try {
            std::size_t used = 0;
            idx = std::stoul(it.key(), &used);
            if (used != it.key().size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            schema_error("tree key '" + it.key() + "' is not an index");
        }
        if (idx >= trees.size() || seen[idx]) schema_error("tree keys must be 0..n-1 without gaps");
        seen[idx] = true;
        auto tree = it.value().get<std::vector<int>>();
        std::sort(tree.begin(), tree.end());
        e.trees[idx] = std::move(tree);
    }
    return e;
}

json to_json(const Processor& p) {
    json j = to_json(p.hardware);
    j["name"] = p.name;
    return j;
}

Processor processor_from_json(const json& j) { return Processor(get<std::string>(j, "name"), graph_from_json(j)); }

json to_json(const Schedule& s) {
    switch (s.kind()) {
        case Schedule::Kind::LinearOn: return "linear_on";
        case Schedule::Kind::LinearOff: return "linear_off";
        case Schedule::Kind::Tabulated: {
            json knots = json::array();
            for (const auto& [t, v] : s.knots()) knots.push_back({t, v});
            return {{"knots", knots}};
        }
    }
    return nullptr;
}

Schedule schedule_from_json(const json& j) {
    if (j.is_string()) {
        const auto name = j.get<std::string>();
        if (name == "linear_on") return Schedule::linear_on();
        if (name == "linear_off") return Schedule::linear_off();
        schema_error("unknown schedule '" + name + "'");
    }
    std::vector<std::pair<double, double>> knots;
    for (const auto& k : field(j, "knots")) {
        if (!k.is_array() || k.size() != 2) schema_error("schedule knots must be [s, value]");
        knots.emplace_back(k[0].get<double>(), k[1].get<double>());
    }
    return Schedule::tabulated(std::move(knots));
}

json to_json(const SymmetricMatrix& p) { return p.rows(); }

SymmetricMatrix matrix_from_json(const json& j) {
    try {
        return SymmetricMatrix(j.get<std::vector<std::vector<double>>>());
    } catch (const json::exception& e) {
        schema_error(std::string("matrix: ") + e.what());
    }
}

json to_json(const QuboProblem& q) {
    json ancillas = json::array();
    for (const auto& a : q.ancillas) ancillas.push_back({a.ancilla, a.a, a.b});
    json j = {{"kind", q.bop ? "bop" : "qubo"},
              {"qubo",
               {{"P", to_json(q.p)},
                {"offset", q.constant_offset},
                {"num_original", q.num_original},
                {"ancillas", ancillas}}}};
    if (q.bop) {
        json clauses = json::array();
        for (const auto& c : q.bop->clauses)
            clauses.push_back({{"weight", c.weight}, {"expr", to_string(c.expr, q.bop->labels)}});
        j["bop"] = {{"clauses", clauses}, {"labels", q.bop->labels}};
    }
    return j;
}

QuboProblem problem_from_json(const json& j) {
    const json& qj = field(j, "qubo");
    QuboProblem q;
    q.p = matrix_from_json(field(qj, "P"));
    q.constant_offset = get<double>(qj, "offset");
    q.num_original = get<int>(qj, "num_original");
    for (const auto& a : field(qj, "ancillas")) {
        if (!a.is_array() || a.size() != 3) schema_error("ancillas entries must be [ancilla, a, b]");
        q.ancillas.push_back({a[0].get<int>(), a[1].get<int>(), a[2].get<int>()});
    }
    if (q.num_original < 0 || q.num_original + static_cast<int>(q.ancillas.size()) != q.size())
        schema_error("num_original plus ancillas must equal the size of P");
    const auto kind = get<std::string>(j, "kind");
    if (kind == "bop") {
        const json& bj = field(j, "bop");
        std::ostringstream text;
        text << std::setprecision(std::numeric_limits<double>::max_digits10);
        for (const auto& c : field(bj, "clauses")) text << get<double>(c, "weight") << " : " << get<std::string>(c, "expr") << "\n";
        BopProblem bop = parse_bop(text.str());
        if (bop.labels != get<std::vector<int>>(bj, "labels")) schema_error("bop labels do not match the clauses");
        q.bop = std::move(bop);
    } else if (kind != "qubo") {
        schema_error("unknown problem kind '" + kind + "'");
    }
    return q;
}

json to_json(const QuantumProgram& p) {
    json j = {{"physical", to_json(p.physical)},
              {"schedule_A", to_json(p.schedule_a)},
              {"schedule_B", to_json(p.schedule_b)},
              {"T", p.final_time},
              {"embedding", nullptr},
              {"problem", nullptr}};
    if (p.logical_part) {
        const auto& lp = *p.logical_part;
        j["embedding"] = to_json(lp.embedding);
        j["problem"] = to_json(lp.problem);
        j["logical"] = to_json(lp.logical);
        j["physical_qubits"] = lp.physical_qubits;
        j["penalty_j"] = lp.penalty_j;
        j["processor"] = lp.processor;
    }
    return j;
}

QuantumProgram program_from_json(const json& j) {
    QuantumProgram p;
    p.physical = ising_from_json(field(j, "physical"));
    p.schedule_a = schedule_from_json(field(j, "schedule_A"));
    p.schedule_b = schedule_from_json(field(j, "schedule_B"));
    p.final_time = get<double>(j, "T");
    const json& emb = field(j, "embedding");
    const json& prob = field(j, "problem");
    if (emb.is_null() != prob.is_null()) schema_error("embedding and problem must both be present or both null");
    if (!emb.is_null()) {
        LogicalPart lp;
        lp.embedding = embedding_from_json(emb);
        lp.problem = problem_from_json(prob);
        lp.logical = j.contains("logical") ? ising_from_json(j["logical"]) : qubo_to_ising(lp.problem);
        lp.physical_qubits = get<std::vector<int>>(j, "physical_qubits");
        lp.penalty_j = get<double>(j, "penalty_j");
        lp.processor = j.value("processor", std::string());
        if (static_cast<int>(lp.physical_qubits.size()) != p.physical.size())
            schema_error("physical_qubits must list one hardware qubit per physical model index");
        p.logical_part = std::move(lp);
    }
    return p;
}

json to_json(const SimulationOptions& o) {
    return {{"plugin", to_string(o.plugin)},
            {"dt_evolve", o.dt_evolve},
            {"dt_anneal", o.dt_anneal},
            {"snapshot_interval", o.snapshot_interval},
            {"num_eigenstates", o.num_eigenstates},
            {"seed", o.seed},
            {"evaluation", o.evaluation == HamiltonianEvaluation::Midpoint ? "midpoint" : "left"},
            {"store_eigenvectors", o.store_eigenvectors},
            {"samples", o.samples}};
}

SimulationOptions options_from_json(const json& j) {
    SimulationOptions o;
    o.plugin = plugin_from_string(get<std::string>(j, "plugin"));
    o.dt_evolve = get<double>(j, "dt_evolve");
    o.dt_anneal = get<double>(j, "dt_anneal");
    o.snapshot_interval = get<double>(j, "snapshot_interval");
    o.num_eigenstates = get<int>(j, "num_eigenstates");
    o.seed = get<std::uint64_t>(j, "seed");
    const auto eval = get<std::string>(j, "evaluation");
    if (eval != "midpoint" && eval != "left") schema_error("evaluation must be midpoint or left");
    o.evaluation = eval == "left" ? HamiltonianEvaluation::Left : HamiltonianEvaluation::Midpoint;
    o.store_eigenvectors = j.value("store_eigenvectors", false);
    o.samples = j.value("samples", 0);
    return o;
}

json to_json(const SpectrumSnapshot& s) {
    json j = {{"t", s.t}, {"eigenvalues", s.eigenvalues}};
    if (s.populations) j["populations"] = *s.populations;
    if (s.state) {
        json amps = json::array();
        for (const auto& a : *s.state) amps.push_back({a.real(), a.imag()});
        j["amplitudes"] = amps;
    }
    if (s.eigenvectors) {
        json cols = json::array();
        for (Eigen::Index c = 0; c < s.eigenvectors->cols(); ++c) {
            const Eigen::VectorXd col = s.eigenvectors->col(c);
            cols.push_back(std::vector<double>(col.data(), col.data() + col.size()));
        }
        j["eigenvectors"] = cols;
    }
    return j;
}

SpectrumSnapshot snapshot_from_json(const json& j) {
    SpectrumSnapshot s;
    s.t = get<double>(j, "t");
    s.eigenvalues = get<std::vector<double>>(j, "eigenvalues");
    if (j.contains("populations")) s.populations = j["populations"].get<std::vector<double>>();
    if (j.contains("amplitudes")) {
        StateVector psi;
        for (const auto& a : j["amplitudes"]) psi.emplace_back(a.at(0).get<double>(), a.at(1).get<double>());
        s.state = std::move(psi);
    }
    if (j.contains("eigenvectors")) {
        const auto cols = j["eigenvectors"].get<std::vector<std::vector<double>>>();
        if (!cols.empty()) {
            Eigen::MatrixXd m(static_cast<Eigen::Index>(cols.front().size()), static_cast<Eigen::Index>(cols.size()));
            for (std::size_t c = 0; c < cols.size(); ++c) {
                if (cols[c].size() != cols.front().size()) schema_error("eigenvector columns differ in length");
                for (std::size_t r = 0; r < cols[c].size(); ++r) m(r, c) = cols[c][r];
            }
            s.eigenvectors = std::move(m);
        }
    }
    return s;
}

json result_to_json(const ProgramResult& r, const SimulationOptions& o) {
    json dist = json::array();
    for (const auto& [z, p] : r.distribution) dist.push_back({z, p});
    json j = {{"distribution", dist},
              {"norm", r.norm},
              {"max_norm_drift", r.max_norm_drift},
              {"qubits", r.qubits},
              {"options", to_json(o)}};
    if (!r.samples.empty()) {
        json samples = json::array();
        for (const auto& [z, c] : r.samples) samples.push_back({z, c});
        j["samples"] = samples;
    }
    return j;
}

json to_json(const GapProfile& g) {
    return {{"times", g.times},
            {"delta", g.delta},
            {"delta_star", g.delta_star},
            {"t_star", g.t_star},
            {"rate_bound", g.rate_bound},
            {"t_adiabatic", finite_or_null(g.t_adiabatic)},
            {"rate_norm", "spectral"}};
}

json to_json(const Solution& s) {
    json votes = json::array();
    for (const auto& v : s.provenance.votes)
        votes.push_back({{"ones", v.ones}, {"zeros", v.zeros}, {"tie", v.tie}, {"value", v.value}});
    json j = {{"bits", format_bits(s.bits, false)},
              {"logical", format_bits(s.logical, false)},
              {"probability", s.probability},
              {"physical_energy", s.physical_energy},
              {"readout", {{"index", s.readout}, {"votes", votes}}},
              {"qubo_value", nullptr},
              {"objective_value", nullptr},
              {"bop_value", nullptr}};
    if (s.qubo_value) j["qubo_value"] = *s.qubo_value;
    if (s.objective_value) j["objective_value"] = *s.objective_value;
    if (s.bop_value) j["bop_value"] = *s.bop_value;
    return j;
}

SymmetricMatrix parse_matrix_text(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<double> row;
        std::string tok;
        while (ls >> tok) {
            try {
                std::size_t used = 0;
                row.push_back(std::stod(tok, &used));
                if (used != tok.size()) throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw Error("matrix line " + std::to_string(lineno) + ": '" + tok + "' is not a number");
            }
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw Error("matrix is empty");
    for (std::size_t r = 0; r < rows.size(); ++r)
        if (rows[r].size() != rows.size())
            throw Error("matrix row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                        " entries; expected " + std::to_string(rows.size()));
    return SymmetricMatrix(rows);
}

namespace {

std::ostream& precise(std::ostream& out) { return out << std::setprecision(std::numeric_limits<double>::max_digits10); }

}  // namespace

void write_trace_csv(std::ostream& out, const EigenpathTrace& trace) {
    precise(out) << "t";
    for (std::size_t k = 1; k <= trace.tracked.size(); ++k) out << ",E_trace_" << k;
    out << "\n";
    for (std::size_t s = 0; s < trace.times.size(); ++s) {
        out << trace.times[s];
        for (const auto& [key, path] : trace.tracked) out << "," << path[s].second;
        out << "\n";
    }
}

void write_population_csv(std::ostream& out, const std::vector<PopulationPoint>& points) {
    precise(out) << "t,ground,manifold\n";
    for (const auto& p : points) out << p.t << "," << p.ground << "," << p.manifold << "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write '" + path + "'");
        out << content;
        if (!out) throw Error("write to '" + path + "' failed");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw Error("cannot move '" + tmp + "' into place: " + ec.message());
}

}  // namespace aqo::io
