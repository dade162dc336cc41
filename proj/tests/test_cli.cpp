#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "aqo/io.hpp"

namespace fs = std::filesystem;
using aqo::io::json;

namespace {

fs::path workdir() {
    const char* env = std::getenv("AQO_TEST_TMP");
    fs::path p = env ? fs::path(env) : fs::temp_directory_path() / "aqo_cli_tmp";
    return p;
}

struct Cli {
    fs::path dir;
    std::string output;

    explicit Cli(const std::string& name) : dir(workdir() / name) {
        fs::remove_all(dir);
        fs::create_directories(dir);
    }

    int operator()(const std::string& args, const std::string& env = "") {
        const auto log = dir / "out.txt";
        const std::string cmd = "cd '" + dir.string() + "' && " + env + " '" + AQO_CLI_PATH + "' " + args + " > '" +
                                log.string() + "' 2>&1";
        const int status = std::system(cmd.c_str());
        output = aqo::io::read_file(log.string());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    void write(const std::string& file, const std::string& text) const { std::ofstream(dir / file) << text; }
    std::string read(const std::string& file) const { return aqo::io::read_file((dir / file).string()); }
    json doc(const std::string& file) const { return json::parse(read(file)); }
};

std::size_t count_snapshots(const fs::path& run_dir) {
    std::size_t n = 0;
    for (const auto& e : fs::directory_iterator(run_dir))
        if (e.path().filename().string().starts_with("snapshot_")) ++n;
    return n;
}

}  // namespace

TEST_CASE("benchmark through the engineer path") {
    Cli cli("bench");
    REQUIRE(cli("example --file bm.json") == 0);
    REQUIRE(cli("--store s program physical --ising bm.json --T 30 --out bench") == 0);

    CHECK(cli("--store s run --program bench --plugin zero --dt-evolve 0.05 --dt-anneal 0.05 --snapshots 3 "
              "--eigenstates 256 --out spectra") == 0);
    CHECK(count_snapshots(cli.dir / "s/spectra.run") == 11);
    CHECK_FALSE(fs::exists(cli.dir / "s/spectra.result.json"));
    auto last = cli.doc("s/spectra.run/snapshot_10.json");
    CHECK(last["t"] == 30.0);
    CHECK(last["eigenvalues"].size() == 256);
    CHECK_FALSE(last.contains("amplitudes"));
    CHECK(fs::exists(cli.dir / "s/spectra.run/gap.json"));
    CHECK(fs::exists(cli.dir / "s/spectra.run/trace.csv"));

    REQUIRE(cli("--store s run --program bench --plugin rk4 --dt-evolve 0.001 --dt-anneal 0.05 --snapshots 3 "
                "--eigenstates 256 --seed 1") == 0);
    auto result = cli.doc("s/bench.result.json");
    CHECK(result["distribution"][0][0] == 15);
    CHECK(result["distribution"].size() == 256);
    CHECK(count_snapshots(cli.dir / "s/bench.run") == 11);
    CHECK(cli.read("s/bench.run/populations.csv").starts_with("t,ground,manifold\n0,"));
    CHECK(cli.read("s/bench.run/trace.csv").starts_with("t,E_trace_1,"));

    // byte-identical on re-run
    const std::string first = cli.read("s/bench.result.json");
    const std::string snap = cli.read("s/bench.run/snapshot_5.json");
    REQUIRE(cli("--store s run --program bench --plugin rk4 --dt-evolve 0.001 --dt-anneal 0.05 --snapshots 3 "
                "--eigenstates 256 --seed 1") == 0);
    CHECK(cli.read("s/bench.result.json") == first);
    CHECK(cli.read("s/bench.run/snapshot_5.json") == snap);
}

TEST_CASE("usage errors exit with 2") {
    Cli cli("usage");
    cli("example --file bm.json");
    REQUIRE(cli("--store s program physical --ising bm.json --T 30 --out bench") == 0);
    CHECK(cli("--store s run --program bench --dt-evolve 0") == 2);
    CHECK(cli("--store s run --program bench --plugin euler") == 2);
    CHECK(cli("") == 2);
    CHECK(cli("--store s problem create --out x") == 2);
    CHECK(cli("--store s processor chimera --rows 1") == 2);
    CHECK(cli("--help") == 0);
}

TEST_CASE("domain errors exit with 1") {
    Cli cli("domain");
    cli.write("asym.txt", "0 1\n2 0\n");
    CHECK(cli("--store s problem create --qubo asym.txt --out a") == 1);
    CHECK(cli.output.find("(0, 1)") != std::string::npos);

    std::string k9;
    for (int i = 0; i < 9; ++i) {
        for (int j = 0; j < 9; ++j) k9 += i == j ? "0 " : "1 ";
        k9 += "\n";
    }
    cli.write("k9.txt", k9);
    REQUIRE(cli("--store s problem create --qubo k9.txt --out k9") == 0);
    REQUIRE(cli("--store s processor chimera --rows 1 --cols 1") == 0);
    CHECK(cli("--store s program synth --problem k9 --processor chimera_1x1 --T 30 --schedule linear") == 1);
    CHECK(cli.output.find("embed") != std::string::npos);
    CHECK(cli("--store s run --program nothing") == 1);
    CHECK(cli("--store s run --program bench --dt-evolve 0.03 --dt-anneal 0.05") == 1);
    cli.write("bad.bop", "1 : b1 AND\n");
    CHECK(cli("--store s problem create --bop bad.bop --out bad") == 1);
    CHECK(cli.output.find("line 1, column 11") != std::string::npos);
}

TEST_CASE("BOP problems store both forms") {
    Cli cli("bop");
    cli.write("clause.bop", "1 : (b1 AND b2) OR NOT b3\n");
    REQUIRE(cli("--store s problem create --bop clause.bop --out clause") == 0);
    auto p = cli.doc("s/clause.problem.json");
    CHECK(p["kind"] == "bop");
    CHECK(p["bop"]["clauses"][0]["expr"] == "(b1 AND b2) OR NOT b3");
    CHECK(p["qubo"]["P"].size() == 4);
    CHECK(p["qubo"]["num_original"] == 3);

    cli.write("p.json", R"({"P": [[-1, 0.5], [0.5, -1]], "offset": 2})");
    REQUIRE(cli("--store s problem create --qubo p.json --out j") == 0);
    CHECK(cli.doc("s/j.problem.json")["qubo"]["offset"] == 2.0);
}

TEST_CASE("solve equals the composed commands") {
    Cli cli("solve");
    cli.write("clause.bop", "1 : (b1 AND b2) OR NOT b3\n0.5 : b1\n");
    REQUIRE(cli("problem create --bop clause.bop --out clause", "AQO_STORE=env_store") == 0);
    CHECK(fs::exists(cli.dir / "env_store/clause.problem.json"));
    const std::string run_flags = " --T 20 --dt-evolve 0.001 --dt-anneal 0.05 --snapshots 5";
    REQUIRE(cli("processor chimera --rows 1 --cols 1", "AQO_STORE=env_store") == 0);
    REQUIRE(cli("solve --problem clause --processor chimera_1x1 --out auto" + run_flags, "AQO_STORE=env_store") == 0);
    auto sol = cli.doc("env_store/auto.solution.json");
    CHECK(sol["bits"].get<std::string>().size() == 3);
    CHECK(sol["bop_value"] == 0.0);

    REQUIRE(cli("embed --problem clause --processor chimera_1x1 --out manual", "AQO_STORE=env_store") == 0);
    REQUIRE(cli("program synth --problem clause --processor chimera_1x1 --embedding manual --T 20 --schedule linear "
                "--out manual",
                "AQO_STORE=env_store") == 0);
    REQUIRE(cli("run --program manual --dt-evolve 0.001 --dt-anneal 0.05 --snapshots 5", "AQO_STORE=env_store") == 0);
    CHECK(cli.read("env_store/manual.embedding.json") == cli.read("env_store/auto.embedding.json"));
    CHECK(cli.read("env_store/manual.program.json") == cli.read("env_store/auto.program.json"));
    CHECK(cli.read("env_store/manual.result.json") == cli.read("env_store/auto.result.json"));
}
