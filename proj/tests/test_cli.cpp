// Exit-code and output contract of the qent command-line tool, exercised by
// running the real binary.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output; // stdout + stderr
};

RunResult run_cli(const std::string& args) {
    const std::string command = std::string(QENT_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        result.output.append(buf.data(), got);
    }
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

} // namespace

TEST_CASE("analyze: W state") {
    const RunResult r = run_cli("analyze \"(1/sqrt(3))(|001>+|010>+|100>)\"");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("C_3 (binary) = 1/3") != std::string::npos);
    CHECK(r.output.find("C_2 (binary) = 1/2") != std::string::npos);
    CHECK(r.output.find("completely separable: no") != std::string::npos);
}

TEST_CASE("analyze: json document follows the serialization contract") {
    const RunResult r = run_cli("analyze \"(1/sqrt(2))(|000>+|111>)\" --format json");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.output);
    CHECK(doc["dims"] == json::array({2, 2, 2}));
    CHECK(doc["levels"][0]["minors"][2]["binary"] == 1);
    CHECK(doc["levels"][0]["minors"][2]["col_pair"] == json::array({0, 3}));
    CHECK(doc.contains("cayley"));
    CHECK(doc["separability"]["completely_separable"] == false);
}

TEST_CASE("analyze: raw mode exposes magnitudes") {
    const RunResult r = run_cli("analyze \"(1/sqrt(2))(|000>+|111>)\" --mode raw");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("|det| = 0.5") != std::string::npos);
}

TEST_CASE("analyze: degenerate state exits 3") {
    const RunResult r = run_cli("analyze \"|00> - |00>\"");
    CHECK(r.exit_code == 3);
}

TEST_CASE("analyze: parse errors exit 2 and carry a position") {
    const RunResult r = run_cli("analyze \"(|00>\"");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("offset") != std::string::npos);

    CHECK(run_cli("analyze \"|0a>\"").exit_code == 2);
    CHECK(run_cli("analyze \"|00>+|1>\"").exit_code == 2);
}

TEST_CASE("analyze: unknown flags exit 2") {
    CHECK(run_cli("analyze \"|00>\" --frobnicate").exit_code == 2);
}

TEST_CASE("factor: product state factors fully") {
    const RunResult r = run_cli("factor \"(1/2)(|00>+|01>+|10>+|11>)\"");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("completely separable: yes") != std::string::npos);
    CHECK(r.output.find("factor (site 2)") != std::string::npos);
    CHECK(r.output.find("factor (site 1)") != std::string::npos);
}

TEST_CASE("measure: GHZ collapsed at site 1 leaves a separable pair") {
    const RunResult r = run_cli("measure \"(1/sqrt(2))(|000>+|111>)\" --site 1 --outcome 0");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("probability 0.5") != std::string::npos);
    CHECK(r.output.find("completely separable: yes") != std::string::npos);
}

TEST_CASE("measure: GHZ projected on |0>_x stays entangled") {
    const RunResult r =
        run_cli("measure \"(1/sqrt(2))(|000>+|111>)\" --site 1 --direction \"1/sqrt(2),1/sqrt(2)\"");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("concurrence: 1") != std::string::npos);

    const RunResult named = run_cli("measure \"(1/sqrt(2))(|000>+|111>)\" --site 1 --direction x-plus");
    CHECK(named.exit_code == 0);
    CHECK(named.output.find("concurrence: 1") != std::string::npos);
}

TEST_CASE("measure: unrealizable branches exit 4") {
    const RunResult r = run_cli("measure \"(1/sqrt(2))(|000>+|111>)\" --chain \"1:0,1:1\"");
    CHECK(r.exit_code == 4);
    CHECK(r.output.find("probability") != std::string::npos);
}

TEST_CASE("measure: chains collapse step by step") {
    const RunResult r = run_cli("measure \"(1/sqrt(2))(|000>+|111>)\" --chain \"3:1,2:1\"");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("step 2") != std::string::npos);
    CHECK(r.output.find("single-site remainder") != std::string::npos);
}

TEST_CASE("tables: both bundled tables reproduce") {
    const RunResult t1 = run_cli("tables 1");
    CHECK(t1.exit_code == 0);
    CHECK(t1.output.find("6/6 rows match") != std::string::npos);

    const RunResult t2 = run_cli("tables 2");
    CHECK(t2.exit_code == 0);
    CHECK(t2.output.find("6/6 rows match") != std::string::npos);
    CHECK(t2.output.find("tabulated") != std::string::npos);

    CHECK(run_cli("tables 3").exit_code == 2);
}

TEST_CASE("count") {
    const RunResult r = run_cli("count --qubits 4");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("l_4 = 28") != std::string::npos);
    CHECK(r.output.find("l_3 = 12") != std::string::npos);
    CHECK(r.output.find("l_2 = 4") != std::string::npos);
    CHECK(r.output.find("35") != std::string::npos);

    const RunResult big = run_cli("count --qubits 10");
    CHECK(big.exit_code == 0);
    CHECK(big.output.find("174251") != std::string::npos);

    const RunResult qutrits = run_cli("count --dims 3,3,3 --m 3");
    CHECK(qutrits.exit_code == 0);
    CHECK(qutrits.output.find("l_3 = 108") != std::string::npos);

    CHECK(run_cli("count").exit_code == 2);
}

TEST_CASE("random: seeded determinism and validation") {
    const std::string a = temp_path("qent_cli_rand_a.json");
    const std::string b = temp_path("qent_cli_rand_b.json");
    REQUIRE(run_cli("random --dims 2,2,2 --seed 7 --out " + a).exit_code == 0);
    REQUIRE(run_cli("random --dims 2,2,2 --seed 7 --out " + b).exit_code == 0);

    std::ifstream fa(a), fb(b);
    const std::string ca((std::istreambuf_iterator<char>(fa)), std::istreambuf_iterator<char>());
    const std::string cb((std::istreambuf_iterator<char>(fb)), std::istreambuf_iterator<char>());
    CHECK(ca == cb);
    CHECK(!ca.empty());

    // the written file loads back through analyze
    CHECK(run_cli("analyze --file " + a).exit_code == 0);

    std::remove(a.c_str());
    std::remove(b.c_str());

    const std::string multi = temp_path("qent_cli_multi.json");
    const RunResult r = run_cli("random --dims 2,2 --seed 1 --count 3 --out " + multi);
    CHECK(r.exit_code == 0);
    int written = 0;
    for (int k = 0; k < 3; ++k) {
        const std::string path = temp_path("qent_cli_multi." + std::to_string(k) + ".json");
        if (std::filesystem::exists(path)) {
            ++written;
            std::remove(path.c_str());
        }
    }
    CHECK(written == 3);

    CHECK(run_cli("random --dims 1,2").exit_code == 2);
}

TEST_CASE("expression files: exactly one expression, comments allowed") {
    const std::string path = temp_path("qent_cli_expr.txt");
    {
        std::ofstream out(path);
        out << "# the W state\n";
        out << "(1/sqrt(3))(|001>+|010>+|100>)\n";
    }
    const RunResult r = run_cli("analyze --expr-file " + path);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("C_3 (binary) = 1/3") != std::string::npos);

    {
        std::ofstream out(path);
        out << "|00>\n|11>\n";
    }
    CHECK(run_cli("analyze --expr-file " + path).exit_code == 2);
    std::remove(path.c_str());
    CHECK(run_cli("analyze --expr-file /nonexistent/exprs.txt").exit_code == 5);
}

TEST_CASE("io failures exit 5") {
    CHECK(run_cli("analyze --file /nonexistent/qent_state.json").exit_code == 5);
    CHECK(run_cli("random --dims 2,2 --out /nonexistent-dir/x.json").exit_code == 5);
}

TEST_CASE("json output is byte-stable across runs") {
    const RunResult a = run_cli("analyze \"(1/2)(|001>+|010>+|100>+|111>)\" --format json");
    const RunResult b = run_cli("analyze \"(1/2)(|001>+|010>+|100>+|111>)\" --format json");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
}
