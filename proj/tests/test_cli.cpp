// End-to-end checks of the command-line tool: exit codes, file output,
// determinism. Each case shells out to the built binary.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "twmr/result_table.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
};

RunResult run_cli(const std::string& args) {
    const std::string command = std::string(TWMR_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(command.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string slurp(const fs::path& path) {
    std::ifstream file(path);
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

fs::path temp_dir() {
    const fs::path dir = fs::temp_directory_path() / "twmr_cli_test";
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("replicate writes a preset with its parameters embedded") {
    const fs::path out = temp_dir() / "fig4bcd.csv";
    const auto run = run_cli("replicate fig4bcd --output " + out.string());
    CHECK_EQ(run.exit_code, 0);
    const std::string text = slurp(out);
    CHECK_NE(text.find("# param.J = 0.016"), std::string::npos);
    CHECK_NE(text.find("J_PT"), std::string::npos);
    CHECK_NE(text.find("# units ="), std::string::npos);
}

TEST_CASE("replicate output is byte-identical across runs") {
    const fs::path a = temp_dir() / "fig3c_a.csv";
    const fs::path b = temp_dir() / "fig3c_b.csv";
    CHECK_EQ(run_cli("replicate fig3c --output " + a.string()).exit_code, 0);
    CHECK_EQ(run_cli("replicate fig3c --output " + b.string()).exit_code, 0);
    CHECK_EQ(slurp(a), slurp(b));
}

TEST_CASE("unknown figure id is a validation error") {
    CHECK_EQ(run_cli("replicate fig9z").exit_code, 2);
}

TEST_CASE("invalid parameters exit with code 2") {
    CHECK_EQ(run_cli("pairgen --set kappa_in=20 --set sweep.points=3").exit_code, 2);
    CHECK_EQ(run_cli("pairgen --set G_mk=0.9 --set sweep.points=3").exit_code, 2);
    CHECK_EQ(run_cli("pairgen --set sweep.grid=0.1,bogus").exit_code, 2);
}

TEST_CASE("config device key must match the subcommand") {
    const fs::path cfg = temp_dir() / "device.cfg";
    {
        std::ofstream file(cfg);
        file << "device = ptsym\n";
    }
    CHECK_EQ(run_cli("pairgen --config " + cfg.string()).exit_code, 2);
    CHECK_EQ(run_cli("ptsym --config " + cfg.string() + " --set sweep.points=33").exit_code, 0);
}

TEST_CASE("solver instability exits with code 3") {
    // optically induced gain overwhelms every loss channel
    CHECK_EQ(run_cli("ptsym --set G_ml=0.6 --set G_l=0 --set sweep.points=5").exit_code, 3);
}

TEST_CASE("unwritable output path exits with code 4") {
    CHECK_EQ(run_cli("replicate fig3d --output /nonexistent-dir/out.csv").exit_code, 4);
}

TEST_CASE("small pairgen sweep succeeds and emits json") {
    const fs::path out = temp_dir() / "pairgen.json";
    const auto run = run_cli(
        "pairgen --set sweep.start=-0.05 --set sweep.stop=0.05 --set sweep.points=5 --format json "
        "--output " +
        out.string());
    CHECK_EQ(run.exit_code, 0);
    std::ifstream file(out);
    const auto table = twmr::io::read_json(file);
    CHECK_EQ(table.rows(), 5);
    bool has_params = false;
    for (const auto& [key, value] : table.metadata) {
        if (key == "param.G_k") has_params = true;
    }
    CHECK(has_params);
}

TEST_CASE("empty sweep grid yields an empty table and success") {
    const fs::path out = temp_dir() / "empty.csv";
    const auto run = run_cli("pairgen --set sweep.points=0 --output " + out.string());
    CHECK_EQ(run.exit_code, 0);
    const std::string text = slurp(out);
    CHECK_NE(text.find("delta_k,I"), std::string::npos);
}

TEST_CASE("modes subcommand lists brillouin triples from a config") {
    const fs::path cfg = temp_dir() / "modes.cfg";
    {
        std::ofstream file(cfg);
        file << "optical = 12 193042.3 15\n"
                "optical = 7 193000 15\n"
                "mechanical = 5 42.3 0.022\n";
    }
    const fs::path out = temp_dir() / "modes.csv";
    const auto run = run_cli("modes --config " + cfg.string() + " --output " + out.string());
    CHECK_EQ(run.exit_code, 0);
    const std::string text = slurp(out);
    CHECK_NE(text.find("j,k,l,mismatch"), std::string::npos);
    CHECK_NE(text.find("12,7,5,"), std::string::npos);
}

TEST_CASE("convert sweep over theta") {
    const fs::path out = temp_dir() / "convert.csv";
    const auto run = run_cli(
        "convert --set sweep.axis=theta --set sweep.points=9 --output " + out.string());
    CHECK_EQ(run.exit_code, 0);
    CHECK_NE(slurp(out).find("theta,fwd_eff,bwd_eff,eta"), std::string::npos);
}
