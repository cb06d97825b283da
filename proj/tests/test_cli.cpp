// Runs the built qwcav binary end to end.
#include "qwcav/io.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

const fs::path& scratch() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / "qwcav_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int cli(const std::string& args, const std::string& stdout_file = "") {
    const std::string out = stdout_file.empty() ? (scratch() / "stdout.txt").string() : stdout_file;
    const std::string cmd = std::string(QWCAV_CLI_PATH) + " " + args + " > " + out + " 2> " +
                            (scratch() / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

qwcav::io::Dataset read_stdout() {
    std::ifstream is(scratch() / "stdout.txt");
    return qwcav::io::read_csv(is);
}

}  // namespace

TEST(Cli, IntensityCsvToStdout) {
    ASSERT_EQ(cli("intensity --g 5 --delta 2 --epsilon 7 --tmax 4 --points 9"), 0);
    const auto ds = read_stdout();
    EXPECT_EQ(ds.columns, (std::vector<std::string>{"t", "intensity"}));
    EXPECT_EQ(ds.rows.size(), 9u);
    EXPECT_EQ(*ds.find_meta("epsilon"), "7");
    EXPECT_EQ(std::get<double>(ds.rows.front()[1]), 1.0);
}

TEST(Cli, DressedJsonEigenvalues) {
    ASSERT_EQ(cli("dressed --n 2 --delta 0 --g 5 --format json"), 0);
    const auto j = nlohmann::json::parse(slurp(scratch() / "stdout.txt"));
    const auto ev = j["eigenvalues"].get<std::vector<double>>();
    ASSERT_EQ(ev.size(), 3u);
    EXPECT_NEAR(ev[0], 10.0, 1e-12);
    EXPECT_NEAR(ev[1], 0.0, 1e-12);
    EXPECT_NEAR(ev[2], -10.0, 1e-12);
}

TEST(Cli, ValidationErrorsExitTwo) {
    EXPECT_EQ(cli("intensity --g -1"), 2);
    EXPECT_EQ(cli("intensity --g abc"), 2);
    EXPECT_EQ(cli("g2 --epsilon 0 --r 0"), 2);
    EXPECT_EQ(cli("spectrum --omega-min 3 --omega-max 1"), 2);
    EXPECT_EQ(cli("figure"), 2);
    EXPECT_EQ(cli("figure --preset fig6"), 2);
    EXPECT_EQ(cli("nosuchcommand"), 2);
    EXPECT_EQ(cli("intensity --bogus 1"), 2);
}

TEST(Cli, IoErrorsExitThree) {
    EXPECT_EQ(cli("intensity --out /nonexistent-dir/x/out.csv"), 3);
    EXPECT_EQ(cli("intensity --config /nonexistent-dir/cfg.txt"), 3);
}

TEST(Cli, ConfigFileThenFlags) {
    const auto cfg = scratch() / "run.cfg";
    {
        std::ofstream os(cfg);
        os << "# demo\ng = 8\nkappa = 0.5\ntmax = 2\npoints = 5\n";
    }
    ASSERT_EQ(cli("intensity --config " + cfg.string() + " --kappa 0.9"), 0);
    const auto ds = read_stdout();
    EXPECT_EQ(*ds.find_meta("g"), "8");
    EXPECT_EQ(*ds.find_meta("kappa"), "0.90000000000000002");
    EXPECT_EQ(ds.rows.size(), 5u);

    {
        std::ofstream os(cfg);
        os << "not_a_key = 1\n";
    }
    EXPECT_EQ(cli("intensity --config " + cfg.string()), 2);
}

TEST(Cli, OutputFileAndJson) {
    const auto out = scratch() / "spec.json";
    ASSERT_EQ(cli("spectrum --r 1 --g 6 --points 11 --format json --out " + out.string()), 0);
    const auto j = nlohmann::json::parse(slurp(out));
    EXPECT_EQ(j["columns"][0], "omega_minus_omega0");
    EXPECT_EQ(j["rows"].size(), 11u);
    EXPECT_EQ(j["metadata"]["format"], "json");
}

TEST(Cli, FigurePresetToDirectory) {
    const auto dir = scratch() / "fig2";
    ASSERT_EQ(cli("figure --preset fig2 --out " + dir.string()), 0);
    int n = 0;
    for (const auto& e : fs::directory_iterator(dir)) {
        ++n;
        EXPECT_EQ(e.path().extension(), ".csv");
    }
    EXPECT_EQ(n, 3);
}

TEST(Cli, VerifyStrongCouplingPasses) {
    ASSERT_EQ(cli("verify --g 40 --delta 2 --epsilon 3 --r 0.8 --points 201"), 0);
    const auto ds = read_stdout();
    EXPECT_EQ(*ds.find_meta("pass"), "true");
}

TEST(Cli, LiteralVariantIsRecorded) {
    ASSERT_EQ(cli("variance --r 1 --paper-literal --points 3"), 0);
    const auto ds = read_stdout();
    EXPECT_EQ(*ds.find_meta("paper_literal"), "true");
    EXPECT_EQ(*ds.find_meta("formula_variant"), "paper-literal");
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(cli("--help"), 0); }
