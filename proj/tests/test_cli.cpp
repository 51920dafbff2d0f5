#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

#include "lsync/io/builtins.hpp"

namespace {

namespace fs = std::filesystem;

struct Run {
    int code = -1;
    std::string out;
};

/// Runs the CLI with the given arguments; stderr is discarded.
Run cli(const std::string& args) {
    const std::string cmd = std::string(LSYNC_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf{};
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string presentation_file(const std::string& stem) {
    return (fs::path(LSYNC_GOLDEN_DIR).parent_path().parent_path() / "presentations" / (stem + ".json")).string();
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch_dir(const std::string& name) {
    auto d = fs::temp_directory_path() / ("lsync_cli_test_" + name);
    fs::remove_all(d);
    return d;
}

}  // namespace

TEST(Cli, ExitCodesForMalformedInput) {
    EXPECT_EQ(cli("").code, 1);
    EXPECT_EQ(cli("check").code, 1);
    EXPECT_EQ(cli("check --builtin no-such-shift").code, 1);
    EXPECT_EQ(cli("check --builtin full-2 -L 0").code, 1);
    EXPECT_EQ(cli("check --builtin full-2 --format yaml").code, 1);
    EXPECT_EQ(cli("check --file /nonexistent/file.json").code, 1);
    EXPECT_EQ(cli("compare --builtin full-2").code, 1);

    auto bad = scratch_dir("malformed");
    fs::create_directories(bad);
    std::ofstream(bad / "bad.json") << R"({"kind": "sft", "alphabet": ["0"], "forbidden": ["2"]})";
    std::ofstream(bad / "broken.json") << "{ not json";
    EXPECT_EQ(cli("check --file " + (bad / "bad.json").string()).code, 1);
    EXPECT_EQ(cli("check --file " + (bad / "broken.json").string()).code, 1);
}

TEST(Cli, CheckVerdicts) {
    auto full = cli("check --builtin full-2");
    EXPECT_EQ(full.code, 0) << full.out;
    EXPECT_NE(full.out.find("VERIFIED"), std::string::npos);

    auto fib = cli("check --builtin fibonacci");
    EXPECT_EQ(fib.code, 0) << fib.out;

    // The coded example's condition (iii) failure is found at a finite
    // horizon, so it is reported as evidence rather than as a refutation.
    auto coded = cli("check --builtin coded-example --format json");
    EXPECT_EQ(coded.code, 3);
    auto j = nlohmann::json::parse(coded.out);
    EXPECT_EQ(j["property_D"]["verdict"], "VERIFIED");
    EXPECT_EQ(j["lambda_synchronizing"]["verdict"], "INCONCLUSIVE");
    bool beta_alpha = false;
    for (const auto& f : j["lambda_synchronizing"]["failures"]) beta_alpha = beta_alpha || f["b"] == "βα";
    EXPECT_TRUE(beta_alpha) << coded.out;

    // A horizon too short to refute or certify leaves the answer open.
    auto tm = cli("check --builtin thue-morse --follower-horizon 2 --max-word-len 2");
    EXPECT_EQ(tm.code, 3) << tm.out;
}

TEST(Cli, BuildFormats) {
    auto dot = cli("build --builtin golden-mean -L 4 --format dot");
    EXPECT_EQ(dot.code, 0);
    EXPECT_NE(dot.out.find("digraph"), std::string::npos);

    auto dyck = cli("build --builtin dyck-2 -L 3 --stability-recheck");
    EXPECT_EQ(dyck.code, 0) << dyck.out;
    EXPECT_NE(dyck.out.find("stability: STABLE"), std::string::npos) << dyck.out;

    auto full = cli("build --builtin full-2 --format json");
    ASSERT_EQ(full.code, 0);
    auto j = nlohmann::json::parse(full.out);
    EXPECT_EQ(j["graph"]["sizes"], nlohmann::json::array({1, 1, 1, 1, 1}));
    EXPECT_EQ(j["stability"], "NOT_CHECKED");
}

TEST(Cli, JsonOutputIsByteIdentical) {
    for (const char* args : {"build --builtin even-shift --format json", "invariants --builtin markov-dyck --format json",
                             "check --builtin coded-example --format json"}) {
        auto a = cli(args), b = cli(args);
        EXPECT_EQ(a.out, b.out) << args;
        EXPECT_FALSE(a.out.empty()) << args;
    }
}

TEST(Cli, OutDirectoryReceivesFiles) {
    auto d = scratch_dir("out");
    auto r = cli("build --builtin golden-mean --format dot --out " + d.string());
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    EXPECT_TRUE(fs::exists(d / "golden-mean.dot"));
    r = cli("invariants --builtin full-3 --format json --out " + d.string());
    EXPECT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(read_file(d / "full-3.invariants.json"));
    EXPECT_EQ(j["K0"]["limit"], "Z/2");
}

TEST(Cli, InvariantsExamples) {
    auto golden = cli("invariants --builtin golden-mean -L 12");
    EXPECT_EQ(golden.code, 0) << golden.out;
    EXPECT_NE(golden.out.find("K0 = 0"), std::string::npos) << golden.out;
    EXPECT_NE(golden.out.find("0.481"), std::string::npos) << golden.out;
    auto full2 = cli("invariants --builtin full-2 -L 12");
    EXPECT_NE(full2.out.find("0.693"), std::string::npos) << full2.out;
}

TEST(Cli, CompareVerdicts) {
    auto same = cli("compare --builtin golden-mean --builtin golden-mean-block2");
    EXPECT_EQ(same.code, 0) << same.out;
    EXPECT_EQ(same.out.find("MISMATCH"), std::string::npos) << same.out;
    auto self = cli("compare --builtin dyck-2 --builtin dyck-2");
    EXPECT_NE(self.code, 2) << self.out;
    auto differ = cli("compare --builtin full-2 --builtin full-3");
    EXPECT_EQ(differ.code, 2);
    EXPECT_NE(differ.out.find("K0: 0 | Z/2  MISMATCH"), std::string::npos) << differ.out;
}

TEST(Cli, PresentationFilesMatchBuiltins) {
    const std::pair<const char*, const char*> pairs[] = {{"golden-mean", "golden-mean"},
                                                         {"even-shift", "even-shift"},
                                                         {"markov-dyck", "markov-dyck"},
                                                         {"fibonacci", "fibonacci"},
                                                         {"coded-example-rev", "coded-example-rev"},
                                                         {"beta-golden-block2", "beta-golden-block2"}};
    for (const auto& [file, builtin] : pairs) {
        auto a = cli(std::string("build --format json --file ") + presentation_file(file));
        auto b = cli(std::string("build --format json --builtin ") + builtin);
        ASSERT_EQ(a.code, b.code) << file;
        auto ja = nlohmann::json::parse(a.out), jb = nlohmann::json::parse(b.out);
        EXPECT_EQ(ja["graph"]["sizes"], jb["graph"]["sizes"]) << file;
        EXPECT_EQ(ja["graph"]["edges"], jb["graph"]["edges"]) << file;
    }
}

TEST(Cli, ListShowsEveryBuiltin) {
    auto r = cli("list");
    EXPECT_EQ(r.code, 0);
    for (const auto& n : lsync::builtin_names()) EXPECT_NE(r.out.find(n + "\n"), std::string::npos) << n;
}

/// Committed reports for every builtin at the default configuration;
/// regenerate with tools/update_goldens.sh after an intended change.
TEST(Cli, GoldenReports) {
    for (const auto& n : lsync::builtin_names()) {
        for (const char* cmd : {"check", "invariants"}) {
            auto path = fs::path(LSYNC_GOLDEN_DIR) / (n + "." + cmd + ".json");
            ASSERT_TRUE(fs::exists(path)) << path;
            auto r = cli(std::string(cmd) + " --format json --builtin " + n);
            EXPECT_EQ(r.out, read_file(path)) << n << " " << cmd;
        }
    }
}
