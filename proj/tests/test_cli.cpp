// CLI output is compared byte-for-byte with files under tests/golden.
// Set PERIM_UPDATE_GOLDEN=1 to rewrite them.

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "perim/cli.hpp"

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = perim::cli::run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void expect_golden(const std::string& name, const std::vector<std::string>& args, int code = 0) {
    const CliResult r = run(args);
    EXPECT_EQ(r.code, code) << name << "\n" << r.err;
    const std::string path = std::string(GOLDEN_DIR) + "/" + name;
    if (std::getenv("PERIM_UPDATE_GOLDEN")) {
        std::ofstream(path, std::ios::binary) << r.out;
        return;
    }
    EXPECT_EQ(r.out, read_file(path)) << name;
}

}  // namespace

TEST(CliGolden, Map) {
    expect_golden("map_phi.txt", {"map", "--map", "phi", "--m", "3", "--input", "6,2,4,3,2"});
    expect_golden("map_phi_trace.txt", {"map", "--map", "phi", "--m", "3", "--input", "6,2,4,3,2", "--trace"});
    expect_golden("map_phi_trace.json",
                  {"map", "--map", "phi", "--m", "3", "--input", "6,2,4,3,2", "--trace", "--format", "json"});
    expect_golden("map_rotate.txt", {"map", "--map", "rotate", "--m", "4", "--R", "1,3", "--input", "7,9,1,7,3"});
    expect_golden("map_preimage_absent.txt", {"map", "--map", "phi-preimage", "--m", "3", "--input", "2,2"});
    expect_golden("map_pi.txt", {"map", "--map", "pi", "--input", "3,1,2,4,2"});
}

TEST(CliGolden, Count) {
    expect_golden("count_h.txt", {"count", "--family", "h:n=4,m=3"});
    expect_golden("count_h_g.csv", {"count", "--family", "h", "--family", "g", "--m", "2", "--n", "1..10", "--format", "csv"});
    expect_golden("count_ft.json", {"count", "--family", "ft1:n=7,m=1,k=1", "--family", "ft2:n=7,m=1,k=1", "--format", "json"});
}

TEST(CliGolden, Enumerate) {
    expect_golden("enumerate_ft1.csv", {"enumerate", "--family", "ft1:n=7,m=1,k=1", "--format", "csv"});
    expect_golden("enumerate_ft1.txt", {"enumerate", "--family", "ft1", "--n", "7", "--m", "1", "--k", "1"});
    expect_golden("enumerate_empty.csv", {"enumerate", "--family", "huang-a:n=2,m=2,k=1", "--format", "csv"});
    expect_golden("enumerate_g.json", {"enumerate", "--family", "g:n=4,m=3", "--format", "json"});
}

TEST(CliGolden, Verify) {
    expect_golden("verify_main_4_3.txt", {"verify", "--suite", "main", "--n", "4", "--m", "3"});
    expect_golden("verify_main_4_3.json", {"verify", "--suite", "main", "--n", "4", "--m", "3", "--format", "json"});
    expect_golden("sweep_munagi.txt", {"sweep", "--suite", "munagi", "--n", "1..4", "--m", "1..2"});
    expect_golden("sweep_munagi.csv", {"sweep", "--suite", "munagi", "--n", "1..3", "--m", "2", "--format", "csv"});
}

TEST(CliGolden, RenderRank) {
    expect_golden("render_modular.txt", {"render", "--input", "5,3,4,2,7", "--style", "modular", "--m", "3"});
    expect_golden("render_young.txt", {"render", "--input", "5,3,1,1", "--sort", "partition"});
    expect_golden("render_one.txt", {"render", "--input", "1"});
    expect_golden("rank.txt", {"rank", "--input", "1,3"});
    expect_golden("unrank.txt", {"unrank", "--n", "4", "--index", "1"});
    expect_golden("unrank_partition.json", {"unrank", "--n", "5", "--index", "6", "--sort", "partition", "--format", "json"});
}

TEST(CliCodes, UsageAndDomainErrors) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"bogus"}).code, 2);
    EXPECT_EQ(run({"count", "--zzz"}).code, 2);
    EXPECT_EQ(run({"count", "--family", "h:n=4,m=3", "--format", "xml"}).code, 2);
    EXPECT_EQ(run({"count", "--family", "nope:n=4"}).code, 2);
    EXPECT_EQ(run({"count", "--family", "h:n=4"}).code, 2);
    EXPECT_EQ(run({"count", "--family", "h:n=40,m=3"}).code, 2);  // beyond the cap
    EXPECT_EQ(run({"map", "--map", "phi", "--m", "3", "--input", "3"}).code, 2);
    EXPECT_EQ(run({"map", "--map", "phi", "--m", "3", "--input", "3,x"}).code, 2);
    EXPECT_EQ(run({"map", "--map", "conjugate", "--input", "1,2"}).code, 2);  // not a partition
    EXPECT_EQ(run({"map", "--map", "rotate", "--m", "4", "--R", "3,1", "--input", "1"}).code, 2);
    EXPECT_EQ(run({"map", "--map", "pi", "--input", "2", "--trace"}).code, 2);
    EXPECT_EQ(run({"render", "--input", "3,1", "--sort", "partition", "--style", "modular", "--m", "3"}).code, 2);
    EXPECT_EQ(run({"unrank", "--n", "4", "--index", "8"}).code, 2);
    EXPECT_EQ(run({"verify", "--suite", "nope"}).code, 2);
    const CliResult r = run({"count", "--zzz"});
    EXPECT_NE(r.err.find("Usage"), std::string::npos);
    EXPECT_TRUE(r.out.empty());
}

TEST(CliCodes, HelpIsSuccess) {
    const CliResult r = run({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("enumerate"), std::string::npos);
}

TEST(CliCodes, VerifyExitMatchesReport) {
    EXPECT_EQ(run({"verify", "--suite", "main", "--n", "1..6", "--m", "2..4"}).code, 0);
}

TEST(CliRoundTrip, UnrankThenRank) {
    for (int n : {1, 5, 9}) {
        for (std::uint64_t i = 0; i < (std::uint64_t{1} << (n - 1)); i += 3) {
            const CliResult u = run({"unrank", "--n", std::to_string(n), "--index", std::to_string(i)});
            ASSERT_EQ(u.code, 0);
            const std::string parts = u.out.substr(0, u.out.size() - 1);
            const CliResult r = run({"rank", "--input", parts});
            ASSERT_EQ(r.out, std::to_string(i) + "\n");
        }
    }
}

TEST(CliDeterminism, WorkersDoNotChangeBytes) {
    const auto a = run({"sweep", "--suite", "all", "--n", "1..7", "--m", "2..3", "--k", "0..1", "--format", "json"});
    const auto b = run({"sweep", "--suite", "all", "--n", "1..7", "--m", "2..3", "--k", "0..1", "--format", "json",
                        "--workers", "4"});
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out.find("elapsed_ms"), std::string::npos);
}
