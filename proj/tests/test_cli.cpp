#include "json.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(IRRK3_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string sample(const std::string& name) { return std::string(IRRK3_SAMPLES_DIR) + "/" + name; }

nlohmann::json payload(const Run& r) { return nlohmann::json::parse(r.out).at("payload"); }

}  // namespace

TEST(Cli, Bound) {
    const auto r = run("bound 10");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(payload(r)["paper"], 4);
}

TEST(Cli, BoundErrors) {
    const auto r = run("bound 1");
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(payload(r)["error"]["kind"], "domain_error");
    EXPECT_EQ(run("bound ten").code, 2);
    EXPECT_EQ(run("bound").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
}

TEST(Cli, TableFormats) {
    const auto csv = run("table --from 6 --to 8 --format csv");
    ASSERT_EQ(csv.code, 0);
    EXPECT_EQ(csv.out, "genus,n,k,c2,paper_bound,optimized_bound,improved\n"
                       "6,1,0,4,3,3,0\n7,1,1,5,4,4,0\n8,1,2,5,4,4,0\n");
    const auto md = run("table --from 6 --to 6 --format md");
    EXPECT_NE(md.out.find("| 6 | 1 | 0 | 4 | 3 | 3 | 0 |"), std::string::npos);
    const auto js = run("table --from 6 --to 62");
    ASSERT_EQ(js.code, 0);
    EXPECT_EQ(payload(js)["rows"].size(), 57u);
    EXPECT_EQ(run("table --format xml").code, 2);
}

TEST(Cli, ConfigFileAndOverride) {
    const auto r = run("--config " + sample("run.cfg") + " table");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("genus,n,k", 0), 0u);
    EXPECT_NE(r.out.find("\n26,"), std::string::npos);
    const auto over = run("--config " + sample("run.cfg") + " table --to 7 --format json");
    ASSERT_EQ(over.code, 0);
    EXPECT_EQ(payload(over)["rows"].size(), 2u);
    EXPECT_EQ(run("--config /nonexistent.cfg table").code, 2);
}

TEST(Cli, Optimize) {
    const auto r = run("optimize 38 --exhaustive");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(payload(r)["certificate"]["predicted_degree"], 7);
}

TEST(Cli, BrillNoether) {
    ASSERT_EQ(run("bn --genus 6").code, 0);
    const auto r = run("bn --genus 9");
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(payload(r)["error"]["kind"], "unsupported_genus");
}

TEST(Cli, Catalog) {
    const auto r = run("catalog");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(payload(r)["entries"].size(), 5u);
}

TEST(Cli, VerifyWithBasePoints) {
    const auto r = run("verify --bundle 2,3 --base-points " + sample("double_point.txt") + " --q 997 --seed 1");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(payload(r)["measured_degree"], 2);
    const auto s = run("verify --bundle 2,2 --base-points " + sample("simple_point.txt") + " --seed 2");
    ASSERT_EQ(s.code, 0);
    EXPECT_EQ(payload(s)["measured_degree"], 3);
}

TEST(Cli, VerifyDeterministic) {
    const std::string args = "verify --bundle 3,3 --q 1009 --seed 42 --targets 6";
    const auto a = run(args), b = run(args);
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, VerifySections) {
    const auto r = run("verify --bundle 2,2 --base-points " + sample("simple_point.txt") + " --sections " +
                       sample("sections_2_2.txt"));
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(payload(r)["measured_degree"], 3);
    // Same net, base point not announced: the measured degree disagrees.
    const auto m = run("verify --bundle 2,2 --sections " + sample("sections_2_2.txt"));
    EXPECT_EQ(m.code, 3);
    EXPECT_EQ(payload(m)["status"], "mismatch");
}

TEST(Cli, VerifyErrors) {
    EXPECT_EQ(run("verify --bundle 2,2 --q 100").code, 2);
    EXPECT_EQ(run("verify --bundle 2").code, 2);
    EXPECT_EQ(run("verify --bundle 1,1 --base-points " + sample("three_points.txt")).code, 2);
    EXPECT_EQ(run("verify --base-points /nonexistent.txt").code, 2);
    EXPECT_EQ(run("verify --bundle 1,3 --base-points " + sample("double_point.txt")).code, 4);
}

TEST(Cli, Cache) {
    const auto dir = std::filesystem::temp_directory_path() / "irrk3-cli-cache";
    std::filesystem::remove_all(dir);
    const std::string args = "--cache " + dir.string() + " verify --bundle 2,2 --seed 5";
    const auto a = run(args), b = run(args);
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out, run("verify --bundle 2,2 --seed 5").out);
    EXPECT_FALSE(std::filesystem::is_empty(dir));
    std::filesystem::remove_all(dir);
}
