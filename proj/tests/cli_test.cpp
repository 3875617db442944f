#include "cli.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace binpart::cli {
namespace {

struct Captured {
  int code;
  std::string out;
  std::string err;
};

Captured run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Runs the installed binary through the shell; returns the exit status.
Captured run_binary(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + BINPART_CLI_PATH + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, ""};
}

TEST(Compute, TextValues) {
  EXPECT_EQ(run({"compute", "pnk", "50", "26"}).out, "412637434996367\n");
  EXPECT_EQ(run({"compute", "p", "0"}).out, "1\n");
  EXPECT_EQ(run({"compute", "p", "100"}).out, "190569292\n");
  EXPECT_EQ(run({"compute", "pk", "3", "5"}).out, "5\n");
  EXPECT_EQ(run({"compute", "pnk", "4", "3"}).out, "14\n");
}

TEST(Compute, JsonEncodesIntegersAsStrings) {
  const Captured c = run({"compute", "pnk", "50", "26", "--format", "json"});
  ASSERT_EQ(c.code, 0);
  const json j = json::parse(c.out);
  EXPECT_EQ(j["kind"], "pnk");
  EXPECT_EQ(j["args"], json({"50", "26"}));
  ASSERT_TRUE(j["value"].is_string());
  EXPECT_EQ(j["value"], "412637434996367");
}

TEST(Compute, UsageErrors) {
  EXPECT_EQ(run({"compute", "pnk", "3", "5"}).code, kUsage);
  EXPECT_EQ(run({"compute", "q", "3"}).code, kUsage);
  EXPECT_EQ(run({"compute", "p", "-1"}).code, kUsage);
  EXPECT_EQ(run({"compute", "pk", "0", "5"}).code, kUsage);
  EXPECT_EQ(run({"compute", "p", "1", "2"}).code, kUsage);
  EXPECT_EQ(run({}).code, kUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kUsage);
}

TEST(Table, FiftyMatchesGoldenFixture) {
  const Captured c = run({"table", "50"});
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(c.out, read_file(std::string(BINPART_FIXTURE_DIR) + "/table50.csv"));
}

TEST(Table, Formats) {
  EXPECT_EQ(run({"table", "1"}).out, "k,p_k,p_n_k\n1,1,2\n");
  const Captured md = run({"table", "10", "--format", "markdown"});
  EXPECT_NE(md.out.find("| 5 | 7 | 590 |"), std::string::npos);
  const json j = json::parse(run({"table", "4", "--format", "json"}).out);
  EXPECT_EQ(j["n"], 4);
  ASSERT_EQ(j["rows"].size(), 4u);
  EXPECT_EQ(j["rows"][2]["p_n_k"], "14");
  EXPECT_EQ(j["rows"][2]["p_k"], "3");
  EXPECT_EQ(run({"table", "0"}).code, kUsage);
  EXPECT_EQ(run({"table", "5", "--format", "xml"}).code, kUsage);
}

TEST(Verify, SingleClaims) {
  const Captured t2 = run({"verify", "thm2", "4", "200"});
  ASSERT_EQ(t2.code, kOk);
  const json j = json::parse(t2.out);
  EXPECT_EQ(j["exit_code"], 0);
  ASSERT_EQ(j["claims"].size(), 1u);
  EXPECT_EQ(j["claims"][0]["outcome"], "verified");
  EXPECT_EQ(j["claims"][0]["checks"], 197);
  EXPECT_TRUE(j["claims"][0]["counterexample"].is_null());

  const json t3 = json::parse(run({"verify", "thm3", "1", "100"}).out);
  EXPECT_EQ(t3["claims"][0]["outcome"], "verified");
  EXPECT_GT(t3["claims"][0]["min_margin"].get<double>(), 0.0);
}

TEST(Verify, AllOverSharedRange) {
  const Captured c = run({"verify", "all", "4", "120"});
  ASSERT_EQ(c.code, kOk) << c.out;
  const json j = json::parse(c.out);
  ASSERT_EQ(j["claims"].size(), std::size(kClaims));
  for (const auto& r : j["claims"]) EXPECT_EQ(r["outcome"], "verified") << r["claim"];
}

TEST(Verify, UsageErrors) {
  EXPECT_EQ(run({"verify", "nonsense", "1", "2"}).code, kUsage);
  EXPECT_EQ(run({"verify", "thm2", "1", "10"}).code, kUsage);
  EXPECT_EQ(run({"verify", "thm2", "10", "5"}).code, kUsage);
  EXPECT_EQ(run({"verify", "thm2", "5"}).code, kUsage);
}

TEST(Product, Enclosures) {
  const Captured half = run({"product", "1", "2", "1e-12"});
  ASSERT_EQ(half.code, kOk);
  const json h = json::parse(half.out);
  EXPECT_TRUE(h["reached"].get<bool>());
  EXPECT_LE(h["width"].get<double>(), 1e-12);
  EXPECT_EQ(h["lower"].get<std::string>().substr(0, 12), "3.4627466194");
  EXPECT_EQ(h["upper"].get<std::string>().substr(0, 12), "3.4627466194");

  const json tenth = json::parse(run({"product", "1", "10", "1e-6"}).out);
  EXPECT_LE(tenth["ell"].get<std::size_t>(), 8u);

  const json r = json::parse(run({"product", "252", "500", "1e-15"}).out);
  EXPECT_EQ(r["q"], "63/125");
  EXPECT_EQ(r["upper"].get<std::string>().substr(0, 12), "3.5402982894");
}

TEST(Product, UsageErrors) {
  EXPECT_EQ(run({"product", "2", "1", "1e-3"}).code, kUsage);
  EXPECT_EQ(run({"product", "0", "5", "1e-3"}).code, kUsage);
  EXPECT_EQ(run({"product", "1", "2", "abc"}).code, kUsage);
  EXPECT_EQ(run({"product", "1", "2", "-1"}).code, kUsage);
}

TEST(Mu, Reports) {
  const json j = json::parse(run({"mu", "3", "2"}).out);
  EXPECT_EQ(j["bounds"]["pnk"], "7");
  EXPECT_EQ(j["bounds"]["reed"], "10");
  EXPECT_EQ(j["bounds"]["birkhoff"], "40");
  EXPECT_TRUE(j["bounds"]["filiform"].is_null());
  EXPECT_EQ(j["best"], "pnk");
  EXPECT_EQ(j["best_value"], "7");

  const json f = json::parse(run({"mu", "52", "51", "--filiform"}).out);
  EXPECT_EQ(f["bounds"]["filiform"], "1295972");
  EXPECT_EQ(f["best"], "filiform");

  const json m = json::parse(run({"mu", "50", "26"}).out);
  EXPECT_EQ(m["bounds"]["pnk"], "412637434996367");
  EXPECT_TRUE(m["pnk_below_corollary"].get<bool>());
}

TEST(Mu, UsageErrors) {
  EXPECT_EQ(run({"mu", "3", "3"}).code, kUsage);
  EXPECT_EQ(run({"mu", "3", "0"}).code, kUsage);
  EXPECT_EQ(run({"mu", "10", "4", "--filiform"}).code, kUsage);
}

TEST(Binary, ExitCodeContract) {
  EXPECT_EQ(run_binary("compute p 10").code, 0);
  EXPECT_EQ(run_binary("compute p 10").out, "42\n");
  EXPECT_EQ(run_binary("verify lemma-gr 4 60").code, 0);
  EXPECT_EQ(run_binary("verify bogus 1 2").code, 2);
  EXPECT_EQ(run_binary("mu 4 4").code, 2);
  EXPECT_EQ(run_binary("").code, 2);
}

TEST(Binary, InconclusiveWhenDepthCapIsHit) {
  // Far too tight for the depth cap near q = 1.
  EXPECT_EQ(run_binary("product 9999 10000 1e-30").code, 3);
}

TEST(Binary, ViolationBelowStatedRange) {
  // Row 3 is 4, 7, 7: no unique maximum.
  const Captured c = run_binary("verify thm2 1 10 --below-min");
  EXPECT_EQ(c.code, 1);
  const json j = json::parse(c.out);
  EXPECT_EQ(j["claims"][0]["outcome"], "violated");
  EXPECT_EQ(j["claims"][0]["counterexample"]["n"], 3);
  EXPECT_EQ(run_binary("verify thm2 1 10").code, 2);
  EXPECT_EQ(run_binary("verify all 1 10 --below-min").code, 2);
}

TEST(Binary, PrecisionCapFromEnvironment) {
  const Captured c = run_binary("verify stirling 1 20", "PRECISION_CAP_BITS=256");
  EXPECT_EQ(c.code, 0);
  EXPECT_EQ(json::parse(c.out)["precision_cap_bits"], 256);
  EXPECT_EQ(json::parse(run_binary("verify stirling 1 20").out)["precision_cap_bits"], 4096);
}

TEST(Binary, DeterministicOutput) {
  for (const char* args : {"table 60 --format json", "verify all 4 60", "mu 20 7", "product 1 3 1e-20"}) {
    const Captured a = run_binary(args);
    const Captured b = run_binary(args);
    EXPECT_EQ(a.out, b.out) << args;
    EXPECT_FALSE(a.out.empty()) << args;
  }
}

TEST(Binary, ThreadCountDoesNotChangeReport) {
  EXPECT_EQ(run_binary("verify eq9 2 40 --threads 1").out, run_binary("verify eq9 2 40 --threads 4").out);
}

}  // namespace
}  // namespace binpart::cli
