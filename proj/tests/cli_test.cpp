// Drives the built trsw binary; the path comes from the build system.
#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>

#include "trsw/format.hpp"
#include "trsw/random.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
};

Result run(const std::string& args) {
  std::string cmd = std::string(TRSW_BINARY) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("trsw_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
    write("succ.tm", trsw::write_tm(trsw::successor_machine()));
    write("rel.tm", trsw::write_tm(trsw::rel_succ_machine()));
    write("loop.trs", "(RULES\n  a -> a\n)\n");
    write("fork.trs", "(RULES\n  a -> b\n  a -> c\n)\n");
    write("bad.trs", "(VAR x)\n(RULES\n  f(x) -> g(x\n)\n");
  }
  void TearDown() override { fs::remove_all(dir_); }

  void write(const std::string& name, const std::string& text) { std::ofstream(dir_ / name) << text; }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, HaltingMachineSnBoundMatchesRun) {
  Result tm = run("tm run " + path("succ.tm") + " --config \"q0 S S 0\" --json");
  ASSERT_EQ(tm.code, 0) << tm.out;
  auto steps = nlohmann::json::parse(tm.out)["steps"].get<std::size_t>();
  ASSERT_EQ(run("tm compile " + path("succ.tm") + " --encoding tmtrs -o " + path("succ.trs")).code, 0);
  Result sn = run("trs check sn " + path("succ.trs") + " --term \"q0(t,S(S(0(t))))\" --fuel 100 --json");
  ASSERT_EQ(sn.code, 0) << sn.out;
  auto doc = nlohmann::json::parse(sn.out);
  EXPECT_EQ(doc["verdict"], "Confirmed");
  EXPECT_EQ(doc["bound"].get<std::size_t>(), steps);
  EXPECT_TRUE(doc.contains("fuel_used"));
  EXPECT_TRUE(doc.contains("evidence"));
}

TEST_F(Cli, DpEncodingCarriesDesignatedTerm) {
  ASSERT_EQ(run("tm compile " + path("rel.tm") + " --encoding dp -o " + path("dp.trs")).code, 0);
  std::ifstream in(path("dp.trs"));
  std::string first;
  std::getline(in, first);
  EXPECT_EQ(first, "# TERM: run(T,pickn,pickn)");
}

TEST_F(Cli, DependencyPairsKeepMarkedStartTerm) {
  ASSERT_EQ(run("tm compile " + path("rel.tm") + " --encoding dp -o " + path("dp.trs")).code, 0);
  ASSERT_EQ(run("trs dependency-pairs " + path("dp.trs") + " --top-out " + path("top.trs")).code, 0);
  std::ifstream in(path("top.trs"));
  std::string first;
  std::getline(in, first);
  EXPECT_EQ(first, "# TERM: run♯(T,pickn,pickn)");
}

TEST_F(Cli, CompileRoundTripIsByteIdentical) {
  ASSERT_EQ(run("tm compile " + path("rel.tm") + " --encoding confluence -o " + path("c.trs")).code, 0);
  std::ifstream in(path("c.trs"));
  std::string text((std::istreambuf_iterator<char>(in)), {});
  EXPECT_EQ(trsw::write_trs(trsw::parse_trs(text)), text);
}

TEST_F(Cli, WcrGadgetHasOneCriticalPair) {
  ASSERT_EQ(run("tm compile " + path("succ.tm") + " --encoding wcr -o " + path("wcr.trs")).code, 0);
  Result r = run("trs critical-pairs " + path("wcr.trs") + " --json");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["critical_pairs"].size(), 1u);
}

TEST_F(Cli, ExitCodesFollowVerdicts) {
  EXPECT_EQ(run("trs check sn " + path("loop.trs") + " --term a").code, 1);
  EXPECT_EQ(run("trs check wcr " + path("fork.trs")).code, 1);
  EXPECT_EQ(run("trs check wn " + path("fork.trs") + " --term a").code, 0);
  ASSERT_EQ(run("tm compile " + path("succ.tm") + " --encoding tmtrs -o " + path("s.trs")).code, 0);
  EXPECT_EQ(run("trs check sn " + path("s.trs") + " --term \"q0(t,S(S(0(t))))\" --fuel 1").code, 2);
  EXPECT_EQ(run("tm run " + path("rel.tm") + " --rel 2 3").code, 0);
  EXPECT_EQ(run("tm run " + path("rel.tm") + " --rel 2 2").code, 1);
}

TEST_F(Cli, InputErrors) {
  Result parse = run("trs check sn " + path("bad.trs"));
  EXPECT_EQ(parse.code, 3);
  EXPECT_NE(parse.out.find("3:"), std::string::npos) << parse.out;
  Result enc = run("tm compile " + path("succ.tm") + " --encoding nope");
  EXPECT_EQ(enc.code, 3);
  EXPECT_NE(enc.out.find("tmtrs"), std::string::npos);
  EXPECT_NE(enc.out.find("grwcr"), std::string::npos);
  EXPECT_EQ(run("trs check sn " + path("missing.trs")).code, 3);
  EXPECT_EQ(run("trs check xx " + path("loop.trs")).code, 3);
}

TEST_F(Cli, VerifyReportsSeed) {
  Result r = run("verify pickn --seed 7 --json");
  ASSERT_EQ(r.code, 0) << r.out;
  auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["seed"].get<std::uint64_t>(), 7u);
  EXPECT_TRUE(doc["results"][0]["pass"].get<bool>());
}
