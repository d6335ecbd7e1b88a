#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>

#include "gtc/cli/commands.hpp"

using namespace gtc;
using namespace gtc::cli;
namespace fs = std::filesystem;

namespace {

const fs::path kCorpus = GTC_CORPUS_DIR;

RunResult run(const std::string& command, std::vector<std::string> inputs, LocalizerSpec loc = LocalizerSpec::w1()) {
  RunConfig c;
  c.command = command;
  for (const auto& i : inputs) c.inputs.push_back(kCorpus / i);
  c.localizer = loc;
  return dispatch(c);
}

std::string answer_of(const RunResult& r, const std::string& check) {
  for (const auto& x : r.report["results"]) {
    if (x["check"] == check) return x["answer"];
  }
  return "missing";
}

}  // namespace

TEST(Cli, HierarchyOfPoint) {
  auto r = run("check hierarchy", {"e.cat"});
  EXPECT_EQ(answer_of(r, "aspherical"), "yes");
  EXPECT_EQ(answer_of(r, "local_test"), "no");
  EXPECT_EQ(r.exit_code, kFail);
  EXPECT_EQ(r.report["status"], "fail");
}

TEST(Cli, HomologyOfBG2) {
  auto r = run("homology", {"bg2.cat"});
  EXPECT_EQ(r.exit_code, kPass);
  EXPECT_EQ(r.report["results"][0]["result"]["groups"]["1"]["torsion"], Json::array({2}));
}

TEST(Cli, IntervalOfIStar) {
  auto r = run("check interval", {"istar_delta1.int"});
  EXPECT_EQ(answer_of(r, "strongly_separating"), "yes");
  EXPECT_EQ(answer_of(r, "multiplicative"), "yes");
  EXPECT_EQ(r.exit_code, kPass);
}

TEST(Cli, W1Verdicts) {
  EXPECT_EQ(run("w1", {"delta1_to_e.fun"}).exit_code, kPass);
  EXPECT_EQ(run("w1", {"bg2_to_e.fun"}).exit_code, kFail);
  EXPECT_EQ(run("w1", {"idempotent_to_e.fun"}).exit_code, kPass);
  EXPECT_EQ(run("w1", {"free_iso_to_e.fun"}).exit_code, kPass);
  EXPECT_EQ(run("w1", {"bg3.cat"}).exit_code, kFail);
}

TEST(Cli, UndecidedMapsToTwo) {
  // A nerve cap of 1 makes the homology criterion unavailable.
  RunConfig c;
  c.command = "homology";
  c.inputs = {kCorpus / "bg2.cat"};
  c.cap = 1;
  auto r = dispatch(c);
  EXPECT_EQ(r.exit_code, kUndecided);
  EXPECT_EQ(r.report["results"][0]["answer"], "unknown");
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(run("homology", {"missing.cat"}).exit_code, kInputError);
  EXPECT_EQ(run("homology", {"rep0_delta1.psh"}).exit_code, kInputError);
  EXPECT_EQ(run("no-such-command", {"e.cat"}).exit_code, kInputError);
  EXPECT_EQ(run("transpose", {"rep0_delta1.psh"}).exit_code, kInputError);
  auto r = run("homology", {"missing.cat"});
  EXPECT_EQ(r.report["error"]["code"], "ParseError");
}

TEST(Cli, EveryCommandRuns) {
  const std::map<std::string, std::vector<std::string>> inputs{
      {"validate", {"e.cat"}},
      {"elements", {"const_bg2_e.psh"}},
      {"grothendieck", {"two_to_one_delta1.psh"}},
      {"nerve", {"delta2.cat"}},
      {"homology", {"delta2.cat"}},
      {"pi1", {"bg3.cat"}},
      {"w1", {"delta1_to_e.fun"}},
      {"istar", {"slice_delta1.dgm", "delta1.cat"}},
      {"counit", {"slice_delta1.dgm", "delta1.cat"}},
      {"transpose", {"rep0_delta1.psh", "delta1.cat"}},
      {"sieve", {"two_points_e.int"}},
      {"check aspherical", {"meet3.cat"}},
      {"check morphism", {"delta1_to_e.fun"}},
      {"check hierarchy", {"delta1.cat"}},
      {"check weak-test", {"delta1.cat"}},
      {"check interval", {"delta1_max.int"}},
      {"check iso-suite", {"two_to_one_delta1.psh"}},
      {"check thomason", {"const_j_to_terminal.mor"}},
  };
  for (const auto& name : commands()) {
    ASSERT_TRUE(inputs.count(name)) << name;
    auto r = run(name, inputs.at(name));
    EXPECT_NE(r.exit_code, kInputError) << name << " " << r.report.dump();
    EXPECT_FALSE(r.report["results"].empty()) << name;
  }
}

TEST(Cli, SieveRejectsIsomorphicEndpoints) {
  auto r = run("sieve", {"iso_points_e.int"});
  EXPECT_EQ(r.exit_code, kFail);
  EXPECT_EQ(r.report["results"][0]["result"]["error"], "NotStronglySeparating");
}

TEST(Cli, WeakTestWithCatalog) {
  RunConfig c;
  c.command = "check weak-test";
  c.inputs = {kCorpus / "e.cat"};
  c.catalog = kCorpus / "e_delta1.catalog";
  auto r = dispatch(c);
  EXPECT_EQ(r.exit_code, kFail);
  EXPECT_EQ(r.report["results"][0]["result"]["catalog"], "e_delta1");
  EXPECT_EQ(r.report["inputs"].size(), 2u);
}

TEST(Cli, ReportsAreDeterministic) {
  for (const auto& [cmd, in] : std::vector<std::pair<std::string, std::string>>{
           {"check hierarchy", "delta1.cat"}, {"homology", "bg3.cat"}, {"check iso-suite", "two_to_one_delta1.psh"}}) {
    auto a = run(cmd, {in});
    auto b = run(cmd, {in});
    EXPECT_TRUE(a.report.contains("timings"));
    EXPECT_EQ(without_timings(a.report).dump(), without_timings(b.report).dump());
  }
}

TEST(Cli, ReportShape) {
  auto r = run("check aspherical", {"delta1.cat"});
  EXPECT_EQ(r.report["schema"], 1);
  EXPECT_EQ(r.report["tool"]["name"], "gtc");
  EXPECT_EQ(r.report["inputs"][0]["sha256"].get<std::string>().size(), 64u);
  EXPECT_EQ(r.report["exit_code"], r.exit_code);
  const std::string text = render_text(r.report);
  EXPECT_NE(text.find("aspherical: yes"), std::string::npos);
  EXPECT_NE(text.find("status pass (exit 0)"), std::string::npos);
}

TEST(Cli, Sha256KnownVector) {
  const fs::path tmp = fs::temp_directory_path() / "gtc_sha_abc.txt";
  {
    std::ofstream out(tmp, std::ios::binary);
    out << "abc";
  }
  EXPECT_EQ(sha256_file(tmp), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  fs::remove(tmp);
}
