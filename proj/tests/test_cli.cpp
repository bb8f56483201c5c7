#include <gtest/gtest.h>

#include <cstdio>
#include <json.hpp>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "support.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs the CLI through the shell with `input` on stdin; stderr is discarded.
Run run(const std::string& args, const std::string& input = "") {
  char path[] = "/tmp/hamsub_cli_XXXXXX";
  const int fd = mkstemp(path);
  if (fd < 0) return {};
  FILE* f = fdopen(fd, "w");
  fwrite(input.data(), 1, input.size(), f);
  fclose(f);
  const std::string cmd = "'" HAMSUB_CLI "' " + args + " < " + path + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::remove(path);
  return r;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<nlohmann::json> json_lines(const std::string& s) {
  std::vector<nlohmann::json> out;
  for (const auto& l : lines(s)) out.push_back(nlohmann::json::parse(l));
  return out;
}

}  // namespace

TEST(Cli, FormulasJson) {
  const auto r = run("--json formulas --d 3");
  ASSERT_EQ(r.code, 0);
  const auto js = json_lines(r.out);
  ASSERT_EQ(js.size(), 2u);
  EXPECT_EQ(js[0]["config"]["command"], "formulas");
  EXPECT_EQ(js[1]["complete"], 5);
  EXPECT_EQ(js[1]["glued"], 6);
  EXPECT_EQ(js[1]["bipartite_dd"], 10);
  EXPECT_EQ(js[1]["tuza_floor"], 3);
}

TEST(Cli, CountText) {
  const auto r = run("count", "C~\n");
  ASSERT_EQ(r.code, 0);
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 2u);
  EXPECT_EQ(ls[0].rfind("# config", 0), 0u);
  EXPECT_NE(ls[1].find("c=5"), std::string::npos);
  EXPECT_NE(ls[1].find("weak=16"), std::string::npos);
}

TEST(Cli, CountJsonWithCycles) {
  const auto r = run("--json count --nu", "C~\nBw\n");
  ASSERT_EQ(r.code, 0);
  const auto js = json_lines(r.out);
  ASSERT_EQ(js.size(), 3u);
  EXPECT_EQ(js[1]["c"], 5);
  EXPECT_EQ(js[1]["nu"], 7);
  EXPECT_EQ(js[2]["c"], 1);
}

TEST(Cli, EmptyStreamIsFine) {
  const auto r = run("count");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out).size(), 1u);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("--no-such-flag count").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("count", "C~~\n").code, 2);
  EXPECT_EQ(run("--cap 99 count", "C~\n").code, 2);
}

TEST(Cli, CapExceededExitsTwo) {
  const std::string big = oracle::graph6(30, {});
  EXPECT_EQ(run("count", big + "\n").code, 2);
}

TEST(Cli, GenFeedsCount) {
  const auto g = run("gen --model petersen");
  ASSERT_EQ(g.code, 0);
  const auto ls = lines(g.out);
  ASSERT_EQ(ls.size(), 2u);
  const auto c = run("--json count", ls[1] + "\n");
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(json_lines(c.out)[1]["n"], 10);
}

TEST(Cli, VerifyStrictExitCode) {
  const auto ok = run("--strict verify-komlos --d 3", "C~\n");
  EXPECT_EQ(ok.code, 0);
  // K_5 passes; the star K_{1,3} is filtered out by the degree condition.
  const auto filtered = run("--strict --json verify-komlos --d 3", "D~{\nCF\n");
  EXPECT_EQ(filtered.code, 0);
  EXPECT_EQ(json_lines(filtered.out)[1]["skipped"], 1);
  const auto stab = run("--strict --json verify-stability --d 3", "C~\nD~{\n");
  ASSERT_EQ(stab.code, 1);
  const auto js = json_lines(stab.out);
  EXPECT_EQ(js[1]["excluded"].size(), 1u);
  EXPECT_EQ(js[1]["below_threshold"].size(), 1u);
}

TEST(Cli, ThreadsDoNotChangeOutput) {
  std::string input;
  for (const auto& g : {"C~", "Bw", "D~{", "E~~w", "DQo", "Ch"}) input += std::string(g) + "\n";
  const auto a = run("--json --threads 1 count --nu", input);
  const auto b = run("--json --threads 4 count --nu", input);
  ASSERT_EQ(a.code, 0);
  auto la = lines(a.out), lb = lines(b.out);
  ASSERT_EQ(la.size(), lb.size());
  for (std::size_t i = 1; i < la.size(); ++i) EXPECT_EQ(la[i], lb[i]);
  const auto va = run("--json --threads 1 verify-komlos --d 2", input);
  const auto vb = run("--json --threads 3 verify-komlos --d 2", input);
  EXPECT_EQ(lines(va.out).back(), lines(vb.out).back());
}

TEST(Cli, BuildCycleDense) {
  const auto g = run("gen --model complete --n 300");
  ASSERT_EQ(g.code, 0);
  const auto r = run("--json build-cycle --mode dense --webs 8 --u 0,1,2,3 --h0 2 --h1 2 --h2 2 --h3 4",
                     lines(g.out)[1] + "\n");
  ASSERT_EQ(r.code, 0);
  const auto js = json_lines(r.out);
  EXPECT_TRUE(js.back()["success"].get<bool>());
  EXPECT_EQ(js.back()["intersection"].size(), 4u);
}
