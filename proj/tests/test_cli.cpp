#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "alc/config.hpp"
#include "alc/errors.hpp"
#include "alc/report.hpp"
#include "alc/runner.hpp"

namespace alc {
namespace {

namespace fs = std::filesystem;

const char* kSuite = R"(
[run]
seed = 3

[job n1]
command = solve
p = 7
N = 2
q = 2

[job sym]
command = symmetries
p = 3
N = 2
q = 1 0 0 2

[job mixed]
command = mixed-trace
primes = 3 5
d = 1
)";

std::string config_error(const std::string& text) {
  try {
    parse_config(text, "t.cfg");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

TEST(Config, ParsesJobsInOrder) {
  RunConfig rc = parse_config(kSuite);
  ASSERT_EQ(rc.jobs.size(), 3u);
  EXPECT_EQ(*rc.seed, 3u);
  EXPECT_EQ(rc.jobs[0].name, "n1");
  EXPECT_EQ(rc.jobs[1].integer_metrics(), (std::vector<std::vector<i64>>{{1, 0, 0, 2}, {1, 0, 0, 2}}));
  EXPECT_EQ(rc.jobs[2].primes, (std::vector<i64>{3, 5}));
  EXPECT_FALSE(rc.jobs[0].cyclotomic());
}

TEST(Config, CyclotomicEntries) {
  RunConfig rc = parse_config("[job v]\ncommand = christoffel\nfield = cyclotomic 4\ngauge = 1 3\np = 3\nq = 2 [1,1] [1,1] 3\n");
  ASSERT_EQ(rc.jobs.size(), 1u);
  EXPECT_EQ(rc.jobs[0].m, 4);
  EXPECT_EQ(rc.jobs[0].q[0][1], (std::vector<i64>{1, 1}));
}

TEST(Config, ErrorsNameLineAndField) {
  EXPECT_EQ(config_error("[job a]\ncommand = solve\np = 9\nq = 1\n").rfind("t.cfg:3: p:", 0), 0u);
  EXPECT_EQ(config_error("[job a]\ncommand = solve\np = 3\nq = 1 2 3 4\n").rfind("t.cfg:4: q:", 0), 0u);
  EXPECT_EQ(config_error("[job a]\ncommand = fly\n").rfind("t.cfg:2: command:", 0), 0u);
  EXPECT_NE(config_error("[job a]\ncommand = solve\np = 3\nq = 1\ncolor = red\n"), "");
  EXPECT_NE(config_error("[job a]\ncommand = solve\np = 3\np = 5\nq = 1\n"), "");
  EXPECT_NE(config_error("[job a]\ncommand = conformal\np = 3\nd1 = 2\n"), "");
  EXPECT_NE(config_error("[job a]\ncommand = solve\np = 3\nN = 13\nq = 1\n"), "");
  EXPECT_NE(config_error("[job a]\ncommand = solve\nfield = cyclotomic 4\np = 3\ngauge = 2 1\nq = 1 0 0 1\n"), "");
}

TEST(Runner, OneDimensionalReportValue) {
  RunConfig rc = parse_config(kSuite);
  JobResult r = run_job(rc.jobs[0], 3);
  EXPECT_EQ(r.status, JobStatus::Pass);
  bool found = false;
  for (const auto& [k, v] : r.values)
    if (k == "Lambda_1(1,1)") {
      EXPECT_EQ(v, "8");
      found = true;
    }
  EXPECT_TRUE(found);
}

TEST(Runner, MathErrorsBecomeJobErrors) {
  RunConfig rc = parse_config("[job a]\ncommand = solve\np = 3\nq = 3 0 0 1\n");
  RunResult res = run_config(rc, 1);
  ASSERT_EQ(res.jobs.size(), 1u);
  EXPECT_EQ(res.jobs[0].status, JobStatus::Error);
  EXPECT_FALSE(res.jobs[0].error.empty());
  EXPECT_EQ(res.exit_code, 1);
}

TEST(Report, DeterministicAcrossThreadCounts) {
  RunConfig rc = parse_config(kSuite);
  std::string a = render_report(run_config(rc, 3, 1));
  std::string b = render_report(run_config(rc, 3, 2));
  EXPECT_EQ(a, b);
  auto doc = nlohmann::json::parse(a);
  EXPECT_EQ(doc["summary"]["exit_code"], 0);
  EXPECT_EQ(doc["jobs"].size(), 3u);
  EXPECT_FALSE(doc["jobs"][0].contains("seconds"));
  EXPECT_TRUE(nlohmann::json::parse(render_report(run_config(rc, 3, 1), {true}))["jobs"][0].contains("seconds"));
}

TEST(Report, TruncatesLongExpressions) {
  std::string s = "a";
  for (int i = 0; i < 14; ++i) s += " + a" + std::to_string(i);
  std::string t = truncate_terms(s, 10);
  EXPECT_NE(t, s);
  EXPECT_EQ(t.substr(t.size() - 5), "+ ...");
  EXPECT_EQ(truncate_terms("(a + b + c) - d", 2), "(a + b + c) - d");
}

#ifdef ALC_CLI_PATH
struct Cmd {
  int code;
  std::string out;
};

Cmd run_cli(const std::string& args) {
  std::string cmd = std::string(ALC_CLI_PATH) + " " + args + " 2>/dev/null";
  Cmd r{0, ""};
  FILE* f = popen(cmd.c_str(), "r");
  std::array<char, 4096> buf{};
  size_t k;
  while ((k = fread(buf.data(), 1, buf.size(), f)) > 0) r.out.append(buf.data(), k);
  int st = pclose(f);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

fs::path write_temp(const std::string& name, const std::string& text) {
  fs::path p = fs::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p;
}

TEST(Cli, ExitCodesAndDeterminism) {
  fs::path good = write_temp("alc_cli_good.cfg", kSuite);
  Cmd a = run_cli("--config " + good.string());
  Cmd b = run_cli("--config " + good.string() + " --jobs 3");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("\"Lambda_1(1,1)\": \"8\""), std::string::npos);

  fs::path bad = write_temp("alc_cli_bad.cfg", "[job a]\ncommand = solve\np = 4\nq = 1\n");
  EXPECT_EQ(run_cli("--config " + bad.string()).code, 2);
  EXPECT_EQ(run_cli("--config /nonexistent/x.cfg").code, 2);
  EXPECT_EQ(run_cli("").code, 2);

  fs::path err = write_temp("alc_cli_err.cfg", "[job a]\ncommand = solve\np = 3\nq = 3 0 0 1\n");
  EXPECT_EQ(run_cli("--config " + err.string()).code, 1);

  fs::path out = fs::temp_directory_path() / "alc_cli_report.json";
  EXPECT_EQ(run_cli("--config " + good.string() + " --report " + out.string()).code, 0);
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), a.out);
}
#endif

}  // namespace
}  // namespace alc
