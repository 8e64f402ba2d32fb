#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "arith_tqft/cli.hpp"

using namespace arith_tqft;
using Json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

Run run_binary(const std::vector<std::string>& args) {
  const auto dir = std::filesystem::temp_directory_path() / ("arith_tqft_cli_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  std::string cmd = quote(ARITH_TQFT_CLI_PATH);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " >" + quote((dir / "out").string()) + " 2>" + quote((dir / "err").string());
  const int status = std::system(cmd.c_str());
  Run r{WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(dir / "out"), slurp(dir / "err")};
  std::filesystem::remove_all(dir);
  return r;
}

Json first_line(const std::string& s) { return Json::parse(s.substr(0, s.find('\n'))); }

}  // namespace

TEST(Cli, HomCount) {
  const auto r = run({"homcount", "--group", "named:cyclic:3", "--n", "1", "--r", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = first_line(r.out);
  EXPECT_EQ(j["hom_count"], 9);
  EXPECT_EQ(j["epi_count"], 8);
  EXPECT_EQ(j["seed"], kDixonSeed);
  EXPECT_TRUE(r.err.empty());
}

TEST(Cli, HomCountVerify) {
  const auto r = run({"homcount", "--group", "named:heisenberg:3", "--n", "1", "--r", "inf", "--verify"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = first_line(r.out);
  EXPECT_EQ(j["hom_count"], 297);
  EXPECT_EQ(j["verified"], true);
  const auto f = run({"homcount", "--group", "named:cyclic:3", "--free", "2"});
  EXPECT_EQ(first_line(f.out)["hom_count"], 9);
}

TEST(Cli, Extensions) {
  auto j = first_line(run({"extensions", "--group", "named:cyclic:3", "--degree", "2", "--r", "1"}).out);
  EXPECT_EQ(j["extensions"], 40);
  j = first_line(run({"extensions", "--group", "named:cyclic:3", "--free", "2"}).out);
  EXPECT_EQ(j["extensions"], 4);
}

TEST(Cli, Evaluate) {
  const auto r = run({"evaluate", "--dsl", "cap; tor(inf); tor(inf); tor(inf); cup", "--algebra", "universal"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(first_line(r.out)["scalar"], "2h^2+8t");
  const auto d = first_line(run({"evaluate", "--dsl", "cap ; tor(inf) ; cup", "--algebra", "dw-exact"}).out);
  EXPECT_EQ(d["scalar"], "3");
  const auto m = first_line(run({"evaluate", "--dsl", "cap ; tor(inf) ; cup", "--algebra", "dw", "--group", "named:heisenberg:3"}).out);
  EXPECT_EQ(m["scalar"], "11");
}

TEST(Cli, EvaluateReadsFiles) {
  const auto path = std::filesystem::temp_directory_path() / "arith_tqft_genus1.dsl";
  std::ofstream(path) << "cap ;\n tor(inf) ;\n cup\n";
  const auto r = run({"evaluate", "--dsl", path.string()});
  std::filesystem::remove(path);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(first_line(r.out)["scalar"], "2");
}

TEST(Cli, Normalize) {
  const auto r = run({"normalize", "--dsl", "d ; tw(4 mod 3^4), tw(10 mod 3^4) ; m"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = first_line(r.out);
  EXPECT_EQ(j["components"][0]["g"], 1);
  EXPECT_EQ(j["components"][0]["r"], 1);
  EXPECT_TRUE(j.contains("normal_form"));
  const std::string nf = j["normal_form"].get<std::string>();
  const auto again = first_line(run({"normalize", "--dsl", nf}).out);
  EXPECT_EQ(again["components"][0]["g"], 1);
  EXPECT_EQ(again["components"][0]["r"], 1);
  EXPECT_EQ(again["components"][0]["twists"], j["components"][0]["twists"]);
  EXPECT_TRUE(diagrams_equal(parse_diagram("d ; tw(4 mod 3^4), tw(10 mod 3^4) ; m"), parse_diagram(nf)));
}

TEST(Cli, AxiomsAndChartab) {
  const auto u = first_line(run({"axioms", "--algebra", "universal", "--levels", "1..3"}).out);
  EXPECT_EQ(u["report"]["all_passed"], true);
  const auto d = run({"axioms", "--algebra", "dw", "--group", "named:cyclic:9", "--levels", "1..3"});
  ASSERT_EQ(d.code, 0) << d.err;
  std::istringstream lines(d.out);
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    EXPECT_EQ(Json::parse(line)["report"]["all_passed"], true);
    ++n;
  }
  EXPECT_EQ(n, 2);
  const auto t = first_line(run({"chartab", "--group", "named:cyclic:3"}).out);
  EXPECT_EQ(t["l"], 7);
  EXPECT_EQ(t["rows"].size(), 3u);
  const auto t2 = first_line(run({"chartab", "--group", "named:cyclic:3", "--prime-index", "1"}).out);
  EXPECT_EQ(t2["l"], 13);
}

TEST(Cli, Oracle) {
  const auto r = run({"oracle", "--task", R"({"group":"named:gl2:3","n":1,"r":1,"p_image":true})"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(first_line(r.out)["count"], 33);
}

TEST(Cli, ValidationErrorsExitOne) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"homcount", "--group", "named:bogus:3"},
           {"homcount", "--group", "named:cyclic:3", "--r", "zero"},
           {"homcount", "--group", "named:cyclic:3", "--n", "0"},
           {"extensions", "--group", "named:cyclic:3", "--degree", "3"},
           {"normalize", "--dsl", "d ; id, m"},
           {"evaluate", "--dsl", "m", "--algebra", "nope"},
           {"frobnicate"},
           {}}) {
    const auto r = run(args);
    EXPECT_EQ(r.code, 1);
    EXPECT_TRUE(r.out.empty());
    const auto e = first_line(r.err);
    EXPECT_TRUE(e.contains("error"));
    EXPECT_EQ(e["exit"], 1);
  }
}

TEST(Cli, ComputationErrorsExitTwo) {
  const auto r = run({"oracle", "--task", R"({"group":"named:heisenberg:3","n":2,"r":1,"budget":10})"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(first_line(r.err)["error"], "budget-exceeded");
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> args{"chartab", "--group", "named:heisenberg:3"};
  EXPECT_EQ(run(args).out, run(args).out);
}

TEST(CliBinary, StreamsAndExitCodes) {
  auto r = run_binary({"homcount", "--group", "named:cyclic:3", "--n", "1", "--r", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(first_line(r.out)["hom_count"], 9);
  EXPECT_TRUE(r.err.empty());
  r = run_binary({"homcount", "--group", "named:nothing:3"});
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(first_line(r.err)["error"], "invalid-group-spec");
  ::setenv("ARITH_TQFT_BUDGET", "5", 1);
  r = run_binary({"oracle", "--task", R"({"group":"named:cyclic:9","n":1,"r":1})"});
  ::unsetenv("ARITH_TQFT_BUDGET");
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(first_line(r.err)["error"], "budget-exceeded");
}
