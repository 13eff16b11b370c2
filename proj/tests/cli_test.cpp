#include <gtest/gtest.h>

#include <json.hpp>

#include "parthad/cli.hpp"

namespace parthad::cli {
namespace {

std::string data(const std::string& name) { return std::string(PARTHAD_DATA_DIR) + "/" + name; }

RunResult run_args(std::initializer_list<std::string> args) { return run(std::vector<std::string>(args)); }

TEST(Cli, Count) {
  const auto r = run_args({"count", "4"});
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.report, "209\n");
  EXPECT_EQ(run_args({"count", "30"}).report, count_all(30).str() + "\n");
}

TEST(Cli, CompleteRowF3) {
  const auto r = run_args({"complete-row", data("f3_top2.phm")});
  EXPECT_EQ(r.exit_code, 0);
  // -i (1, w^2, w) = exp(2 pi i (3/4, 5/12, 1/12))
  EXPECT_EQ(r.report, "phm v1\n3 3\n1 1 1\n1 1/3 2/3\n-i 5/12 1/12\n");
  const auto h = parse_phm(r.report);
  EXPECT_TRUE(is_partial_hadamard(h).ok);
}

TEST(Cli, CheckNamesOffendingRows) {
  const auto r = run_args({"check", data("not_orthogonal.phm")});
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.report.find("worst_pair: rows 1 and 2"), std::string::npos) << r.report;
  const auto j = nlohmann::json::parse(run_args({"--json", "check", data("not_orthogonal.phm")}).report);
  EXPECT_FALSE(j["partial_hadamard"].get<bool>());
  EXPECT_EQ(j["worst_pair"], nlohmann::json::array({1, 2}));
  EXPECT_EQ(run_args({"check", data("f5.phm")}).exit_code, 0);
}

TEST(Cli, FourierMatchesShippedFiles) {
  for (int n = 2; n <= 6; ++n) {
    const auto r = run_args({"fourier", std::to_string(n)});
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.report, parthad::detail::read_file(data("f" + std::to_string(n) + ".phm"))) << n;
  }
  EXPECT_EQ(run_args({"fourier", "2", "2"}).report, run_args({"tensor", data("f2.phm"), data("f2.phm")}).report);
}

TEST(Cli, GridReportsSquareAndSemigroup) {
  const auto r = run_args({"grid", data("m2_family.phm")});
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.report.find("commuting: yes"), std::string::npos);
  EXPECT_NE(r.report.find("pls v1\n2 4\n1 2\n3 1\n"), std::string::npos) << r.report;
  EXPECT_NE(r.report.find("semigroup 2 6\n"), std::string::npos) << r.report;
  const auto j = nlohmann::json::parse(run_args({"--json", "grid", data("f3.phm")}).report);
  EXPECT_TRUE(j["magic"].get<bool>());
  EXPECT_EQ(j["semigroup_order"].get<int>(), 3);
}

TEST(Cli, CompleteGrid) {
  auto r = run_args({"complete-grid", data("pq_counterexample.pgrid")});
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.diagnostics.find("NotCompletable"), std::string::npos);
  r = run_args({"complete-grid", "--method", "2x2", data("pq_counterexample.pgrid")});
  EXPECT_EQ(r.exit_code, 0);
  const auto g = parse_pgrid(r.report);
  EXPECT_EQ(g.size(), 4u);
  EXPECT_TRUE(check_grid(g).magic);
  r = run_args({"complete-grid", "--method", "commuting", "--size", "4", data("pq_counterexample.pgrid")});
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_TRUE(check_grid(parse_pgrid(r.report)).magic);
}

TEST(Cli, Criteria) {
  auto r = run_args({"criteria", data("f3_top2.phm")});
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.report.find("agree: yes"), std::string::npos);
  r = run_args({"criteria", data("f3.phm")});
  EXPECT_EQ(r.exit_code, 2);  // not (N-1) x N
}

TEST(Cli, SemigroupAndEnumerate) {
  auto r = run_args({"semigroup", data("pre_latin.pls")});
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.report.substr(0, 14), "semigroup 2 6\n");
  r = run_args({"enumerate", "2"});
  EXPECT_EQ(r.report, "2: _ _\n2: _ 1\n2: _ 2\n2: 1 _\n2: 2 _\n2: 1 2\n2: 2 1\n");
  EXPECT_EQ(run_args({"enumerate", "8"}).exit_code, 2);
  EXPECT_EQ(run_args({"--limit", "8", "enumerate", "1"}).exit_code, 0);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_args({}).exit_code, 2);
  EXPECT_EQ(run_args({"count"}).exit_code, 2);
  EXPECT_EQ(run_args({"count", "4", "--bogus"}).exit_code, 2);
  EXPECT_EQ(run_args({"check", data("missing.phm")}).exit_code, 2);
  EXPECT_EQ(run_args({"complete-grid", "--method", "magic", data("pq_counterexample.pgrid")}).exit_code, 2);
  EXPECT_EQ(run_args({"--help"}).exit_code, 0);
}

TEST(Cli, Deterministic) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"--seed", "3", "grid", data("m2_family.phm")},
           {"--json", "complete-grid", "--method", "2x2", data("pq_counterexample.pgrid")},
           {"enumerate", "3"}}) {
    const auto a = run(args), b = run(args);
    EXPECT_EQ(a.report, b.report);
    EXPECT_EQ(a.exit_code, b.exit_code);
  }
}

}  // namespace
}  // namespace parthad::cli
