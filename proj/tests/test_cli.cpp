#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <string>

#include <costmc/instance.hpp>

#include "test_support.hpp"

using namespace costmc;
using costmc::testing::contains;
using costmc::testing::run_cli;

namespace {

// Writes an instance file into the test's scratch directory.
std::string write_file(const std::string& name, const std::string& body) {
  const std::string path = std::string(COSTMC_TEST_DIR) + "/" + name;
  std::ofstream out(path);
  out << body;
  return path;
}

}  // namespace

TEST_CASE("recover reproduces the greedy cost of the worked example") {
  const auto result = run_cli("recover --instance greedy-suboptimal --algorithm erhc --d 2");
  CHECK(result.exit_code == 0);
  CHECK(contains(result.output, "total_cost: 32"));
  CHECK(contains(result.output, "entry_count: 12"));
  CHECK(contains(result.output, "exact_recovery: true"));
}

TEST_CASE("text and json reports carry identical values") {
  const auto text = run_cli("recover --instance greedy-suboptimal --algorithm erhc --d 2");
  const auto json = run_cli(
      "recover --instance greedy-suboptimal --algorithm erhc --d 2 --format json");
  CHECK(json.exit_code == 0);
  const auto parsed = nlohmann::json::parse(json.output);
  CHECK(parsed["total_cost"] == "32");
  CHECK(parsed["paper_count"] == 12);
  CHECK(parsed["d"] == 2);
  CHECK(contains(text.output, "total_cost: " + parsed["total_cost"].get<std::string>()));
  CHECK(contains(text.output, "paper_count: " + std::to_string(parsed["paper_count"].get<int>())));
}

TEST_CASE("recover with automatic d reports the count law") {
  const auto result = run_cli(
      "recover --instance greedy-suboptimal --algorithm ercs --d auto --format json");
  CHECK(result.exit_code == 0);
  const auto parsed = nlohmann::json::parse(result.output);
  CHECK(parsed["d_auto"] == true);
  CHECK(parsed["d"] == 2);  // sparsity number 1, plus one
  CHECK(parsed["paper_count"] == 4 * 2 + (4 - 2) * 2);
}

TEST_CASE("flag errors exit with code 2") {
  CHECK(run_cli("recover --instance greedy-suboptimal --algorithm erhc --d 0").exit_code == 2);
  CHECK(run_cli("recover --instance greedy-suboptimal --algorithm nope --d 2").exit_code == 2);
  CHECK(run_cli("recover --instance greedy-suboptimal --algorithm erhc --d 2 --bogus").exit_code ==
        2);
  CHECK(run_cli("recover --algorithm erhc --d 2").exit_code == 2);
  // ercc demands a per-column cost model.
  CHECK(run_cli("recover --instance greedy-suboptimal --algorithm ercc --d 2").exit_code == 2);
}

TEST_CASE("file problems exit with code 1") {
  CHECK(run_cli("recover --instance /missing/file.txt --algorithm erhc --d 2").exit_code == 1);
  const auto bad = write_file("bad.txt", "matrix 2 2\n1 2\n3 oops\n\ncost uniform 1\n");
  CHECK(run_cli("recover --instance " + bad + " --algorithm erhc --d 2").exit_code == 1);
}

TEST_CASE("an insufficient d exits with code 3") {
  const auto result =
      run_cli("recover --instance greedy-suboptimal --algorithm erhc --d 1 --format json");
  CHECK(result.exit_code == 3);
  const auto parsed = nlohmann::json::parse(result.output);
  CHECK(parsed["unsound"] == true);
  CHECK(parsed["exact_recovery"] == false);
}

TEST_CASE("sparsity command on fixtures and files") {
  const auto fixture = run_cli("sparsity --instance greedy-suboptimal");
  CHECK(fixture.exit_code == 0);
  CHECK(contains(fixture.output, "psi: 3"));
  CHECK(contains(fixture.output, "psi_bar: 1"));

  const auto identity = write_file("identity4.txt",
                                   "matrix 4 4\n1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n\n"
                                   "cost uniform 1\n");
  const auto id = run_cli("sparsity --instance " + identity);
  CHECK(id.exit_code == 0);
  CHECK(contains(id.output, "psi_bar: 3"));

  const auto ones = write_file("ones3.txt", "matrix 3 3\n1 1 1\n1 1 1\n1 1 1\n\ncost uniform 1\n");
  const auto rank1 = run_cli("sparsity --instance " + ones + " --of columnspace");
  CHECK(rank1.exit_code == 0);
  CHECK(contains(rank1.output, "psi_bar: 0"));
}

TEST_CASE("sparsity beyond the search cap exits with code 4") {
  std::string body = "matrix 23 1\n";
  for (int i = 0; i < 23; ++i) body += std::to_string(i + 1) + "\n";
  body += "\ncost uniform 1\n";
  const auto big = write_file("big.txt", body);
  CHECK(run_cli("sparsity --instance " + big).exit_code == 4);
}

TEST_CASE("certify prints both costs and the ratio") {
  const auto result = run_cli("certify --instance greedy-suboptimal --d 2 --format json");
  CHECK(result.exit_code == 0);
  const auto parsed = nlohmann::json::parse(result.output);
  CHECK(parsed["total_cost"] == "32");
  CHECK(parsed["optimal_cost"] == "31");
  CHECK(parsed["ratio"] == "32/31");

  const auto equal = run_cli("certify --instance greedy-optimal --format json");
  const auto equal_json = nlohmann::json::parse(equal.output);
  CHECK(equal_json["ratio"] == "1");

  const auto tight = run_cli("certify --instance tightness --epsilon 0.01 --format json");
  CHECK(tight.exit_code == 0);
  const auto tight_json = nlohmann::json::parse(tight.output);
  const double ratio = tight_json["ratio_decimal"].get<double>();
  CHECK(ratio >= 1.99);
  CHECK(ratio < 2.0);
}

TEST_CASE("repro-paper passes and the corrupted self-test fails") {
  const auto good = run_cli("repro-paper");
  CHECK(good.exit_code == 0);
  CHECK(contains(good.output, "PASS"));
  CHECK(!contains(good.output, "FAIL"));
  CHECK(contains(good.output, "epsilon,greedy_cost,optimal_cost,ratio"));

  const auto bad = run_cli("repro-paper --inject-error");
  CHECK(bad.exit_code == 5);
  CHECK(contains(bad.output, "FAIL"));
}

TEST_CASE("float mode runs through the same CLI surface") {
  const auto result = run_cli(
      "recover --instance greedy-suboptimal --algorithm ercs --d 2 --mode float --format json");
  CHECK(result.exit_code == 0);
  const auto parsed = nlohmann::json::parse(result.output);
  CHECK(parsed["mode"] == "float");
  CHECK(parsed["exact_recovery"] == true);
}

TEST_CASE("tolerance flag is accepted") {
  CHECK(run_cli("recover --instance greedy-suboptimal --algorithm ercs --d 2 --mode float "
                "--tol 1e-10").exit_code == 0);
}

TEST_CASE("COSTMC_TOL reaches the float-mode independence test") {
  // An absurd tolerance makes every restricted residual look like zero, so
  // nothing enters the basis and the recovery misses.
  const auto result = run_cli(
      "recover --instance greedy-suboptimal --algorithm ercs --d 2 --mode float",
      "COSTMC_TOL=0.9");
  CHECK(result.exit_code == 3);
}

TEST_CASE("ercc runs column-ordered recovery on per-column instances") {
  const auto path = write_file("percolumn.txt",
                               "matrix 4 4\n"
                               "1 1 2 3\n1 2 3 4\n1 3 4 5\n1 4 5 6\n\n"
                               "cost percolumn\n4 3 2 1\n");
  const auto result = run_cli("recover --instance " + path +
                              " --algorithm ercc --d 2 --format json");
  CHECK(result.exit_code == 0);
  const auto parsed = nlohmann::json::parse(result.output);
  CHECK(parsed["columns_selected"] == nlohmann::json::array({2, 3}));
  CHECK(parsed["exact_recovery"] == true);
}
