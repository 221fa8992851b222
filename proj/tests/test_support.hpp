#pragma once

// Test-only helpers. The oracles here intentionally take different code paths
// than the implementations they check.

#include <algorithm>
#include <array>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include <costmc/index_set.hpp>
#include <costmc/linalg.hpp>
#include <costmc/scalar.hpp>

namespace costmc::testing {

// Level-by-level zero-support scan: walk support sizes from m-1 downward and
// return the first size with a rank-deficient row restriction, together with
// the lexicographically smallest such support. Rank checks go through the
// whole-matrix rank routine rather than the incremental search state.
template <class S>
std::pair<Index, IndexSet> naive_zero_support(const DenseMatrix<S>& basis,
                                              const Tolerance& tol = {}) {
  const Index m = basis.rows();
  const Index r = basis.cols();
  for (Index size = m - 1; size >= 0; --size) {
    bool found = false;
    IndexSet support;
    for_each_combination(m, size, [&](const std::vector<Index>& s) {
      if (found) return;
      IndexSet candidate = IndexSet::of(s, m);
      if (rank(rows_of(basis, candidate), tol) < r) {
        found = true;
        support = std::move(candidate);
      }
    });
    if (found) return {size, support};
  }
  return {0, IndexSet(m)};
}

// Residual of x against the span of the columns of b via the normal
// equations, solved with a pivoted LU (independent of the SVD route).
inline double residual_by_normal_equations(const Eigen::MatrixXd& b, const Eigen::VectorXd& x) {
  if (b.cols() == 0) return x.norm();
  const Eigen::MatrixXd gram = b.transpose() * b;
  const Eigen::VectorXd c = gram.fullPivLu().solve(b.transpose() * x);
  return (x - b * c).norm();
}

#ifdef COSTMC_CLI_PATH
struct CliResult {
  int exit_code = -1;
  std::string output;
};

inline CliResult run_cli(const std::string& args, const std::string& env = "") {
  const std::string command =
      (env.empty() ? "" : env + " ") + std::string(COSTMC_CLI_PATH) + " " + args + " 2>&1";
  CliResult result;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return result;
  std::array<char, 4096> buffer;
  std::size_t got = 0;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
    result.output.append(buffer.data(), got);
  const int status = pclose(pipe);
  result.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  return result;
}
#endif  // COSTMC_CLI_PATH

inline bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace costmc::testing
