#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "costmc/cost_model.hpp"
#include "costmc/errors.hpp"
#include "costmc/index_set.hpp"
#include "costmc/linalg.hpp"

namespace costmc {

// Exhaustive plan enumeration is combinatorial in both dimensions.
inline constexpr Index kBruteForceDimensionCap = 14;

// A two-stage observation plan: rows observed in full, then a column basis
// observed in full.
template <class S>
struct TwoStagePlan {
  IndexSet rows;
  IndexSet cols;
  S cost{0};
};

// chi(M_{R:}) + chi(M_{:C}) - chi(M_{R:C}); the overlap block is paid once.
template <class S>
S two_stage_cost(const CostModel<S>& model, const IndexSet& rows, const IndexSet& cols) {
  return submatrix_cost(model, rows, IndexSet::all(cols.universe())) +
         submatrix_cost(model, IndexSet::all(rows.universe()), cols) -
         submatrix_cost(model, rows, cols);
}

// Certification oracle: enumerates every row set of size d and every column
// basis C with rank(M_{R:C}) = r, and returns a cheapest plan, ties broken
// lexicographically by (R, C). Uses the ground-truth matrix deliberately;
// this is a baseline for optimality claims, not an observation algorithm.
template <class S>
TwoStagePlan<S> brute_force_optimal(const DenseMatrix<S>& hidden, const CostModel<S>& model,
                                    Index d, const Tolerance& tol = {}) {
  const Index m = hidden.rows();
  const Index n = hidden.cols();
  if (m > kBruteForceDimensionCap || n > kBruteForceDimensionCap)
    throw DimensionCapExceeded("brute force capped at " +
                               std::to_string(kBruteForceDimensionCap) + " rows/columns");
  if (d < 1 || d > m) throw InvalidD("d must lie in [1, m]; got " + std::to_string(d));
  model.validate_shape(m, n);

  const Index r = rank(hidden, tol);

  // Column bases of the hidden matrix, with their full-column costs.
  std::vector<std::pair<IndexSet, S>> bases;
  for_each_combination(n, r, [&](const std::vector<Index>& c) {
    IndexSet cols = IndexSet::of(c, n);
    if (rank(cols_of(hidden, cols), tol) == r)
      bases.emplace_back(cols, submatrix_cost(model, IndexSet::all(m), cols));
  });

  std::optional<TwoStagePlan<S>> best;
  for_each_combination(m, d, [&](const std::vector<Index>& rset) {
    const IndexSet rows = IndexSet::of(rset, m);
    const S row_cost = submatrix_cost(model, rows, IndexSet::all(n));
    for (const auto& [cols, col_cost] : bases) {
      const S cost = row_cost + col_cost - submatrix_cost(model, rows, cols);
      if (best && !(cost < best->cost)) continue;
      if (rank(submatrix_of(hidden, rows, cols), tol) != r) continue;
      best = TwoStagePlan<S>{rows, cols, cost};
    }
  });
  if (!best)
    throw NoFeasiblePlan("no row set of size " + std::to_string(d) +
                         " keeps any column basis at full rank");
  return *best;
}

template <class S>
S optimality_ratio(const S& greedy_cost, const S& optimal_cost) {
  if (optimal_cost == S(0)) throw DivisionByZero("optimal cost is zero");
  return greedy_cost / optimal_cost;
}

}  // namespace costmc
