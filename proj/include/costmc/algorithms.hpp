#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "costmc/errors.hpp"
#include "costmc/index_set.hpp"
#include "costmc/linalg.hpp"
#include "costmc/oracle.hpp"
#include "costmc/rng.hpp"
#include "costmc/scalar.hpp"

namespace costmc {

// How the first stage picks its row set.
struct SeededRandomRows {
  std::uint64_t seed = 0;
};
struct FirstRows {};
struct CheapestRows {};
using RowPolicy = std::variant<SeededRandomRows, FirstRows, CheapestRows>;

template <class S>
struct RecoveryResult {
  DenseMatrix<S> recovered;
  IndexSet rows_selected;
  IndexSet independent_columns;
  Ledger<S> ledger;
  Index learned_rank = 0;
  Index d = 0;
  // Set when the run itself noticed an inconsistency (a choice of d below the
  // column-space sparsity threshold can also fail silently; only a harness
  // holding the ground truth can detect that case).
  bool unsound = false;
  std::vector<Index> scan_order;

  // Observation count under the per-column accounting: m entries for each
  // independent column plus d for every remaining column. Equal to the
  // ledger's distinct-entry count because a fully observed column re-uses
  // the d entries already paid for in the row stage.
  Index paper_count() const {
    const Index m = recovered.rows();
    const Index n = recovered.cols();
    return m * learned_rank + (n - learned_rank) * d;
  }
};

namespace detail {

// Rows with the d smallest per-row cost totals, ties to the lower index.
template <class S>
std::vector<Index> cheapest_rows(const CostModel<S>& model, Index m, Index n, Index d) {
  std::vector<std::pair<S, Index>> totals;
  totals.reserve(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) totals.emplace_back(model.row_total(i, n), i);
  std::sort(totals.begin(), totals.end());
  std::vector<Index> rows(static_cast<std::size_t>(d));
  for (Index k = 0; k < d; ++k) rows[static_cast<std::size_t>(k)] = totals[static_cast<std::size_t>(k)].second;
  return rows;
}

template <class S>
IndexSet select_rows(const ObservationOracle<S>& oracle, Index d, const RowPolicy& policy) {
  const Index m = oracle.rows();
  std::vector<Index> rows;
  if (const auto* random = std::get_if<SeededRandomRows>(&policy)) {
    rows = SeededRng(random->seed).sample_without_replacement(m, d);
  } else if (std::holds_alternative<FirstRows>(policy)) {
    rows.resize(static_cast<std::size_t>(d));
    for (Index i = 0; i < d; ++i) rows[static_cast<std::size_t>(i)] = i;
  } else {
    rows = cheapest_rows(oracle.model(), m, oracle.cols(), d);
  }
  return IndexSet::of(std::move(rows), m);
}

// Shared second stage: observe the selected rows in full, then walk the
// columns in the given order. A column whose restricted residual is nonzero
// is observed completely and joins the basis; every other column is completed
// by back-projection against the restricted basis.
template <class S>
RecoveryResult<S> two_stage_scan(ObservationOracle<S>& oracle, IndexSet rows,
                                 std::vector<Index> column_order, const Tolerance& tol) {
  const Index m = oracle.rows();
  const Index n = oracle.cols();
  const DenseMatrix<S> row_block = oracle.observe_rows(rows);

  RecoveryResult<S> result;
  result.recovered = DenseMatrix<S>::Zero(m, n);
  result.d = rows.size();

  OrthoBasis<S> basis(m);
  std::vector<Index> independent;
  for (const Index j : column_order) {
    const DenseVector<S> x = row_block.col(j);
    const S residual_sq = restricted_residual_sqnorm(basis, rows, x, tol);
    bool is_independent;
    if constexpr (is_exact_scalar_v<S>) {
      is_independent = residual_sq != S(0);
    } else {
      is_independent = std::sqrt(residual_sq) > tol.tau * (1.0 + std::sqrt(x.squaredNorm()));
    }
    if (is_independent) {
      const DenseVector<S> column = oracle.observe_column(j);
      result.recovered.col(j) = column;
      try {
        basis = basis.extended(column, tol);
        independent.push_back(j);
      } catch (const DegenerateVector&) {
        // The full column contradicts the restricted residual test.
        result.unsound = true;
      }
    } else {
      try {
        result.recovered.col(j) = back_project(basis, rows, x, tol);
      } catch (const RankDeficientRestriction&) {
        result.unsound = true;
        const auto ls = solve_least_squares(basis.restricted(rows), x, tol);
        result.recovered.col(j) = basis.vectors() * ls.coefficients;
      }
    }
  }

  result.rows_selected = std::move(rows);
  result.independent_columns = IndexSet::of(std::move(independent), n);
  result.learned_rank = result.independent_columns.size();
  result.ledger = oracle.ledger();
  result.scan_order = std::move(column_order);
  return result;
}

inline std::vector<Index> identity_order(Index n) {
  std::vector<Index> order(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) order[static_cast<std::size_t>(j)] = j;
  return order;
}

template <class S>
std::vector<Index> order_by_cost(std::vector<std::pair<S, Index>> keyed) {
  std::sort(keyed.begin(), keyed.end());
  std::vector<Index> order(keyed.size());
  for (std::size_t k = 0; k < keyed.size(); ++k) order[k] = keyed[k].second;
  return order;
}

}  // namespace detail

// Exact recovery with column sparsity: observe d entries of every column (the
// selected rows) and decide membership in the learned subspace from the
// restriction alone. Recovery is exact whenever d exceeds the column-space
// sparsity number.
template <class S>
RecoveryResult<S> ercs(ObservationOracle<S>& oracle, Index d,
                       const RowPolicy& policy = SeededRandomRows{}, const Tolerance& tol = {}) {
  if (d < 1 || d > oracle.rows())
    throw InvalidD("d must lie in [1, m]; got " + std::to_string(d));
  return detail::two_stage_scan(oracle, detail::select_rows(oracle, d, policy),
                                detail::identity_order(oracle.cols()), tol);
}

// Column-cost-ordered variant for per-column cost models: identical scan, but
// columns are visited in non-decreasing cost order (ties to the lower index),
// which makes the fully observed column set a minimum-cost basis.
template <class S>
RecoveryResult<S> ercs_column_ordered(ObservationOracle<S>& oracle, Index d,
                                      const DenseVector<S>& column_costs,
                                      const RowPolicy& policy = SeededRandomRows{},
                                      const Tolerance& tol = {}) {
  if (d < 1 || d > oracle.rows())
    throw InvalidD("d must lie in [1, m]; got " + std::to_string(d));
  if (column_costs.size() != oracle.cols())
    throw LengthMismatch("column cost vector length does not match column count");
  if (oracle.model().kind() != CostModel<S>::Kind::PerColumn)
    throw ModelMismatch("column-ordered scan requires a per-column cost model");
  if (oracle.model().column_costs() != column_costs)
    throw ModelMismatch("column cost vector disagrees with the oracle's cost model");

  std::vector<std::pair<S, Index>> keyed;
  keyed.reserve(static_cast<std::size_t>(oracle.cols()));
  for (Index j = 0; j < oracle.cols(); ++j) keyed.emplace_back(column_costs(j), j);
  return detail::two_stage_scan(oracle, detail::select_rows(oracle, d, policy),
                                detail::order_by_cost(std::move(keyed)), tol);
}

// Exact recovery with heterogeneous cost: pick the d cheapest rows by row
// totals, then scan columns by their residual cost over the unobserved rows.
template <class S>
RecoveryResult<S> erhc(ObservationOracle<S>& oracle, Index d, const Tolerance& tol = {}) {
  if (d < 1 || d > oracle.rows())
    throw InvalidD("d must lie in [1, m]; got " + std::to_string(d));
  if (oracle.model().kind() != CostModel<S>::Kind::PerEntry)
    throw ModelMismatch("heterogeneous-cost recovery requires a per-entry cost model");

  const Index n = oracle.cols();
  const IndexSet rows = IndexSet::of(
      detail::cheapest_rows(oracle.model(), oracle.rows(), n, d), oracle.rows());

  std::vector<std::pair<S, Index>> keyed;
  keyed.reserve(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j)
    keyed.emplace_back(oracle.model().column_total_excluding(j, rows), j);
  return detail::two_stage_scan(oracle, rows, detail::order_by_cost(std::move(keyed)), tol);
}

}  // namespace costmc
