#pragma once

#include <utility>
#include <vector>

#include "costmc/cost_model.hpp"
#include "costmc/errors.hpp"
#include "costmc/index_set.hpp"
#include "costmc/linalg.hpp"

namespace costmc {

// Audit record of what has been revealed and at what cumulative cost.
template <class S>
struct Ledger {
  S total_cost{0};
  Index entry_count = 0;
  std::vector<Index> per_row_counts;
  std::vector<Index> per_column_counts;

  Index rows() const { return static_cast<Index>(per_row_counts.size()); }
  Index cols() const { return static_cast<Index>(per_column_counts.size()); }

  IndexSet rows_fully_observed() const {
    std::vector<Index> full;
    for (Index i = 0; i < rows(); ++i)
      if (per_row_counts[static_cast<std::size_t>(i)] == cols()) full.push_back(i);
    return IndexSet::of(std::move(full), rows());
  }

  IndexSet columns_fully_observed() const {
    std::vector<Index> full;
    for (Index j = 0; j < cols(); ++j)
      if (per_column_counts[static_cast<std::size_t>(j)] == rows()) full.push_back(j);
    return IndexSet::of(std::move(full), cols());
  }
};

// Simulated observation gatekeeper. The hidden matrix is only reachable
// through the observe calls, each distinct entry is charged exactly once, and
// re-observation is free.
template <class S>
class ObservationOracle {
 public:
  ObservationOracle(DenseMatrix<S> hidden, CostModel<S> model)
      : hidden_(std::move(hidden)), model_(std::move(model)) {
    model_.validate_shape(hidden_.rows(), hidden_.cols());
    seen_.assign(static_cast<std::size_t>(hidden_.rows() * hidden_.cols()), 0);
    ledger_.per_row_counts.assign(static_cast<std::size_t>(hidden_.rows()), 0);
    ledger_.per_column_counts.assign(static_cast<std::size_t>(hidden_.cols()), 0);
  }

  Index rows() const { return hidden_.rows(); }
  Index cols() const { return hidden_.cols(); }
  const CostModel<S>& model() const { return model_; }
  const Ledger<S>& ledger() const { return ledger_; }

  bool is_observed(Index i, Index j) const {
    check_indices(i, j);
    return seen_[flat(i, j)] != 0;
  }

  S observe_entry(Index i, Index j) {
    check_indices(i, j);
    reveal(i, j);
    return hidden_(i, j);
  }

  // M_{R:}: every entry of the selected rows, charging only what is new.
  DenseMatrix<S> observe_rows(const IndexSet& rows_set) {
    if (rows_set.empty()) throw EmptySelection("row observation needs a nonempty row set");
    if (rows_set.universe() != rows())
      throw DimensionMismatch("row set universe does not match matrix");
    DenseMatrix<S> out(rows_set.size(), cols());
    for (Index k = 0; k < rows_set.size(); ++k) {
      for (Index j = 0; j < cols(); ++j) {
        reveal(rows_set[k], j);
        out(k, j) = hidden_(rows_set[k], j);
      }
    }
    return out;
  }

  DenseVector<S> observe_column(Index j) {
    if (j < 0 || j >= cols()) throw IndexOutOfRange("column index out of range");
    DenseVector<S> out(rows());
    for (Index i = 0; i < rows(); ++i) {
      reveal(i, j);
      out(i) = hidden_(i, j);
    }
    return out;
  }

 private:
  void check_indices(Index i, Index j) const {
    if (i < 0 || i >= rows() || j < 0 || j >= cols())
      throw IndexOutOfRange("entry (" + std::to_string(i) + "," + std::to_string(j) +
                            ") out of range");
  }

  std::size_t flat(Index i, Index j) const {
    return static_cast<std::size_t>(i * cols() + j);
  }

  void reveal(Index i, Index j) {
    auto& seen = seen_[flat(i, j)];
    if (seen) return;
    seen = 1;
    ledger_.total_cost += model_.entry_cost(i, j);
    ledger_.entry_count += 1;
    ledger_.per_row_counts[static_cast<std::size_t>(i)] += 1;
    ledger_.per_column_counts[static_cast<std::size_t>(j)] += 1;
  }

  DenseMatrix<S> hidden_;
  CostModel<S> model_;
  std::vector<char> seen_;
  Ledger<S> ledger_;
};

}  // namespace costmc
