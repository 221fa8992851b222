#pragma once

#include <string>
#include <utility>
#include <variant>

#include "costmc/errors.hpp"
#include "costmc/index_set.hpp"
#include "costmc/linalg.hpp"

namespace costmc {

// Observation cost of an entry: one constant, one cost per column, or one
// cost per entry. All costs are strictly positive.
template <class S>
class CostModel {
 public:
  enum class Kind { Uniform, PerColumn, PerEntry };

  static CostModel uniform(S cost) {
    if (!(cost > S(0))) throw NonpositiveCost("uniform cost must be positive");
    CostModel m;
    m.v_ = Uniform{std::move(cost)};
    return m;
  }

  static CostModel per_column(DenseVector<S> costs) {
    for (Index j = 0; j < costs.size(); ++j)
      if (!(costs(j) > S(0)))
        throw NonpositiveCost("column cost " + std::to_string(j) + " must be positive");
    CostModel m;
    m.v_ = PerColumn{std::move(costs)};
    return m;
  }

  static CostModel per_entry(DenseMatrix<S> costs) {
    for (Index i = 0; i < costs.rows(); ++i)
      for (Index j = 0; j < costs.cols(); ++j)
        if (!(costs(i, j) > S(0)))
          throw NonpositiveCost("entry cost (" + std::to_string(i) + "," + std::to_string(j) +
                                ") must be positive");
    CostModel m;
    m.v_ = PerEntry{std::move(costs)};
    return m;
  }

  Kind kind() const { return static_cast<Kind>(v_.index()); }

  // Shape compatibility with an m x n matrix.
  void validate_shape(Index rows, Index cols) const {
    if (kind() == Kind::PerColumn && column_costs().size() != cols)
      throw LengthMismatch("per-column cost vector length does not match column count");
    if (kind() == Kind::PerEntry &&
        (entry_costs().rows() != rows || entry_costs().cols() != cols))
      throw DimensionMismatch("per-entry cost matrix shape does not match matrix");
  }

  S entry_cost(Index i, Index j) const {
    switch (kind()) {
      case Kind::Uniform:
        return std::get<Uniform>(v_).cost;
      case Kind::PerColumn: {
        const auto& c = std::get<PerColumn>(v_).costs;
        if (j < 0 || j >= c.size()) throw IndexOutOfRange("column index outside cost vector");
        return c(j);
      }
      case Kind::PerEntry: {
        const auto& c = std::get<PerEntry>(v_).costs;
        if (i < 0 || i >= c.rows() || j < 0 || j >= c.cols())
          throw IndexOutOfRange("entry index outside cost matrix");
        return c(i, j);
      }
    }
    throw Error("unreachable cost model kind");
  }

  S uniform_cost() const {
    if (kind() != Kind::Uniform) throw ModelMismatch("cost model is not uniform");
    return std::get<Uniform>(v_).cost;
  }
  const DenseVector<S>& column_costs() const {
    if (kind() != Kind::PerColumn) throw ModelMismatch("cost model is not per-column");
    return std::get<PerColumn>(v_).costs;
  }
  const DenseMatrix<S>& entry_costs() const {
    if (kind() != Kind::PerEntry) throw ModelMismatch("cost model is not per-entry");
    return std::get<PerEntry>(v_).costs;
  }

  S row_total(Index i, Index cols) const {
    S total(0);
    for (Index j = 0; j < cols; ++j) total += entry_cost(i, j);
    return total;
  }

  S column_total_excluding(Index j, const IndexSet& rows_excluded) const {
    S total(0);
    for (Index i = 0; i < rows_excluded.universe(); ++i)
      if (!rows_excluded.contains(i)) total += entry_cost(i, j);
    return total;
  }

 private:
  struct Uniform {
    S cost;
  };
  struct PerColumn {
    DenseVector<S> costs;
  };
  struct PerEntry {
    DenseMatrix<S> costs;
  };

  CostModel() = default;
  std::variant<Uniform, PerColumn, PerEntry> v_;
};

// Total cost of the R x C block; the universes of the two index sets carry the
// matrix shape, so R or C may be IndexSet::all(...).
template <class S>
S submatrix_cost(const CostModel<S>& model, const IndexSet& rows, const IndexSet& cols) {
  model.validate_shape(rows.universe(), cols.universe());
  switch (model.kind()) {
    case CostModel<S>::Kind::Uniform:
      return model.uniform_cost() * S(static_cast<long>(rows.size() * cols.size()));
    case CostModel<S>::Kind::PerColumn: {
      S per_row(0);
      for (Index j : cols) per_row += model.column_costs()(j);
      return per_row * S(static_cast<long>(rows.size()));
    }
    case CostModel<S>::Kind::PerEntry: {
      S total(0);
      for (Index i : rows)
        for (Index j : cols) total += model.entry_costs()(i, j);
      return total;
    }
  }
  throw Error("unreachable cost model kind");
}

}  // namespace costmc
