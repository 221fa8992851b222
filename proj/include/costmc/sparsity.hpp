#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <utility>
#include <vector>

#include "costmc/errors.hpp"
#include "costmc/index_set.hpp"
#include "costmc/linalg.hpp"
#include "costmc/scalar.hpp"

namespace costmc {

// The search over zero supports is exponential in the ambient dimension.
inline constexpr Index kSparsityDimensionCap = 22;

template <class S>
struct SparsityReport {
  Index ambient = 0;
  Index nonsparsity = 0;  // psi: fewest nonzeros over nonzero vectors of the subspace
  Index sparsity = 0;     // m - psi: most zeros such a vector can carry
  DenseVector<S> witness; // attains exactly `nonsparsity` nonzeros
  IndexSet zero_support;  // coordinates where the witness vanishes
};

template <class S>
std::pair<Index, Index> vector_sparsity(const DenseVector<S>& x, const Tolerance& tol = {}) {
  Index nonzeros = 0;
  for (Index i = 0; i < x.size(); ++i) {
    if constexpr (is_exact_scalar_v<S>) {
      if (x(i) != S(0)) ++nonzeros;
    } else {
      if (std::abs(x(i)) > tol.tau) ++nonzeros;
    }
  }
  return {nonzeros, x.size() - nonzeros};
}

namespace detail {

// Incremental rank state over the rows selected so far. Exact mode reduces
// against recorded pivot rows; float mode orthonormalizes with a relative
// threshold.
template <class S>
class RowRankState {
 public:
  explicit RowRankState(const Tolerance& tol) : tol_(tol) {}

  Index rank() const { return static_cast<Index>(rows_.size()); }

  // Tries to absorb `row`; returns true and records it when the rank grows.
  bool push(DenseVector<S> row) {
    if constexpr (is_exact_scalar_v<S>) {
      for (std::size_t k = 0; k < rows_.size(); ++k) {
        const Index pc = pivot_cols_[k];
        if (row(pc) == S(0)) continue;
        const S factor = row(pc) / rows_[k](pc);
        row -= factor * rows_[k];
      }
      Index pivot = -1;
      for (Index j = 0; j < row.size(); ++j) {
        if (row(j) != S(0)) {
          pivot = j;
          break;
        }
      }
      if (pivot < 0) return false;
      rows_.push_back(std::move(row));
      pivot_cols_.push_back(pivot);
      return true;
    } else {
      const double scale = std::sqrt(row.squaredNorm());
      for (const auto& q : rows_) row -= q * q.dot(row);
      for (const auto& q : rows_) row -= q * q.dot(row);
      const double norm = std::sqrt(row.squaredNorm());
      if (norm <= tol_.tau * (1.0 + scale)) return false;
      rows_.push_back(row / norm);
      pivot_cols_.push_back(0);
      return true;
    }
  }

  void pop() {
    rows_.pop_back();
    pivot_cols_.pop_back();
  }

 private:
  Tolerance tol_;
  std::vector<DenseVector<S>> rows_;
  std::vector<Index> pivot_cols_;
};

// Deterministic kernel vector of a row-rank-deficient matrix: first free
// column pinned to one, remaining free columns to zero.
template <class S>
DenseVector<S> exact_kernel_vector(const DenseMatrix<S>& a) {
  const Index n = a.cols();
  DenseMatrix<S> u = a;
  std::vector<Index> pivot_cols;
  Index rank = 0;
  for (Index col = 0; col < n && rank < u.rows(); ++col) {
    Index pivot = -1;
    for (Index i = rank; i < u.rows(); ++i) {
      if (u(i, col) != S(0)) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != rank) u.row(rank).swap(u.row(pivot));
    for (Index i = rank + 1; i < u.rows(); ++i) {
      if (u(i, col) == S(0)) continue;
      const S factor = u(i, col) / u(rank, col);
      for (Index j = col; j < n; ++j) u(i, j) -= factor * u(rank, j);
    }
    pivot_cols.push_back(col);
    ++rank;
  }
  Index free_col = -1;
  std::size_t next_pivot = 0;
  for (Index j = 0; j < n; ++j) {
    if (next_pivot < pivot_cols.size() && pivot_cols[next_pivot] == j) {
      ++next_pivot;
    } else {
      free_col = j;
      break;
    }
  }
  if (free_col < 0) throw InvalidRank("matrix has full column rank; no kernel vector exists");
  DenseVector<S> z = DenseVector<S>::Zero(n);
  z(free_col) = S(1);
  for (Index k = rank - 1; k >= 0; --k) {
    const Index pc = pivot_cols[static_cast<std::size_t>(k)];
    S acc = S(0);
    for (Index j = pc + 1; j < n; ++j) acc -= u(k, j) * z(j);
    z(pc) = acc / u(k, pc);
  }
  return z;
}

template <class S>
DenseVector<S> kernel_vector(const DenseMatrix<S>& a, const Tolerance& tol) {
  const Index n = a.cols();
  if (a.rows() == 0) {
    DenseVector<S> z = DenseVector<S>::Zero(n);
    z(0) = S(1);
    return z;
  }
  if constexpr (is_exact_scalar_v<S>) {
    (void)tol;
    return exact_kernel_vector(a);
  } else {
    // Smallest singular direction; the caller established sigma_min below
    // the kernel threshold.
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    return svd.matrixV().col(n - 1);
  }
}

// Depth-first maximization of |S| subject to rank(B_{S,:}) < r. Rows are
// considered in index order with the include branch first, so the first
// support found at any size is the lexicographically smallest of that size;
// since the incumbent only ever improves strictly, the final answer is the
// lexicographically smallest maximizing support. Supersets of a row set of
// full column rank keep full column rank, which justifies cutting the
// include branch as soon as the rank hits r.
template <class S>
class ZeroSupportSearch {
 public:
  ZeroSupportSearch(const DenseMatrix<S>& basis, const Tolerance& tol)
      : basis_(basis), m_(basis.rows()), r_(basis.cols()), state_(tol) {
    best_size_ = r_ - 1;
    best_.resize(static_cast<std::size_t>(best_size_));
    for (Index i = 0; i < best_size_; ++i) best_[static_cast<std::size_t>(i)] = i;
  }

  std::vector<Index> run() {
    descend(0);
    return best_;
  }

 private:
  void descend(Index next_row) {
    if (static_cast<Index>(current_.size()) + (m_ - next_row) <= best_size_) return;
    if (next_row == m_) {
      best_size_ = static_cast<Index>(current_.size());
      best_ = current_;
      return;
    }
    const bool grew = state_.push(basis_.row(next_row).transpose());
    if (!grew || state_.rank() < r_) {
      current_.push_back(next_row);
      descend(next_row + 1);
      current_.pop_back();
    }
    if (grew) state_.pop();
    descend(next_row + 1);
  }

  const DenseMatrix<S>& basis_;
  Index m_;
  Index r_;
  RowRankState<S> state_;
  std::vector<Index> current_;
  std::vector<Index> best_;
  Index best_size_;
};

}  // namespace detail

// Exact sparsity numbers of the subspace spanned by the columns of `basis`
// (full column rank required), by search over zero-coordinate supports:
// the sparsity number is the largest |S| for which the row-restricted basis
// B_{S,:} has a nontrivial kernel, and the witness B·z realizes it.
template <class S>
SparsityReport<S> subspace_sparsity(const DenseMatrix<S>& basis, const Tolerance& tol = {}) {
  const Index m = basis.rows();
  const Index r = basis.cols();
  if (m < 1 || r < 1) throw InvalidRank("subspace basis must be nonempty");
  if (m > kSparsityDimensionCap)
    throw DimensionCapExceeded("ambient dimension " + std::to_string(m) +
                               " exceeds the sparsity search cap of " +
                               std::to_string(kSparsityDimensionCap));
  if (rank(basis, tol) != r) throw InvalidRank("spanning set does not have full column rank");

  detail::ZeroSupportSearch<S> search(basis, tol);
  const std::vector<Index> support = search.run();

  SparsityReport<S> report;
  report.ambient = m;
  report.sparsity = static_cast<Index>(support.size());
  report.nonsparsity = m - report.sparsity;
  report.zero_support = IndexSet::of(support, m);

  const DenseVector<S> z = detail::kernel_vector<S>(rows_of(basis, report.zero_support), tol);
  DenseVector<S> witness = basis * z;
  for (Index i = 0; i < m; ++i) {
    bool nonzero;
    if constexpr (is_exact_scalar_v<S>) {
      nonzero = witness(i) != S(0);
    } else {
      nonzero = std::abs(witness(i)) > tol.tau;
    }
    if (nonzero) {
      witness /= witness(i);
      break;
    }
  }
  report.witness = std::move(witness);
  return report;
}

// Sparsity numbers of the column space of a nonzero matrix.
template <class S>
SparsityReport<S> matrix_sparsity(const DenseMatrix<S>& m, const Tolerance& tol = {}) {
  if (m.rows() > kSparsityDimensionCap)
    throw DimensionCapExceeded("ambient dimension " + std::to_string(m.rows()) +
                               " exceeds the sparsity search cap of " +
                               std::to_string(kSparsityDimensionCap));
  bool any_nonzero = false;
  for (Index j = 0; j < m.cols() && !any_nonzero; ++j)
    any_nonzero = vector_sparsity<S>(m.col(j), tol).first > 0;
  if (!any_nonzero) throw ZeroMatrix("sparsity numbers of the zero matrix are undefined");
  const std::vector<Index> pivots = independent_columns(m, tol);
  return subspace_sparsity<S>(cols_of(m, IndexSet::of(pivots, m.cols())), tol);
}

}  // namespace costmc
