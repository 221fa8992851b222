#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <utility>
#include <vector>

#include "costmc/errors.hpp"
#include "costmc/index_set.hpp"
#include "costmc/scalar.hpp"

namespace costmc {

template <class S>
using DenseMatrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using DenseVector = Eigen::Matrix<S, Eigen::Dynamic, 1>;

// --- submatrix restrictions ------------------------------------------------

template <class S>
DenseMatrix<S> rows_of(const DenseMatrix<S>& m, const IndexSet& rows) {
  if (rows.universe() != m.rows()) throw DimensionMismatch("row set universe does not match matrix");
  DenseMatrix<S> out(rows.size(), m.cols());
  for (Index k = 0; k < rows.size(); ++k) out.row(k) = m.row(rows[k]);
  return out;
}

template <class S>
DenseMatrix<S> cols_of(const DenseMatrix<S>& m, const IndexSet& cols) {
  if (cols.universe() != m.cols()) throw DimensionMismatch("column set universe does not match matrix");
  DenseMatrix<S> out(m.rows(), cols.size());
  for (Index k = 0; k < cols.size(); ++k) out.col(k) = m.col(cols[k]);
  return out;
}

template <class S>
DenseMatrix<S> submatrix_of(const DenseMatrix<S>& m, const IndexSet& rows, const IndexSet& cols) {
  if (rows.universe() != m.rows() || cols.universe() != m.cols())
    throw DimensionMismatch("index set universes do not match matrix");
  DenseMatrix<S> out(rows.size(), cols.size());
  for (Index i = 0; i < rows.size(); ++i)
    for (Index j = 0; j < cols.size(); ++j) out(i, j) = m(rows[i], cols[j]);
  return out;
}

template <class S>
DenseVector<S> subvector_of(const DenseVector<S>& x, const IndexSet& omega) {
  if (omega.universe() != x.size()) throw DimensionMismatch("index set universe does not match vector");
  DenseVector<S> out(omega.size());
  for (Index k = 0; k < omega.size(); ++k) out(k) = x(omega[k]);
  return out;
}

namespace detail {

// Row-echelon rank over an exact field. Any nonzero pivot is a valid pivot.
template <class S>
Index exact_rank(DenseMatrix<S> a) {
  const Index rows = a.rows();
  const Index cols = a.cols();
  Index rank = 0;
  for (Index col = 0; col < cols && rank < rows; ++col) {
    Index pivot = -1;
    for (Index i = rank; i < rows; ++i) {
      if (a(i, col) != S(0)) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != rank) a.row(rank).swap(a.row(pivot));
    for (Index i = rank + 1; i < rows; ++i) {
      if (a(i, col) == S(0)) continue;
      const S factor = a(i, col) / a(rank, col);
      for (Index j = col; j < cols; ++j) a(i, j) -= factor * a(rank, j);
    }
    ++rank;
  }
  return rank;
}

inline Index float_rank(const DenseMatrix<double>& a, const Tolerance& tol) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  const double cutoff = tol.tau * static_cast<double>(std::max(a.rows(), a.cols())) * sv(0);
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  return rank;
}

// Solves the consistent symmetric system g·x = h by elimination, pinning the
// free variables of a rank-deficient system to zero. Returns (x, rank).
template <class S>
std::pair<DenseVector<S>, Index> solve_symmetric_consistent(DenseMatrix<S> g, DenseVector<S> h) {
  const Index n = g.cols();
  std::vector<Index> pivot_col;
  Index rank = 0;
  for (Index col = 0; col < n && rank < g.rows(); ++col) {
    Index pivot = -1;
    for (Index i = rank; i < g.rows(); ++i) {
      if (g(i, col) != S(0)) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != rank) {
      g.row(rank).swap(g.row(pivot));
      std::swap(h(rank), h(pivot));
    }
    for (Index i = rank + 1; i < g.rows(); ++i) {
      if (g(i, col) == S(0)) continue;
      const S factor = g(i, col) / g(rank, col);
      for (Index j = col; j < n; ++j) g(i, j) -= factor * g(rank, j);
      h(i) -= factor * h(rank);
    }
    pivot_col.push_back(col);
    ++rank;
  }
  DenseVector<S> x = DenseVector<S>::Zero(n);
  for (Index k = rank - 1; k >= 0; --k) {
    const Index col = pivot_col[static_cast<std::size_t>(k)];
    S acc = h(k);
    for (Index j = col + 1; j < n; ++j) acc -= g(k, j) * x(j);
    x(col) = acc / g(k, col);
  }
  return {std::move(x), rank};
}

}  // namespace detail

// Numerical rank: exact elimination in rational mode, SVD with the
// tau * max(m,n) * sigma_max cutoff in float mode.
template <class S>
Index rank(const DenseMatrix<S>& m, const Tolerance& tol = {}) {
  if constexpr (is_exact_scalar_v<S>) {
    (void)tol;
    return detail::exact_rank(m);
  } else {
    return detail::float_rank(m, tol);
  }
}

// --- least squares -----------------------------------------------------------

template <class S>
struct LeastSquaresSolution {
  DenseVector<S> coefficients;
  Index rank = 0;
  S residual_sqnorm = S(0);
};

// Minimizes ||a·x - b||. Rational mode goes through the normal equations
// (exact, always consistent); float mode through the SVD with truncation at
// the rank cutoff.
template <class S>
LeastSquaresSolution<S> solve_least_squares(const DenseMatrix<S>& a, const DenseVector<S>& b,
                                            const Tolerance& tol = {}) {
  if (a.rows() != b.size()) throw DimensionMismatch("least squares: rows(a) != size(b)");
  const Index k = a.cols();
  if (k == 0) return {DenseVector<S>(0), 0, b.squaredNorm()};
  LeastSquaresSolution<S> out;
  if constexpr (is_exact_scalar_v<S>) {
    DenseMatrix<S> gram = a.transpose() * a;
    DenseVector<S> rhs = a.transpose() * b;
    auto [x, rank] = detail::solve_symmetric_consistent(std::move(gram), std::move(rhs));
    out.coefficients = std::move(x);
    out.rank = rank;
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double cutoff =
        sv.size() > 0 ? tol.tau * static_cast<double>(std::max(a.rows(), a.cols())) * sv(0) : 0.0;
    DenseVector<double> x = DenseVector<double>::Zero(k);
    Index rank = 0;
    for (Index i = 0; i < sv.size(); ++i) {
      if (sv(i) <= cutoff || sv(i) == 0.0) continue;
      x += svd.matrixV().col(i) * (svd.matrixU().col(i).dot(b) / sv(i));
      ++rank;
    }
    out.coefficients = std::move(x);
    out.rank = rank;
  }
  out.residual_sqnorm = (b - a * out.coefficients).squaredNorm();
  return out;
}

// --- orthogonal basis of the learned column subspace -------------------------

// Float mode keeps unit vectors; rational mode keeps orthogonal (not
// normalized) vectors with their squared norms so everything stays in the
// rationals.
template <class S>
class OrthoBasis {
 public:
  explicit OrthoBasis(Index dim) : dim_(dim), vecs_(dim, 0) {}

  Index dimension() const { return dim_; }
  Index size() const { return vecs_.cols(); }
  const DenseMatrix<S>& vectors() const { return vecs_; }
  const S& squared_norm(Index k) const { return sq_norms_[static_cast<std::size_t>(k)]; }

  DenseMatrix<S> restricted(const IndexSet& omega) const { return rows_of(vecs_, omega); }

  // Orthogonal projection of x onto the span.
  DenseVector<S> project(const DenseVector<S>& x) const {
    if (x.size() != dim_) throw DimensionMismatch("projection target has wrong length");
    DenseVector<S> p = DenseVector<S>::Zero(dim_);
    for (Index k = 0; k < size(); ++k)
      p += vecs_.col(k) * (vecs_.col(k).dot(x) / sq_norms_[static_cast<std::size_t>(k)]);
    return p;
  }

  // Modified Gram-Schmidt step; float mode runs one reorthogonalization pass.
  OrthoBasis extended(const DenseVector<S>& v, const Tolerance& tol = {}) const {
    if (v.size() != dim_) throw DimensionMismatch("extension vector has wrong length");
    DenseVector<S> residual = v;
    sweep(residual);
    OrthoBasis out = *this;
    if constexpr (is_exact_scalar_v<S>) {
      const S sq = residual.squaredNorm();
      if (sq == S(0)) throw DegenerateVector("vector already lies in the basis span");
      out.append(residual, sq);
    } else {
      sweep(residual);
      const double norm = std::sqrt(residual.squaredNorm());
      if (norm <= tol.tau * (1.0 + std::sqrt(v.squaredNorm())))
        throw DegenerateVector("vector already lies in the basis span");
      out.append(residual / norm, 1.0);
    }
    return out;
  }

 private:
  // One pass of sequential orthogonalization against the stored vectors.
  void sweep(DenseVector<S>& residual) const {
    for (Index k = 0; k < size(); ++k)
      residual -= vecs_.col(k) * (vecs_.col(k).dot(residual) / sq_norms_[static_cast<std::size_t>(k)]);
  }

  void append(const DenseVector<S>& v, S sq) {
    vecs_.conservativeResize(Eigen::NoChange, size() + 1);
    vecs_.col(size() - 1) = v;
    sq_norms_.push_back(std::move(sq));
  }

  Index dim_;
  DenseMatrix<S> vecs_;
  std::vector<S> sq_norms_;
};

template <class S>
OrthoBasis<S> orthonormal_extend(const OrthoBasis<S>& basis, const DenseVector<S>& v,
                                 const Tolerance& tol = {}) {
  return basis.extended(v, tol);
}

// Squared norm of x_omega minus its projection onto the row-restricted span
// { b_omega : b in basis }. The restricted projector is built from the
// restricted vectors, which are generally not orthogonal.
template <class S>
S restricted_residual_sqnorm(const OrthoBasis<S>& basis, const IndexSet& omega,
                             const DenseVector<S>& x_omega, const Tolerance& tol = {}) {
  if (omega.empty()) throw EmptySelection("restriction needs at least one coordinate");
  if (omega.universe() != basis.dimension())
    throw DimensionMismatch("restriction universe does not match basis dimension");
  if (x_omega.size() != omega.size())
    throw DimensionMismatch("restricted vector length does not match restriction");
  if (basis.size() == 0) return x_omega.squaredNorm();
  return solve_least_squares(basis.restricted(omega), x_omega, tol).residual_sqnorm;
}

template <class S>
double restricted_residual_norm(const OrthoBasis<S>& basis, const IndexSet& omega,
                                const DenseVector<S>& x_omega, const Tolerance& tol = {}) {
  return std::sqrt(to_double(restricted_residual_sqnorm(basis, omega, x_omega, tol)));
}

// Completes a partially observed column known to lie in the basis span by
// solving the restricted system. With an empty basis the only consistent
// completion is the zero column.
template <class S>
DenseVector<S> back_project(const OrthoBasis<S>& basis, const IndexSet& omega,
                            const DenseVector<S>& x_omega, const Tolerance& tol = {}) {
  if (omega.empty()) throw EmptySelection("restriction needs at least one coordinate");
  if (omega.universe() != basis.dimension())
    throw DimensionMismatch("restriction universe does not match basis dimension");
  if (x_omega.size() != omega.size())
    throw DimensionMismatch("restricted vector length does not match restriction");
  if (basis.size() == 0) return DenseVector<S>::Zero(basis.dimension());
  const auto ls = solve_least_squares(basis.restricted(omega), x_omega, tol);
  if (ls.rank < basis.size())
    throw RankDeficientRestriction("restricted basis lost rank; the restriction has fewer "
                                   "informative coordinates than the subspace needs");
  return basis.vectors() * ls.coefficients;
}

// First column indices forming a basis of the column space, scanned in index
// order.
template <class S>
std::vector<Index> independent_columns(const DenseMatrix<S>& m, const Tolerance& tol = {}) {
  OrthoBasis<S> basis(m.rows());
  std::vector<Index> kept;
  for (Index j = 0; j < m.cols(); ++j) {
    try {
      basis = basis.extended(m.col(j), tol);
      kept.push_back(j);
    } catch (const DegenerateVector&) {
    }
  }
  return kept;
}

inline double condition_number(const DenseMatrix<double>& a) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(sv.size() - 1) <= 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / sv(sv.size() - 1);
}

}  // namespace costmc
