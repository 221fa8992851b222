#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "costmc/errors.hpp"

namespace costmc {

using Index = Eigen::Index;

// Sorted duplicate-free index list over a fixed universe [0, universe).
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(Index universe) : universe_(check_universe(universe)) {}
  IndexSet(std::initializer_list<Index> indices, Index universe)
      : IndexSet(of(std::vector<Index>(indices), universe)) {}

  static IndexSet of(std::vector<Index> indices, Index universe) {
    IndexSet set(universe);
    std::sort(indices.begin(), indices.end());
    for (std::size_t k = 0; k < indices.size(); ++k) {
      if (indices[k] < 0 || indices[k] >= universe)
        throw IndexOutOfRange("index " + std::to_string(indices[k]) + " outside universe of size " +
                              std::to_string(universe));
      if (k > 0 && indices[k] == indices[k - 1])
        throw IndexOutOfRange("duplicate index " + std::to_string(indices[k]));
    }
    set.idx_ = std::move(indices);
    return set;
  }

  static IndexSet all(Index universe) {
    IndexSet set(universe);
    set.idx_.resize(static_cast<std::size_t>(universe));
    for (Index i = 0; i < universe; ++i) set.idx_[static_cast<std::size_t>(i)] = i;
    return set;
  }

  Index size() const { return static_cast<Index>(idx_.size()); }
  Index universe() const { return universe_; }
  bool empty() const { return idx_.empty(); }

  Index operator[](Index k) const { return idx_[static_cast<std::size_t>(k)]; }
  const std::vector<Index>& indices() const { return idx_; }

  bool contains(Index i) const { return std::binary_search(idx_.begin(), idx_.end(), i); }

  IndexSet complement() const {
    IndexSet set(universe_);
    set.idx_.reserve(static_cast<std::size_t>(universe_ - size()));
    std::size_t k = 0;
    for (Index i = 0; i < universe_; ++i) {
      if (k < idx_.size() && idx_[k] == i) {
        ++k;
      } else {
        set.idx_.push_back(i);
      }
    }
    return set;
  }

  auto begin() const { return idx_.begin(); }
  auto end() const { return idx_.end(); }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  static Index check_universe(Index universe) {
    if (universe < 0) throw IndexOutOfRange("negative universe size");
    return universe;
  }

  std::vector<Index> idx_;
  Index universe_ = 0;
};

inline std::string to_string(const IndexSet& set) {
  std::string s = "{";
  for (Index k = 0; k < set.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(set[k]);
  }
  return s + "}";
}

// Visits all k-subsets of {0,...,n-1} in lexicographic order.
template <class F>
void for_each_combination(Index n, Index k, F&& fn) {
  if (k < 0 || k > n) return;
  std::vector<Index> c(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = i;
  while (true) {
    fn(static_cast<const std::vector<Index>&>(c));
    Index i = k - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++c[static_cast<std::size_t>(i)];
    for (Index j = i + 1; j < k; ++j)
      c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace costmc
