#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "kepler/scalar.hpp"

namespace kepler {

/// Sparse vector with strictly increasing column indices and no stored zeros.
using SparseRow = std::vector<std::pair<std::size_t, GaussianRational>>;

/// Assigns dense column numbers to arbitrary ordered keys, in first-seen order.
template <class Key>
class CoordinateIndex {
 public:
  std::size_t column(const Key& key) {
    auto [it, inserted] = columns_.try_emplace(key, columns_.size());
    return it->second;
  }
  std::size_t size() const { return columns_.size(); }

 private:
  std::map<Key, std::size_t> columns_;
};

/// Sorts by column, merges duplicates and drops zeros.
SparseRow canonicalRow(std::vector<std::pair<std::size_t, GaussianRational>> entries);

/// alpha * x + beta * y.
SparseRow combineRows(const GaussianRational& alpha, const SparseRow& x,
                      const GaussianRational& beta, const SparseRow& y);

/// Rank by fraction-free (Bareiss) elimination. Rows are first scaled to
/// Gaussian-integer entries; pivots are chosen by smallest leading column,
/// then by input order.
std::size_t bareissRank(std::vector<SparseRow> rows);

/// Row-reduced basis grown one vector at a time (pivot entries normalized to 1).
class IncrementalBasis {
 public:
  /// Adds v if it is independent of the current span; returns whether it was added.
  bool add(const SparseRow& v);
  /// Remainder of v after eliminating every pivot column.
  SparseRow reduce(const SparseRow& v) const;
  bool contains(const SparseRow& v) const { return reduce(v).empty(); }
  std::size_t rank() const { return pivots_.size(); }

 private:
  std::map<std::size_t, SparseRow> pivots_;  // leading column -> row
};

}  // namespace kepler
