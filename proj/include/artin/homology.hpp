#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "artin/errors.hpp"

namespace artin {

/// Sparse integer matrix stored by columns: column j maps row -> entry.
struct SparseMatrix {
  std::size_t rows = 0;
  std::vector<std::map<std::size_t, std::int64_t>> columns;

  std::size_t cols() const { return columns.size(); }
  void add(std::size_t r, std::size_t c, std::int64_t v) {
    if (v == 0) return;
    auto& col = columns.at(c);
    auto [it, inserted] = col.try_emplace(r, v);
    if (!inserted) {
      it->second += v;
      if (it->second == 0) col.erase(it);
    }
  }
};

/// Rank and the invariant factors (all > 1) of an integer matrix.
struct SmithResult {
  std::size_t rank = 0;
  std::vector<std::int64_t> torsion;
};

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw ArtinError("integer overflow during Smith reduction");
  return out;
}
inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_sub_overflow(a, b, &out)) throw ArtinError("integer overflow during Smith reduction");
  return out;
}

/// Dense Smith normal form diagonal of a small matrix.
inline SmithResult dense_smith(std::vector<std::vector<std::int64_t>> a) {
  SmithResult out;
  const std::size_t n = a.size();
  const std::size_t m = n ? a[0].size() : 0;
  std::vector<std::int64_t> diag;
  std::size_t t = 0;
  while (t < n && t < m) {
    // smallest nonzero entry in the remaining block
    std::size_t pr = n, pc = m;
    for (std::size_t i = t; i < n; ++i)
      for (std::size_t j = t; j < m; ++j)
        if (a[i][j] != 0 && (pr == n || std::llabs(a[i][j]) < std::llabs(a[pr][pc]))) {
          pr = i;
          pc = j;
        }
    if (pr == n) break;
    std::swap(a[t], a[pr]);
    for (auto& row : a) std::swap(row[t], row[pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        if (a[i][t] == 0) continue;
        std::int64_t q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < m; ++j) a[i][j] = checked_sub(a[i][j], checked_mul(q, a[t][j]));
        if (a[i][t] != 0) {
          std::swap(a[t], a[i]);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < m; ++j) {
        if (a[t][j] == 0) continue;
        std::int64_t q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < n; ++i) a[i][j] = checked_sub(a[i][j], checked_mul(q, a[i][t]));
        if (a[t][j] != 0) {
          for (auto& row : a) std::swap(row[t], row[j]);
          clean = false;
        }
      }
      if (clean) {
        // the pivot must divide the rest of the block
        for (std::size_t i = t + 1; i < n && clean; ++i)
          for (std::size_t j = t + 1; j < m; ++j)
            if (a[i][j] % a[t][t] != 0) {
              for (std::size_t k = t; k < m; ++k) a[t][k] += a[i][k];
              clean = false;
              break;
            }
      }
    }
    diag.push_back(std::llabs(a[t][t]));
    ++t;
  }
  out.rank = diag.size();
  for (auto d : diag)
    if (d > 1) out.torsion.push_back(d);
  std::sort(out.torsion.begin(), out.torsion.end());
  return out;
}

}  // namespace detail

/// Smith reduction. Unit pivots are eliminated sparsely (cube complexes
/// rarely need anything else); whatever is left goes through dense Smith.
inline SmithResult smith(const SparseMatrix& input) {
  std::vector<std::map<std::size_t, std::int64_t>> cols = input.columns;
  std::vector<std::set<std::size_t>> row_cols(input.rows);
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (auto& [r, v] : cols[c]) row_cols[r].insert(c);

  SmithResult out;
  std::vector<bool> col_alive(cols.size(), true);
  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (!col_alive[c] || cols[c].empty()) continue;
      // unit entry in the sparsest row
      std::size_t best = input.rows;
      for (auto& [r, v] : cols[c])
        if ((v == 1 || v == -1) && (best == input.rows || row_cols[r].size() < row_cols[best].size())) best = r;
      if (best == input.rows) continue;
      const std::size_t r = best;
      const std::int64_t pivot = cols[c].at(r);
      // clear row r in every other column with column operations
      std::vector<std::size_t> others(row_cols[r].begin(), row_cols[r].end());
      for (std::size_t c2 : others) {
        if (c2 == c) continue;
        const std::int64_t f = detail::checked_mul(cols[c2].at(r), pivot);  // pivot^{-1} = pivot
        for (auto& [rr, v] : cols[c]) {
          auto& cell = cols[c2][rr];
          const bool was_zero = cell == 0;
          cell = detail::checked_sub(cell, detail::checked_mul(f, v));
          if (cell == 0) {
            cols[c2].erase(rr);
            row_cols[rr].erase(c2);
          } else if (was_zero) {
            row_cols[rr].insert(c2);
          }
        }
      }
      // row r now only meets column c; row operations clear the column
      for (auto& [rr, v] : cols[c]) row_cols[rr].erase(c);
      cols[c].clear();
      col_alive[c] = false;
      ++out.rank;
      progress = true;
    }
  }

  std::vector<std::size_t> live_cols;
  std::set<std::size_t> live_rows;
  for (std::size_t c = 0; c < cols.size(); ++c)
    if (col_alive[c] && !cols[c].empty()) {
      live_cols.push_back(c);
      for (auto& [r, v] : cols[c]) live_rows.insert(r);
    }
  if (live_cols.empty()) return out;
  std::vector<std::size_t> row_index(live_rows.begin(), live_rows.end());
  std::vector<std::vector<std::int64_t>> dense(row_index.size(), std::vector<std::int64_t>(live_cols.size(), 0));
  for (std::size_t j = 0; j < live_cols.size(); ++j)
    for (auto& [r, v] : cols[live_cols[j]]) {
      auto i = static_cast<std::size_t>(std::lower_bound(row_index.begin(), row_index.end(), r) - row_index.begin());
      dense[i][j] = v;
    }
  SmithResult rest = detail::dense_smith(std::move(dense));
  out.rank += rest.rank;
  out.torsion = rest.torsion;
  return out;
}

/// One homology group Z^rank + sum Z/t.
struct HomologyGroup {
  std::size_t rank = 0;
  std::vector<std::int64_t> torsion;

  bool trivial() const { return rank == 0 && torsion.empty(); }
  std::string describe() const {
    if (trivial()) return "0";
    std::string out;
    if (rank) out = rank == 1 ? "Z" : "Z^" + std::to_string(rank);
    for (auto t : torsion) out += (out.empty() ? "" : " + ") + std::string("Z/") + std::to_string(t);
    return out;
  }
  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

/// Chain complex with cells graded by dimension; boundary[d] maps C_d to
/// C_{d-1} (boundary[0] is unused).
struct ChainComplex {
  std::vector<std::size_t> cells;
  std::vector<SparseMatrix> boundary;
};

/// Reduced homology: H_0 is computed against the augmentation C_0 -> Z.
inline std::vector<HomologyGroup> reduced_homology(const ChainComplex& cc) {
  const std::size_t top = cc.cells.size();
  std::vector<HomologyGroup> out(top);
  if (top == 0) return out;
  std::vector<SmithResult> rank_of(top + 1);  // rank_of[d] = Smith of boundary out of dimension d
  SparseMatrix aug;
  aug.rows = 1;
  aug.columns.resize(cc.cells[0]);
  for (std::size_t c = 0; c < cc.cells[0]; ++c) aug.add(0, c, 1);
  rank_of[0] = smith(aug);
  for (std::size_t d = 1; d < top; ++d) rank_of[d] = smith(cc.boundary[d]);
  for (std::size_t d = 0; d < top; ++d) {
    const std::size_t cycles = cc.cells[d] - rank_of[d].rank;
    const std::size_t bounds = rank_of[d + 1].rank;
    out[d].rank = cycles - bounds;
    out[d].torsion = rank_of[d + 1].torsion;
  }
  return out;
}

}  // namespace artin
