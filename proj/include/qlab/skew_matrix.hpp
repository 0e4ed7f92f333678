#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qlab/errors.hpp"
#include "qlab/vertex_set.hpp"

namespace qlab {

/// [x]_+ = max(x, 0).
constexpr std::int64_t positive_part(std::int64_t x) noexcept { return x > 0 ? x : 0; }

constexpr std::int64_t sign(std::int64_t x) noexcept { return (x > 0) - (x < 0); }

/// Skew-symmetric integer matrix over a labeled vertex set. Only the strict
/// upper triangle is stored and zero entries never are, so two matrices are
/// equal iff their stored entries are equal.
class SkewMatrix {
 public:
  using Entries = std::map<std::pair<Index, Index>, std::int64_t>;

  /// The zero matrix.
  explicit SkewMatrix(VertexSet vertices) : vertices_(std::move(vertices)) {}

  /// Builds from a dense square array; throws FormatError unless it is
  /// skew-symmetric with zero diagonal.
  static SkewMatrix from_dense(VertexSet vertices,
                               const std::vector<std::vector<std::int64_t>>& rows) {
    const std::size_t n = vertices.size();
    if (rows.size() != n) throw FormatError("matrix row count does not match vertex count");
    for (const auto& row : rows)
      if (row.size() != n) throw FormatError("matrix is not square");
    SkewMatrix m(std::move(vertices));
    for (Index i = 0; i < n; ++i) {
      if (rows[i][i] != 0) throw FormatError("matrix has a non-zero diagonal entry");
      for (Index j = i + 1; j < n; ++j) {
        if (rows[i][j] != -rows[j][i]) throw FormatError("matrix is not skew-symmetric");
        m.assign(i, j, rows[i][j]);
      }
    }
    return m;
  }

  /// Dense constructor over the numbered vertex set "1".."n".
  static SkewMatrix from_dense(const std::vector<std::vector<std::int64_t>>& rows) {
    return from_dense(VertexSet::numbered(rows.size()), rows);
  }

  /// Sets b_ij = value and b_ji = -value. Intended for builders; i != j.
  void assign(Index i, Index j, std::int64_t value) {
    if (i == j) {
      if (value != 0) throw FormatError("diagonal entries must be zero");
      return;
    }
    if (i >= size() || j >= size()) throw std::out_of_range("SkewMatrix index out of range");
    if (i > j) {
      std::swap(i, j);
      value = detail::checked_neg(value);
    }
    if (value == 0)
      entries_.erase({i, j});
    else
      entries_[{i, j}] = value;
  }

  const VertexSet& vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }

  std::int64_t operator()(Index i, Index j) const {
    if (i == j) return 0;
    const bool flip = i > j;
    auto it = flip ? entries_.find({j, i}) : entries_.find({i, j});
    if (it == entries_.end()) return 0;
    return flip ? -it->second : it->second;
  }

  std::int64_t at(std::string_view i, std::string_view j) const {
    return (*this)(vertices_.index_of(i), vertices_.index_of(j));
  }

  /// Non-zero entries b_ij with i < j.
  const Entries& upper_entries() const noexcept { return entries_; }

  std::vector<std::vector<std::int64_t>> dense() const {
    const std::size_t n = size();
    std::vector<std::vector<std::int64_t>> rows(n, std::vector<std::int64_t>(n, 0));
    for (const auto& [ij, v] : entries_) {
      rows[ij.first][ij.second] = v;
      rows[ij.second][ij.first] = -v;
    }
    return rows;
  }

  friend bool operator==(const SkewMatrix& a, const SkewMatrix& b) {
    return a.vertices_ == b.vertices_ && a.entries_ == b.entries_;
  }

 private:
  VertexSet vertices_;
  Entries entries_;
};

/// Matrix mutation at k:
///   b'_ij = -b_ij                                 if i = k or j = k,
///   b'_ij = b_ij + sgn(b_ik) [b_ik b_kj]_+        otherwise.
inline SkewMatrix mutate(const SkewMatrix& b, Index k) {
  const std::size_t n = b.size();
  if (k >= n) throw std::out_of_range("mutation index out of range");
  SkewMatrix out(b.vertices());
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const std::int64_t bij = b(i, j);
      if (i == k || j == k) {
        out.assign(i, j, detail::checked_neg(bij));
        continue;
      }
      const std::int64_t bik = b(i, k);
      const std::int64_t bkj = b(k, j);
      out.assign(i, j,
                 detail::checked_add(bij, sign(bik) * positive_part(detail::checked_mul(bik, bkj))));
    }
  }
  return out;
}

inline SkewMatrix mutate(const SkewMatrix& b, std::string_view k) {
  return mutate(b, b.vertices().index_of(k));
}

struct Arrow {
  Index source;
  Index target;
  friend auto operator<=>(const Arrow&, const Arrow&) = default;
};

/// Quiver view of a skew-symmetric matrix: a multiset of arrows, kept
/// sorted so that equal quivers compare equal.
class Quiver {
 public:
  Quiver(VertexSet vertices, std::vector<Arrow> arrows)
      : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
    for (const Arrow& a : arrows_)
      if (a.source >= vertices_.size() || a.target >= vertices_.size())
        throw std::out_of_range("arrow endpoint out of range");
    std::sort(arrows_.begin(), arrows_.end());
  }

  const VertexSet& vertices() const noexcept { return vertices_; }
  const std::vector<Arrow>& arrows() const noexcept { return arrows_; }

  /// Number of arrows i -> j.
  std::size_t multiplicity(Index i, Index j) const {
    auto [lo, hi] = std::equal_range(arrows_.begin(), arrows_.end(), Arrow{i, j});
    return static_cast<std::size_t>(hi - lo);
  }

  friend bool operator==(const Quiver&, const Quiver&) = default;

 private:
  VertexSet vertices_;
  std::vector<Arrow> arrows_;
};

/// One arrow i -> j for each unit of [b_ij]_+.
inline Quiver quiver_of(const SkewMatrix& b) {
  std::vector<Arrow> arrows;
  for (const auto& [ij, v] : b.upper_entries()) {
    const auto [i, j] = ij;
    const Arrow a = v > 0 ? Arrow{i, j} : Arrow{j, i};
    for (std::int64_t c = 0; c < (v > 0 ? v : -v); ++c) arrows.push_back(a);
  }
  return Quiver(b.vertices(), std::move(arrows));
}

/// Inverse of quiver_of; rejects loops and 2-cycles.
inline SkewMatrix matrix_of(const Quiver& q) {
  SkewMatrix b(q.vertices());
  const auto& arrows = q.arrows();
  for (std::size_t s = 0; s < arrows.size();) {
    const Arrow a = arrows[s];
    if (a.source == a.target)
      throw FormatError("quiver has a loop at '" + q.vertices().label(a.source) + "'");
    std::size_t e = s;
    while (e < arrows.size() && arrows[e] == a) ++e;
    if (q.multiplicity(a.target, a.source) != 0)
      throw FormatError("quiver has a 2-cycle between '" + q.vertices().label(a.source) +
                        "' and '" + q.vertices().label(a.target) + "'");
    b.assign(a.source, a.target, static_cast<std::int64_t>(e - s));
    s = e;
  }
  return b;
}

}  // namespace qlab
