#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qlab/gvector.hpp"
#include "qlab/skew_matrix.hpp"

namespace qlab::testing {

/// Uniform random skew-symmetric matrix, entries in [-bound, bound].
inline SkewMatrix random_skew(std::mt19937_64& rng, std::size_t n, std::int64_t bound) {
  std::uniform_int_distribution<std::int64_t> entry(-bound, bound);
  std::vector<std::vector<std::int64_t>> rows(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      rows[i][j] = entry(rng);
      rows[j][i] = -rows[i][j];
    }
  return SkewMatrix::from_dense(rows);
}

inline GVector random_vector(std::mt19937_64& rng, std::size_t n, std::int64_t bound) {
  std::uniform_int_distribution<std::int64_t> entry(-bound, bound);
  GVector g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = entry(rng);
  return g;
}

/// Dense matrix mutation via b'_ij = b_ij + (|b_ik| b_kj + b_ik |b_kj|) / 2,
/// an algebraically different form of the rule used by the library.
inline std::vector<std::vector<std::int64_t>> reference_mutate(
    const std::vector<std::vector<std::int64_t>>& b, std::size_t k) {
  const std::size_t n = b.size();
  auto out = b;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == k || j == k)
        out[i][j] = -b[i][j];
      else
        out[i][j] = b[i][j] + (std::abs(b[i][k]) * b[k][j] + b[i][k] * std::abs(b[k][j])) / 2;
    }
  return out;
}

inline SkewMatrix a2() { return SkewMatrix::from_dense({{0, 1}, {-1, 0}}); }
inline SkewMatrix a3() { return SkewMatrix::from_dense({{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}}); }
inline SkewMatrix a4() {
  return SkewMatrix::from_dense(
      {{0, 1, 0, 0}, {-1, 0, 1, 0}, {0, -1, 0, 1}, {0, 0, -1, 0}});
}
inline SkewMatrix kronecker() { return SkewMatrix::from_dense({{0, 2}, {-2, 0}}); }
inline SkewMatrix markov() {
  return SkewMatrix::from_dense({{0, 2, -2}, {-2, 0, 2}, {2, -2, 0}});
}

}  // namespace qlab::testing

namespace qlab::testing {

/// Cofactor-expansion determinant; exponential, for small test matrices only.
inline std::int64_t cofactor_det(const std::vector<std::vector<std::int64_t>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  std::int64_t det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c] == 0) continue;
    std::vector<std::vector<std::int64_t>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<std::int64_t> row;
      for (std::size_t cc = 0; cc < n; ++cc)
        if (cc != c) row.push_back(m[r][cc]);
      minor.push_back(row);
    }
    det += (c % 2 ? -1 : 1) * m[0][c] * cofactor_det(minor);
  }
  return det;
}

/// Matrix whose columns are the given vectors.
inline std::vector<std::vector<std::int64_t>> columns_matrix(const std::vector<GVector>& cols) {
  const std::size_t n = cols.size();
  std::vector<std::vector<std::int64_t>> m(n, std::vector<std::int64_t>(n));
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) m[r][c] = cols[c][r];
  return m;
}

}  // namespace qlab::testing
