#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qlab/gvector.hpp"
#include "qlab/skew_matrix.hpp"

namespace qlab {

/// Largest vertex count canonical_key accepts (exhaustive search over n!).
inline constexpr std::size_t kCanonicalKeyMaxVertices = 9;

/// Relabeling-invariant key of a matrix together with an optional list of
/// vectors attached to its vertices. A permutation acts on the rows and
/// columns of `b` and on the positions of `attached`, never on vector
/// coordinates. The key is the lexicographically least serialization over
/// all permutations, so two inputs share a key iff some simultaneous
/// relabeling maps one onto the other. Labels do not enter the key.
inline std::string canonical_key(const SkewMatrix& b, std::span<const GVector> attached = {}) {
  const std::size_t n = b.size();
  if (n > kCanonicalKeyMaxVertices)
    throw std::invalid_argument("canonical_key supports at most 9 vertices");
  if (!attached.empty() && attached.size() != n)
    throw std::invalid_argument("canonical_key needs exactly one attached vector per vertex");

  const auto dense = b.dense();
  std::vector<Index> perm(n);
  std::iota(perm.begin(), perm.end(), Index{0});

  std::vector<std::int64_t> best;
  std::vector<std::int64_t> candidate;
  bool first = true;
  do {
    candidate.clear();
    for (Index p = 0; p < n; ++p)
      for (Index q = p + 1; q < n; ++q) candidate.push_back(dense[perm[p]][perm[q]]);
    for (Index p = 0; p < attached.size(); ++p) {
      const GVector& v = attached[perm[p]];
      candidate.push_back(static_cast<std::int64_t>(v.size()));
      candidate.insert(candidate.end(), v.begin(), v.end());
    }
    if (first || candidate < best) {
      best.swap(candidate);
      first = false;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::string key = "n" + std::to_string(n) + (attached.empty() ? ":" : "+v:");
  for (std::size_t i = 0; i < best.size(); ++i) {
    if (i) key += ',';
    key += std::to_string(best[i]);
  }
  return key;
}

}  // namespace qlab
