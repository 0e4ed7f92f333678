#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "qlab/gvector.hpp"
#include "qlab/skew_matrix.hpp"

namespace qlab {

/// Endpoint of a walk in the regular tree.
///
/// Slots are positional: slot k always keeps label k, and `star_counts[k]`
/// records how often the walk crossed an edge labeled k (slot k holds a
/// replaced object iff the count is odd). `label_map` is therefore the
/// identity; it is kept explicit so callers can compose it.
struct NodeState {
  MutationPath path;
  SkewMatrix b_at_node;
  std::vector<Index> label_map;
  std::vector<std::size_t> star_counts;
};

/// The matrices B^{t_0}, ..., B^{t_N} along a walk (N + 1 entries).
inline std::vector<SkewMatrix> walk_prefixes(const SkewMatrix& b0, std::span<const Index> steps) {
  std::vector<SkewMatrix> out;
  out.reserve(steps.size() + 1);
  out.push_back(b0);
  for (Index k : steps) out.push_back(mutate(out.back(), k));
  return out;
}

inline NodeState walk(const SkewMatrix& b0, const MutationPath& path) {
  const auto steps = path.resolve(b0.vertices());
  const std::size_t n = b0.size();
  NodeState state{path, b0, {}, std::vector<std::size_t>(n, 0)};
  state.label_map.resize(n);
  for (Index i = 0; i < n; ++i) state.label_map[i] = i;
  for (Index k : steps) {
    state.b_at_node = mutate(state.b_at_node, k);
    ++state.star_counts[k];
  }
  return state;
}

namespace detail {
inline void require_compatible(const GVector& g, const SkewMatrix& bt, Index k) {
  if (g.size() != bt.size()) throw std::invalid_argument("vector and matrix sizes differ");
  if (k >= bt.size()) throw std::out_of_range("mutation index out of range");
}

/// g'_k = -g_k; g'_j = g_j + [coeff(j)]_+ g_k for j != k.
template <class Coefficient>
GVector shear_and_flip(const GVector& g, Index k, Coefficient coeff) {
  GVector out = g;
  const std::int64_t gk = g[k];
  out[k] = checked_neg(gk);
  if (gk == 0) return out;
  for (Index j = 0; j < g.size(); ++j) {
    if (j == k) continue;
    out[j] = checked_add(g[j], checked_mul(positive_part(coeff(j)), gk));
  }
  return out;
}
}  // namespace detail

/// Linear branch sending e_k to -e_k + sum_j [b_jk]_+ e_j.
inline GVector phi_plus(const GVector& g, const SkewMatrix& bt, Index k) {
  detail::require_compatible(g, bt, k);
  return detail::shear_and_flip(g, k, [&](Index j) { return bt(j, k); });
}

/// Linear branch sending e_k to -e_k + sum_j [b_kj]_+ e_j.
inline GVector phi_minus(const GVector& g, const SkewMatrix& bt, Index k) {
  detail::require_compatible(g, bt, k);
  return detail::shear_and_flip(g, k, [&](Index j) { return bt(k, j); });
}

/// Piecewise-linear edge map: phi_plus on g_k >= 0, phi_minus on g_k < 0.
inline GVector phi_step(const GVector& g, const SkewMatrix& bt, Index k) {
  detail::require_compatible(g, bt, k);
  return g[k] >= 0 ? phi_plus(g, bt, k) : phi_minus(g, bt, k);
}

inline GVector phi_plus(const GVector& g, const SkewMatrix& bt, std::string_view k) {
  return phi_plus(g, bt, bt.vertices().index_of(k));
}
inline GVector phi_minus(const GVector& g, const SkewMatrix& bt, std::string_view k) {
  return phi_minus(g, bt, bt.vertices().index_of(k));
}
inline GVector phi_step(const GVector& g, const SkewMatrix& bt, std::string_view k) {
  return phi_step(g, bt, bt.vertices().index_of(k));
}

/// Edge rules usable as the `Step` parameter of the path functions below.
struct PhiStep {
  GVector operator()(const GVector& g, const SkewMatrix& bt, Index k) const {
    return phi_step(g, bt, k);
  }
};

/// Deliberately wrong rule (minus branch disabled), for fault-injection runs.
struct PlusBranchOnly {
  GVector operator()(const GVector& g, const SkewMatrix& bt, Index k) const {
    return phi_plus(g, bt, k);
  }
};

/// phi along a walk starting at the node whose matrix is `b_start`; each
/// edge uses the matrix of its source node.
template <class Step = PhiStep>
GVector phi_path(GVector g, const SkewMatrix& b_start, std::span<const Index> steps,
                 Step step = {}) {
  SkewMatrix bt = b_start;
  for (Index k : steps) {
    g = step(g, bt, k);
    bt = mutate(bt, k);
  }
  return g;
}

template <class Step = PhiStep>
GVector phi_path(GVector g, const SkewMatrix& b_start, const MutationPath& path, Step step = {}) {
  const auto steps = path.resolve(b_start.vertices());
  return phi_path(std::move(g), b_start, std::span<const Index>(steps), step);
}

/// The g-dagger cluster at the end of a walk, one vector per slot.
struct GCluster {
  std::vector<GVector> vectors;

  std::size_t size() const noexcept { return vectors.size(); }
  const GVector& operator[](Index l) const { return vectors.at(l); }
  friend bool operator==(const GCluster&, const GCluster&) = default;
};

/// phi_{t0,t}(e_l) for every slot l in `slots`, where t is the end of
/// `steps`. The forward walk is materialized once and consumed backwards:
/// the reversed step across edge t_{i-1} -- t_i uses B^{t_i}.
template <class Step = PhiStep>
std::vector<GVector> g_dagger_vectors(const SkewMatrix& b0, std::span<const Index> steps,
                                      std::span<const Index> slots, Step step = {}) {
  const auto prefixes = walk_prefixes(b0, steps);
  std::vector<GVector> out;
  out.reserve(slots.size());
  for (Index l : slots) {
    GVector g = GVector::basis(b0.size(), l);
    for (std::size_t i = steps.size(); i > 0; --i) g = step(g, prefixes[i], steps[i - 1]);
    out.push_back(std::move(g));
  }
  return out;
}

template <class Step = PhiStep>
GVector g_dagger_vector(const SkewMatrix& b0, const MutationPath& path, std::string_view l,
                        Step step = {}) {
  const auto steps = path.resolve(b0.vertices());
  const Index slot = b0.vertices().index_of(l);
  return g_dagger_vectors(b0, std::span<const Index>(steps), std::span<const Index>(&slot, 1),
                          step)
      .front();
}

template <class Step = PhiStep>
GCluster g_dagger_cluster(const SkewMatrix& b0, std::span<const Index> steps, Step step = {}) {
  std::vector<Index> slots(b0.size());
  for (Index i = 0; i < slots.size(); ++i) slots[i] = i;
  return GCluster{g_dagger_vectors(b0, steps, std::span<const Index>(slots), step)};
}

template <class Step = PhiStep>
GCluster g_dagger_cluster(const SkewMatrix& b0, const MutationPath& path, Step step = {}) {
  const auto steps = path.resolve(b0.vertices());
  return g_dagger_cluster(b0, std::span<const Index>(steps), step);
}

/// g = positive - negative with both parts >= 0 and disjoint supports.
struct SignSplit {
  GVector positive;
  GVector negative;
};

inline SignSplit pos_neg_split(const GVector& g) {
  SignSplit s{GVector(g.size()), GVector(g.size())};
  for (Index i = 0; i < g.size(); ++i) {
    if (g[i] > 0) s.positive[i] = g[i];
    if (g[i] < 0) s.negative[i] = detail::checked_neg(g[i]);
  }
  return s;
}

}  // namespace qlab
