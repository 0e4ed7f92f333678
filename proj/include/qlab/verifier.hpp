#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "qlab/canonical.hpp"
#include "qlab/engine.hpp"
#include "qlab/laurent.hpp"
#include "qlab/oracle.hpp"

namespace qlab {

// ---------------------------------------------------------------------------
// Sign-coherence and unimodularity

/// Coordinate on which two vectors of a set have strictly opposite signs;
/// `positive` and `negative` index into the checked set.
struct SignWitness {
  Index coordinate;
  std::size_t positive;
  std::size_t negative;
};

/// nullopt iff the set lies in one closed hyperquadrant.
inline std::optional<SignWitness> check_sign_coherent(std::span<const GVector> vs) {
  if (vs.empty()) return std::nullopt;
  const std::size_t n = vs.front().size();
  for (Index i = 0; i < n; ++i) {
    std::optional<std::size_t> pos, neg;
    for (std::size_t v = 0; v < vs.size(); ++v) {
      if (vs[v][i] > 0 && !pos) pos = v;
      if (vs[v][i] < 0 && !neg) neg = v;
    }
    if (pos && neg) return SignWitness{i, *pos, *neg};
  }
  return std::nullopt;
}

/// Exact determinant by fraction-free (Bareiss) elimination.
inline Integer determinant(std::vector<std::vector<Integer>> m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("determinant of a non-square matrix");
  if (n == 0) return 1;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

/// Determinant of the matrix whose columns are the given vectors.
inline Integer determinant(std::span<const GVector> columns) {
  const std::size_t n = columns.size();
  std::vector<std::vector<Integer>> m(n, std::vector<Integer>(n));
  for (std::size_t c = 0; c < n; ++c) {
    if (columns[c].size() != n) throw std::invalid_argument("vector set is not square");
    for (std::size_t r = 0; r < n; ++r) m[r][c] = columns[c][r];
  }
  return determinant(std::move(m));
}

struct UnimodularResult {
  bool ok;
  Integer det;
};

inline UnimodularResult check_unimodular(std::span<const GVector> vectors) {
  Integer det = determinant(vectors);
  return {det == 1 || det == -1, det};
}

inline UnimodularResult check_unimodular(const GCluster& c) {
  return check_unimodular(std::span<const GVector>(c.vectors));
}

// ---------------------------------------------------------------------------
// Exchange-graph enumeration

struct EnumerateOptions {
  std::size_t max_depth = 6;
  /// Also compute every cluster variable with the principal oracle.
  bool with_oracle = false;
};

/// Kinds: "laurent" (inexact exchange division), "homogeneity",
/// "containment" (negative y-exponent), "coherence" (C-matrix column),
/// "agreement" (oracle degree differs from the g-dagger vector).
struct OracleIssue {
  MutationPath path;
  std::string kind;
  std::string detail;
};

struct NodeRecord {
  MutationPath path;
  std::size_t depth = 0;
  SkewMatrix b;
  GCluster cluster;
  std::string key;
  std::optional<SignWitness> sign_witness;
  Integer det;
  /// Oracle data, empty when disabled or when the oracle failed here.
  std::vector<LaurentPoly> variables;
  std::vector<GVector> oracle_degrees;
};

struct ExchangeGraphReport {
  SkewMatrix initial;
  EnumerateOptions options;
  bool closed = false;
  std::vector<NodeRecord> nodes;
  std::size_t distinct_g_vectors = 0;
  std::size_t distinct_variables = 0;
  std::size_t positivity_violations = 0;
  std::vector<OracleIssue> oracle_issues;

  std::size_t clusters() const noexcept { return nodes.size(); }
};

/// Breadth-first walk of the exchange graph from the base node. Nodes are
/// identified up to simultaneous relabeling of (B_t, g-dagger cluster).
/// Nodes deeper than `max_depth` are not recorded; the report is closed iff
/// no such node exists. Immediate backtracking is skipped.
template <class Step = PhiStep>
ExchangeGraphReport enumerate(const SkewMatrix& b0, EnumerateOptions options, Step step = {}) {
  const std::size_t n = b0.size();
  ExchangeGraphReport report{b0, options, true, {}, 0, 0, 0, {}};

  std::unordered_map<std::string, std::size_t> seen;
  std::vector<std::vector<Index>> steps_of;
  std::vector<std::shared_ptr<const ExtendedSeed>> seeds;
  const Grading grading(b0);

  auto record = [&](MutationPath path, std::vector<Index> steps, std::size_t depth, SkewMatrix b,
                    GCluster cluster, std::string key,
                    std::shared_ptr<const ExtendedSeed> parent_seed, std::optional<Index> k) {
    NodeRecord node{std::move(path), depth,          std::move(b), std::move(cluster),
                    std::move(key),  std::nullopt,   Integer{},    {},
                    {}};
    node.sign_witness = check_sign_coherent(node.cluster.vectors);
    node.det = determinant(node.cluster.vectors);

    std::shared_ptr<const ExtendedSeed> seed;
    if (options.with_oracle && (parent_seed || !k)) {
      auto issue = [&](std::string kind, std::string detail) {
        report.oracle_issues.push_back({node.path, std::move(kind), std::move(detail)});
      };
      try {
        seed = k ? std::make_shared<const ExtendedSeed>(seed_mutate(*parent_seed, *k))
                 : std::make_shared<const ExtendedSeed>(ExtendedSeed::initial(b0));
        for (Index l = 0; l < n; ++l) {
          const LaurentPoly& x = seed->xs[l];
          PrincipalOracle::check_y_containment(x);
          GVector g = degree(x, grading);
          if (g != node.cluster[l])
            issue("agreement", "slot " + b0.vertices().label(l) + ": oracle " + to_json_text(g) +
                                   ", g-dagger " + to_json_text(node.cluster[l]));
          node.variables.push_back(x);
          node.oracle_degrees.push_back(std::move(g));
        }
      } catch (const InexactDivision& e) {
        issue("laurent", e.what());
        seed.reset();
      } catch (const Inhomogeneous& e) {
        issue("homogeneity", e.what());
      } catch (const InvariantViolation& e) {
        const std::string what = e.what();
        issue(what.find("y-exponent") != std::string::npos ? "containment" : "coherence", what);
        seed.reset();
      }
      if (node.variables.size() != n) {
        node.variables.clear();
        node.oracle_degrees.clear();
      }
    }
    seen.emplace(node.key, report.nodes.size());
    report.nodes.push_back(std::move(node));
    steps_of.push_back(std::move(steps));
    seeds.push_back(std::move(seed));
  };

  {
    GCluster root = g_dagger_cluster(b0, std::span<const Index>{}, step);
    std::string key = canonical_key(b0, root.vectors);
    record(MutationPath(), {}, 0, b0, std::move(root), std::move(key), nullptr, std::nullopt);
  }

  for (std::size_t idx = 0; idx < report.nodes.size(); ++idx) {
    for (Index k = 0; k < n; ++k) {
      const auto& parent_steps = steps_of[idx];
      if (!parent_steps.empty() && parent_steps.back() == k) continue;
      std::vector<Index> steps = parent_steps;
      steps.push_back(k);
      GCluster cluster = g_dagger_cluster(b0, std::span<const Index>(steps), step);
      SkewMatrix b = mutate(report.nodes[idx].b, k);
      std::string key = canonical_key(b, cluster.vectors);
      if (seen.count(key)) continue;
      const std::size_t depth = report.nodes[idx].depth + 1;
      if (depth > options.max_depth) {
        report.closed = false;
        continue;
      }
      record(report.nodes[idx].path.then(b0.vertices().label(k)), std::move(steps), depth,
             std::move(b), std::move(cluster), std::move(key), seeds[idx], k);
    }
  }

  std::set<GVector> vectors;
  std::set<std::string> variables;
  for (const auto& node : report.nodes) {
    vectors.insert(node.cluster.vectors.begin(), node.cluster.vectors.end());
    for (const auto& x : node.variables) {
      if (!variables.insert(x.to_string()).second) continue;
      for (const auto& [e, c] : x.terms()) {
        if (c < 0) {
          ++report.positivity_violations;
          break;
        }
      }
    }
  }
  report.distinct_g_vectors = vectors.size();
  report.distinct_variables = variables.size();
  return report;
}

// ---------------------------------------------------------------------------
// Injectivity of the index map

/// Two (node, slot) pairs on which "equal cluster variable" and "equal
/// g-dagger vector" disagree.
struct CollisionWitness {
  std::size_t node_a;
  Index slot_a;
  std::size_t node_b;
  Index slot_b;
  bool same_variable;  // true: same variable, different vectors
};

/// nullopt iff cluster variable <-> g-dagger vector is a bijection over all
/// visited (node, slot) pairs that carry oracle data. Requires an
/// enumeration run with the oracle enabled.
inline std::optional<CollisionWitness> check_injectivity(const ExchangeGraphReport& report) {
  if (!report.options.with_oracle)
    throw std::invalid_argument("check_injectivity needs an enumeration with the oracle enabled");
  using Site = std::pair<std::size_t, Index>;
  std::map<std::string, std::pair<Site, const GVector*>> by_variable;
  std::map<GVector, std::pair<Site, std::string>> by_vector;
  for (std::size_t v = 0; v < report.nodes.size(); ++v) {
    const auto& node = report.nodes[v];
    for (Index l = 0; l < node.variables.size(); ++l) {
      const std::string text = node.variables[l].to_string();
      const GVector& g = node.cluster[l];
      auto [vit, vnew] = by_variable.try_emplace(text, Site{v, l}, &g);
      if (!vnew && *vit->second.second != g)
        return CollisionWitness{vit->second.first.first, vit->second.first.second, v, l, true};
      auto [git, gnew] = by_vector.try_emplace(g, Site{v, l}, text);
      if (!gnew && git->second.second != text)
        return CollisionWitness{git->second.first.first, git->second.first.second, v, l, false};
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Change of base node

struct TransformSample {
  MutationPath path;
  std::string slot;
};

struct TransformMismatch {
  TransformSample sample;
  GVector from_base;     // oracle g-vector over B0
  GVector transformed;   // phi_step of the above across edge k
  GVector from_mutated;  // oracle g-vector over mu_k(B0)
};

struct TransformResult {
  std::size_t checked = 0;
  std::vector<TransformMismatch> mismatches;
  bool ok() const noexcept { return mismatches.empty(); }
};

/// The same tree node seen from the neighbor of the base across edge k:
/// [k] followed by `path`, cancelling the first step when it is k.
inline MutationPath rebase_path(const MutationPath& path, const std::string& k) {
  if (!path.empty() && path.steps().front() == k)
    return MutationPath(std::vector<std::string>(path.steps().begin() + 1, path.steps().end()));
  std::vector<std::string> steps{k};
  steps.insert(steps.end(), path.steps().begin(), path.steps().end());
  return MutationPath(std::move(steps));
}

/// For each sample, compares phi_step(g, B0, k) against the oracle g-vector
/// of the same cluster variable computed from the base mu_k(B0).
inline TransformResult transform_check(const SkewMatrix& b0, Index k,
                                       std::span<const TransformSample> samples) {
  const PrincipalOracle base(b0);
  const PrincipalOracle moved(mutate(b0, k));
  const std::string& label = b0.vertices().label(k);
  TransformResult result;
  for (const auto& s : samples) {
    GVector g = base.g_vector(s.path, s.slot);
    GVector expected = phi_step(g, b0, k);
    GVector actual = moved.g_vector(rebase_path(s.path, label), s.slot);
    ++result.checked;
    if (expected != actual)
      result.mismatches.push_back({s, std::move(g), std::move(expected), std::move(actual)});
  }
  return result;
}

/// Deterministic pseudo-random (path, slot) pairs: lengths uniform in
/// [0, max_length], non-backtracking steps.
inline std::vector<TransformSample> sample_transform_cases(const VertexSet& vertices,
                                                           std::size_t count,
                                                           std::size_t max_length,
                                                           std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t n = vertices.size();
  std::uniform_int_distribution<std::size_t> length(0, max_length);
  std::uniform_int_distribution<Index> vertex(0, n - 1);
  std::vector<TransformSample> out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    const std::size_t len = length(rng);
    std::vector<std::string> steps;
    std::optional<Index> last;
    for (std::size_t i = 0; i < len; ++i) {
      Index k = vertex(rng);
      if (n > 1)
        while (last && k == *last) k = vertex(rng);
      steps.push_back(vertices.label(k));
      last = k;
    }
    out.push_back({MutationPath(std::move(steps)), vertices.label(vertex(rng))});
  }
  return out;
}

}  // namespace qlab
