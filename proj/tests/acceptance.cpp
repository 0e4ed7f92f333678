// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. All thresholds are exact (zero failures / exact counts).

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli_runner.hpp"
#include "qlab/qlab.hpp"
#include "support.hpp"

using namespace qlab;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int run_criterion(int id, const std::string& title, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char timing[32];
  std::snprintf(timing, sizeof timing, "%.2fs", secs);
  std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << id << ". " << title << ": " << o.detail
            << " (" << timing << ")" << std::endl;
  return o.pass ? 0 : 1;
}

/// Random skew-symmetric matrices with n in [1, 8] and entries in [-4, 4].
std::vector<SkewMatrix> sample_matrices(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> size(1, 8);
  std::vector<SkewMatrix> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(testing::random_skew(rng, size(rng), 4));
  return out;
}

/// All non-backtracking walks of length <= max_length from the base node.
std::vector<MutationPath> non_backtracking_paths(const VertexSet& vs, std::size_t max_length) {
  std::vector<MutationPath> all{MutationPath{}};
  std::vector<MutationPath> frontier{MutationPath{}};
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::vector<MutationPath> next;
    for (const auto& p : frontier)
      for (const auto& label : vs.labels())
        if (p.empty() || p.steps().back() != label) next.push_back(p.then(label));
    all.insert(all.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return all;
}

struct NamedGraph {
  std::string name;
  ExchangeGraphReport report;
};

}  // namespace

int main() {
  int failures = 0;
  const auto matrices = sample_matrices(20070801, 10000);

  failures += run_criterion(1, "mutation involution", [&] {
    std::size_t checked = 0, bad = 0;
    for (const auto& b : matrices)
      for (Index k = 0; k < b.size(); ++k) {
        ++checked;
        if (mutate(mutate(b, k), k) != b) ++bad;
      }
    return Outcome{bad == 0, std::to_string(matrices.size()) + " matrices, " +
                                 std::to_string(checked) + " (B,k) pairs, " +
                                 std::to_string(bad) + " failures"};
  });

  failures += run_criterion(2, "phi edge round trip", [&] {
    std::mt19937_64 rng(42);
    std::size_t checked = 0, bad = 0;
    for (const auto& b : matrices)
      for (Index k = 0; k < b.size(); ++k) {
        const auto g = testing::random_vector(rng, b.size(), 10);
        ++checked;
        if (phi_step(phi_step(g, b, k), mutate(b, k), k) != g) ++bad;
      }
    return Outcome{bad == 0, std::to_string(checked) + " (B,k,g) triples, " +
                                 std::to_string(bad) + " failures"};
  });

  failures += run_criterion(3, "g-dagger = oracle g-vector", [&] {
    struct Case {
      std::string name;
      SkewMatrix b;
      std::size_t max_length;
    };
    const std::vector<Case> cases{{"A2", testing::a2(), 6},
                                  {"A3", testing::a3(), 6},
                                  {"b12=2", testing::kronecker(), 8}};
    std::size_t checked = 0, bad = 0;
    std::ostringstream detail;
    for (const auto& c : cases) {
      const PrincipalOracle oracle(c.b);
      std::size_t local = 0;
      for (const auto& p : non_backtracking_paths(c.b.vertices(), c.max_length)) {
        const auto steps = p.resolve(c.b.vertices());
        const auto cluster = g_dagger_cluster(c.b, std::span<const Index>(steps));
        for (Index l = 0; l < c.b.size(); ++l) {
          ++checked;
          ++local;
          if (oracle.g_vector(p, c.b.vertices().label(l)) != cluster[l]) ++bad;
        }
      }
      detail << c.name << " " << local << " pairs; ";
    }
    detail << bad << " mismatches of " << checked;
    return Outcome{bad == 0, detail.str()};
  });

  std::vector<NamedGraph> graphs;
  for (auto& [name, b] : std::vector<std::pair<std::string, SkewMatrix>>{
           {"A2", testing::a2()},
           {"A3", testing::a3()},
           {"A4", testing::a4()},
           {"b12=2", testing::kronecker()}})
    graphs.push_back({name, enumerate(b, {8, true})});

  failures += run_criterion(4, "sign-coherence of g-dagger clusters (depth 8)", [&] {
    std::size_t checked = 0, bad = 0;
    for (const auto& g : graphs)
      for (const auto& node : g.report.nodes) {
        ++checked;
        if (node.sign_witness) ++bad;
      }
    return Outcome{bad == 0, std::to_string(checked) + " clusters in A2/A3/A4/b12=2, " +
                                 std::to_string(bad) + " incoherent"};
  });

  failures += run_criterion(5, "basis theorem |det| = 1", [&] {
    std::size_t checked = 0, bad = 0;
    for (const auto& g : graphs)
      for (const auto& node : g.report.nodes) {
        ++checked;
        if (node.det != 1 && node.det != -1) ++bad;
      }
    return Outcome{bad == 0, std::to_string(checked) + " clusters, " + std::to_string(bad) +
                                 " with |det| != 1"};
  });

  failures += run_criterion(6, "injectivity and finite-type counts", [&] {
    struct Expected {
      std::size_t variables, clusters;
    };
    const Expected expected[] = {{5, 5}, {9, 14}, {14, 42}};
    bool ok = true;
    std::ostringstream detail;
    for (std::size_t i = 0; i < graphs.size(); ++i) {
      const auto& r = graphs[i].report;
      const bool injective = !check_injectivity(r).has_value();
      ok = ok && injective && r.distinct_variables == r.distinct_g_vectors;
      detail << graphs[i].name << " " << r.distinct_g_vectors << "/" << r.distinct_variables
             << "/" << r.clusters() << (r.closed ? " closed" : " open")
             << (injective ? "" : " COLLISION") << "; ";
      if (i < 3)
        ok = ok && r.closed && r.distinct_g_vectors == expected[i].variables &&
             r.distinct_variables == expected[i].variables &&
             r.clusters() == expected[i].clusters;
    }
    detail << "(g-vectors/polynomials/clusters)";
    return Outcome{ok, detail.str()};
  });

  failures += run_criterion(7, "Laurent phenomenon and homogeneity", [&] {
    std::size_t seeds = 0, laurent = 0, homogeneity = 0, other = 0;
    for (const auto& g : graphs) {
      seeds += g.report.clusters();
      for (const auto& issue : g.report.oracle_issues) {
        if (issue.kind == "laurent")
          ++laurent;
        else if (issue.kind == "homogeneity")
          ++homogeneity;
        else
          ++other;
      }
    }
    return Outcome{laurent + homogeneity + other == 0,
                   std::to_string(seeds) + " seeds, " + std::to_string(laurent) +
                       " inexact divisions, " + std::to_string(homogeneity) +
                       " inhomogeneous, " + std::to_string(other) + " other oracle issues"};
  });

  failures += run_criterion(8, "transform_check in A3", [&] {
    const auto linear = testing::a3();
    const auto cyclic = mutate(linear, "2");
    const auto samples = sample_transform_cases(linear.vertices(), 200, 6, 20070801);
    std::size_t checked = 0, bad = 0;
    for (const auto* b : {&linear, &cyclic})
      for (Index k = 0; k < b->size(); ++k) {
        const auto r = transform_check(*b, k, samples);
        checked += r.checked;
        bad += r.mismatches.size();
      }
    return Outcome{bad == 0, "2 orientations x 3 edges x 200 samples = " +
                                 std::to_string(checked) + " checks, " + std::to_string(bad) +
                                 " mismatches"};
  });

  failures += run_criterion(9, "CLI golden files byte-identical across runs", [&] {
    std::size_t cases = 0, bad = 0;
    std::string first_bad;
    for (const auto& c : testing::kGoldenCases) {
      ++cases;
      const auto args = testing::golden_args(c);
      const auto a = testing::run_cli(args);
      const auto b = testing::run_cli(args);
      const auto golden = testing::read_file(std::string(QLAB_GOLDEN_DIR) + "/" + c.file);
      if (a.out != b.out || a.out != golden || golden.empty()) {
        ++bad;
        if (first_bad.empty()) first_bad = c.file;
      }
    }
    return Outcome{bad == 0, std::to_string(cases) + " golden files, " + std::to_string(bad) +
                                 " differing" + (first_bad.empty() ? "" : " (" + first_bad + ")")};
  });

  std::cout << (failures == 0 ? "ALL PRIMARY CRITERIA PASS" : "SOME CRITERIA FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
