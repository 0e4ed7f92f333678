#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "qlab/quiver_json.hpp"
#include "qlab/verifier.hpp"

namespace qlab {

inline constexpr std::string_view kReportFormat = "qlab-report-v1";

/// Which checks `run_verify` performs.
struct VerifyOptions {
  bool sign = true;
  bool basis = true;
  bool inject = true;
  bool transform = true;
  std::size_t depth = 6;
  std::size_t transform_samples = 200;
  std::size_t transform_max_length = 6;
  std::uint64_t transform_seed = 20070801;
  /// Run the engine with the minus branch of phi disabled.
  bool inject_fault = false;
  /// Failures listed per check; the counts are always complete.
  std::size_t max_listed_failures = 20;
};

struct VerifyOutcome {
  OrderedJson report;
  bool ok;
};

namespace detail {

inline OrderedJson vector_json(const GVector& g) { return OrderedJson(g.coords()); }

struct CheckTally {
  std::string name;
  std::size_t checked = 0;
  std::size_t failed = 0;
};

template <class Step>
VerifyOutcome run_verify_with(const SkewMatrix& b0, const VerifyOptions& opt, Step step) {
  const bool need_graph = opt.sign || opt.basis || opt.inject;
  OrderedJson failures = OrderedJson::array();
  std::vector<CheckTally> tallies;
  auto fail = [&](CheckTally& t, OrderedJson entry) {
    ++t.failed;
    std::size_t listed = 0;
    for (const auto& f : failures)
      if (f["check"] == t.name) ++listed;
    if (listed < opt.max_listed_failures) failures.push_back(std::move(entry));
  };

  OrderedJson doc;
  doc["format"] = kReportFormat;
  doc["quiver"] = quiver_to_json(b0);
  OrderedJson suites = OrderedJson::array();
  if (opt.sign) suites.push_back("sign");
  if (opt.basis) suites.push_back("basis");
  if (opt.inject) suites.push_back("inject");
  if (opt.transform) suites.push_back("transform");
  doc["suites"] = suites;
  doc["depth"] = opt.depth;
  if (opt.inject_fault) doc["fault"] = "phi-minus-disabled";

  if (need_graph) {
    const auto graph = enumerate(b0, EnumerateOptions{opt.depth, opt.inject}, step);
    doc["closed"] = graph.closed;
    OrderedJson counts;
    counts["clusters"] = graph.clusters();
    counts["g_vectors"] = graph.distinct_g_vectors;
    if (opt.inject) {
      counts["cluster_variables"] = graph.distinct_variables;
      counts["positivity_violations"] = graph.positivity_violations;
    }
    doc["counts"] = counts;

    if (opt.sign) {
      CheckTally t{"sign"};
      for (const auto& node : graph.nodes) {
        ++t.checked;
        if (node.sign_witness) {
          const auto& w = *node.sign_witness;
          fail(t, {{"check", "sign"},
                   {"path", node.path.to_string()},
                   {"witness",
                    {{"coordinate", b0.vertices().label(w.coordinate)},
                     {"positive", vector_json(node.cluster[w.positive])},
                     {"negative", vector_json(node.cluster[w.negative])}}}});
        }
      }
      tallies.push_back(t);
    }
    if (opt.basis) {
      CheckTally t{"basis"};
      for (const auto& node : graph.nodes) {
        ++t.checked;
        if (node.det != 1 && node.det != -1)
          fail(t, {{"check", "basis"},
                   {"path", node.path.to_string()},
                   {"witness", {{"det", node.det.str()}}}});
      }
      tallies.push_back(t);
    }
    if (opt.inject) {
      CheckTally oracle{"oracle"};
      oracle.checked = graph.clusters();
      std::set<std::string> failing_nodes;
      for (const auto& issue : graph.oracle_issues) {
        fail(oracle, {{"check", "oracle"},
                      {"path", issue.path.to_string()},
                      {"witness", {{"kind", issue.kind}, {"detail", issue.detail}}}});
        failing_nodes.insert(issue.path.to_string());
      }
      oracle.failed = failing_nodes.size();
      tallies.push_back(oracle);

      CheckTally t{"inject"};
      t.checked = 1;
      if (auto w = check_injectivity(graph)) {
        const auto& a = graph.nodes[w->node_a];
        const auto& b = graph.nodes[w->node_b];
        auto site = [&](const NodeRecord& node, Index slot) {
          return OrderedJson{{"path", node.path.to_string()},
                             {"slot", b0.vertices().label(slot)},
                             {"variable", node.variables[slot].to_string()},
                             {"g", vector_json(node.cluster[slot])}};
        };
        fail(t, {{"check", "inject"},
                 {"path", b.path.to_string()},
                 {"witness",
                  {{"kind", w->same_variable ? "variable-with-two-vectors"
                                             : "vector-with-two-variables"},
                   {"first", site(a, w->slot_a)},
                   {"second", site(b, w->slot_b)}}}});
      }
      tallies.push_back(t);
    }
  }

  if (opt.transform) {
    CheckTally t{"transform"};
    const auto samples = sample_transform_cases(b0.vertices(), opt.transform_samples,
                                                opt.transform_max_length, opt.transform_seed);
    for (Index k = 0; k < b0.size(); ++k) {
      const auto result = transform_check(b0, k, samples);
      t.checked += result.checked;
      for (const auto& m : result.mismatches)
        fail(t, {{"check", "transform"},
                 {"path", m.sample.path.to_string()},
                 {"witness",
                  {{"k", b0.vertices().label(k)},
                   {"slot", m.sample.slot},
                   {"phi_image", vector_json(m.transformed)},
                   {"from_mutated_base", vector_json(m.from_mutated)}}}});
    }
    tallies.push_back(t);
  }

  OrderedJson checks = OrderedJson::array();
  bool ok = true;
  for (const auto& t : tallies) {
    checks.push_back({{"name", t.name}, {"checked", t.checked}, {"failed", t.failed}});
    ok = ok && t.failed == 0;
  }
  doc["checks"] = checks;
  doc["failures"] = failures;
  doc["ok"] = ok;
  return {std::move(doc), ok};
}

}  // namespace detail

/// Runs the selected checks and assembles a `qlab-report-v1` document.
/// Output depends only on the inputs.
inline VerifyOutcome run_verify(const SkewMatrix& b0, const VerifyOptions& opt) {
  if (opt.inject_fault) return detail::run_verify_with(b0, opt, PlusBranchOnly{});
  return detail::run_verify_with(b0, opt, PhiStep{});
}

}  // namespace qlab
