#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "qlab/errors.hpp"
#include "qlab/skew_matrix.hpp"

namespace qlab {

using OrderedJson = nlohmann::ordered_json;

inline constexpr std::string_view kQuiverFormat = "qlab-quiver-v1";

/// Reads a `qlab-quiver-v1` document:
///   {"format":"qlab-quiver-v1","vertices":[...],"b":[[i,j,b_ij],...]}
/// listing only pairs with b_ij > 0. Throws FormatError on anything else.
inline SkewMatrix quiver_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw FormatError("quiver document must be a JSON object");
  auto fmt = doc.find("format");
  if (fmt == doc.end() || !fmt->is_string() || fmt->get<std::string>() != kQuiverFormat)
    throw FormatError("expected \"format\":\"qlab-quiver-v1\"");

  auto vs = doc.find("vertices");
  if (vs == doc.end() || !vs->is_array()) throw FormatError("\"vertices\" must be an array");
  std::vector<std::string> labels;
  for (const auto& v : *vs) {
    if (!v.is_string()) throw FormatError("vertex labels must be strings");
    labels.push_back(v.get<std::string>());
  }
  SkewMatrix b{VertexSet(std::move(labels))};

  auto arr = doc.find("b");
  if (arr == doc.end() || !arr->is_array()) throw FormatError("\"b\" must be an array");
  std::set<std::pair<Index, Index>> seen;
  for (const auto& t : *arr) {
    if (!t.is_array() || t.size() != 3 || !t[0].is_string() || !t[1].is_string() ||
        !t[2].is_number_integer())
      throw FormatError("each \"b\" entry must be [label, label, integer]");
    const auto si = t[0].get<std::string>();
    const auto sj = t[1].get<std::string>();
    const auto value = t[2].get<std::int64_t>();
    const auto i = b.vertices().find(si);
    const auto j = b.vertices().find(sj);
    if (!i || !j) throw FormatError("\"b\" entry names an undeclared vertex");
    if (*i == *j) throw FormatError("loop at vertex '" + si + "'");
    if (value <= 0) throw FormatError("\"b\" entries must be positive");
    if (!seen.insert({std::min(*i, *j), std::max(*i, *j)}).second)
      throw FormatError("pair '" + si + "','" + sj + "' listed more than once");
    b.assign(*i, *j, value);
  }
  return b;
}

inline SkewMatrix read_quiver(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
  return quiver_from_json(doc);
}

/// Triples sorted lexicographically by (source label, target label).
inline OrderedJson quiver_to_json(const SkewMatrix& b) {
  std::vector<std::tuple<std::string, std::string, std::int64_t>> triples;
  for (const auto& [ij, v] : b.upper_entries()) {
    const auto& li = b.vertices().label(ij.first);
    const auto& lj = b.vertices().label(ij.second);
    if (v > 0)
      triples.emplace_back(li, lj, v);
    else
      triples.emplace_back(lj, li, -v);
  }
  std::sort(triples.begin(), triples.end());

  OrderedJson doc;
  doc["format"] = kQuiverFormat;
  doc["vertices"] = b.vertices().labels();
  doc["b"] = OrderedJson::array();
  for (const auto& [i, j, v] : triples) doc["b"].push_back({i, j, v});
  return doc;
}

/// Compact single-line serialization, no trailing newline.
inline std::string write_quiver(const SkewMatrix& b) { return quiver_to_json(b).dump(); }

}  // namespace qlab
