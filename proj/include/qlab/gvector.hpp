#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qlab/errors.hpp"
#include "qlab/vertex_set.hpp"

namespace qlab {

/// Integer vector in K_{t0} = Z^I, coordinates in VertexSet order.
class GVector {
 public:
  GVector() = default;
  explicit GVector(std::size_t n) : coords_(n, 0) {}
  explicit GVector(std::vector<std::int64_t> coords) : coords_(std::move(coords)) {}
  GVector(std::initializer_list<std::int64_t> coords) : coords_(coords) {}

  static GVector basis(std::size_t n, Index l) {
    GVector e(n);
    e.coords_.at(l) = 1;
    return e;
  }

  std::size_t size() const noexcept { return coords_.size(); }
  std::int64_t operator[](Index i) const { return coords_[i]; }
  std::int64_t& operator[](Index i) { return coords_[i]; }
  const std::vector<std::int64_t>& coords() const noexcept { return coords_; }
  auto begin() const noexcept { return coords_.begin(); }
  auto end() const noexcept { return coords_.end(); }

  bool is_zero() const noexcept {
    for (auto c : coords_)
      if (c != 0) return false;
    return true;
  }

  friend GVector operator+(const GVector& a, const GVector& b) {
    GVector r(a.size());
    for (Index i = 0; i < a.size(); ++i) r[i] = detail::checked_add(a[i], b.coords_.at(i));
    return r;
  }
  friend GVector operator-(const GVector& a, const GVector& b) {
    GVector r(a.size());
    for (Index i = 0; i < a.size(); ++i)
      r[i] = detail::checked_add(a[i], detail::checked_neg(b.coords_.at(i)));
    return r;
  }
  friend GVector operator*(std::int64_t s, const GVector& a) {
    GVector r(a.size());
    for (Index i = 0; i < a.size(); ++i) r[i] = detail::checked_mul(s, a[i]);
    return r;
  }

  friend bool operator==(const GVector&, const GVector&) = default;
  friend auto operator<=>(const GVector&, const GVector&) = default;

 private:
  std::vector<std::int64_t> coords_;
};

/// JSON integer array, e.g. "[-1,1]".
inline std::string to_json_text(const GVector& g) {
  std::string out = "[";
  for (Index i = 0; i < g.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(g[i]);
  }
  return out + "]";
}

/// A walk k_1, ..., k_N in the regular tree starting at the base node.
class MutationPath {
 public:
  MutationPath() = default;
  explicit MutationPath(std::vector<std::string> steps) : steps_(std::move(steps)) {}
  MutationPath(std::initializer_list<std::string> steps) : steps_(steps) {}

  /// Parses a comma-separated literal such as "1,2,1". The empty string is
  /// the empty path; surrounding whitespace of each label is ignored.
  static MutationPath parse(std::string_view text) {
    std::vector<std::string> steps;
    auto trim = [](std::string_view s) {
      while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
      while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
      return s;
    };
    if (trim(text).empty()) return MutationPath();
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = text.find(',', start);
      const auto piece = trim(text.substr(start, comma == std::string_view::npos ? text.npos
                                                                                  : comma - start));
      if (piece.empty()) throw FormatError("empty label in path literal '" + std::string(text) + "'");
      steps.emplace_back(piece);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return MutationPath(std::move(steps));
  }

  const std::vector<std::string>& steps() const noexcept { return steps_; }
  std::size_t size() const noexcept { return steps_.size(); }
  bool empty() const noexcept { return steps_.empty(); }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < steps_.size(); ++i) {
      if (i) out += ',';
      out += steps_[i];
    }
    return out;
  }

  MutationPath then(std::string label) const {
    MutationPath p = *this;
    p.steps_.push_back(std::move(label));
    return p;
  }

  /// The same tree node with every immediate backtrack k,k removed.
  MutationPath reduced() const {
    std::vector<std::string> out;
    for (const auto& s : steps_) {
      if (!out.empty() && out.back() == s)
        out.pop_back();
      else
        out.push_back(s);
    }
    return MutationPath(std::move(out));
  }

  /// Step indices in `vertices`; throws UnknownVertex.
  std::vector<Index> resolve(const VertexSet& vertices) const {
    std::vector<Index> out;
    out.reserve(steps_.size());
    for (const auto& s : steps_) out.push_back(vertices.index_of(s));
    return out;
  }

  friend bool operator==(const MutationPath&, const MutationPath&) = default;
  friend auto operator<=>(const MutationPath&, const MutationPath&) = default;

 private:
  std::vector<std::string> steps_;
};

}  // namespace qlab
