#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "qlab/errors.hpp"

namespace qlab {

/// Position of a vertex inside its VertexSet.
using Index = std::size_t;

/// Ordered, duplicate-free set of opaque vertex labels. The creation order
/// fixes the coordinate order of every matrix and vector built over it.
/// Copies share the underlying storage.
class VertexSet {
 public:
  explicit VertexSet(std::vector<std::string> labels) {
    if (labels.empty()) throw FormatError("vertex set must not be empty");
    auto data = std::make_shared<Data>();
    data->index.reserve(labels.size());
    for (Index i = 0; i < labels.size(); ++i) {
      if (!data->index.emplace(labels[i], i).second)
        throw FormatError("duplicate vertex label '" + labels[i] + "'");
    }
    data->labels = std::move(labels);
    data_ = std::move(data);
  }

  /// Labels "1", "2", ..., "n".
  static VertexSet numbered(std::size_t n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
    return VertexSet(std::move(labels));
  }

  std::size_t size() const noexcept { return data_->labels.size(); }
  const std::vector<std::string>& labels() const noexcept { return data_->labels; }
  const std::string& label(Index i) const { return data_->labels.at(i); }

  std::optional<Index> find(std::string_view label) const {
    auto it = data_->index.find(std::string(label));
    if (it == data_->index.end()) return std::nullopt;
    return it->second;
  }

  bool contains(std::string_view label) const { return find(label).has_value(); }

  Index index_of(std::string_view label) const {
    if (auto i = find(label)) return *i;
    throw UnknownVertex(std::string(label));
  }

  friend bool operator==(const VertexSet& a, const VertexSet& b) {
    return a.data_ == b.data_ || a.data_->labels == b.data_->labels;
  }

 private:
  struct Data {
    std::vector<std::string> labels;
    std::unordered_map<std::string, Index> index;
  };
  std::shared_ptr<const Data> data_;
};

}  // namespace qlab
