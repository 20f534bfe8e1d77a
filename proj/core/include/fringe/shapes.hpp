#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fringe/tree.hpp"

namespace fringe {

/// Set of admissible vertex out-degrees; nullopt elements = all of N.
struct DegreeSet {
  std::optional<std::vector<int>> elements;

  static DegreeSet all() { return {}; }
  static DegreeSet of(std::vector<int> degrees);

  bool contains(std::uint32_t m) const;
  int max_degree() const;  // -1 when unbounded
};

/// Catalog of all unordered rooted shapes up to a size bound with degrees in
/// a given set, interned so each shape appears once. Ids are dense, grouped
/// by size, and children of a shape always have smaller ids.
class ShapeCatalog {
 public:
  ShapeCatalog(std::uint32_t max_size, DegreeSet degrees);

  std::uint32_t max_size() const { return max_size_; }
  std::size_t total() const { return child_span_.size(); }

  std::uint32_t size_of(std::uint32_t id) const { return size_[id]; }

  /// Child shape ids in non-increasing order.
  std::span<const std::uint32_t> children(std::uint32_t id) const {
    auto [off, len] = child_span_[id];
    return {arena_.data() + off, arena_.data() + off + len};
  }

  /// Ids of all shapes of one size (contiguous).
  std::pair<std::uint32_t, std::uint32_t> id_range(std::uint32_t size) const {
    return {first_of_size_[size], first_of_size_[size + 1]};
  }
  std::uint64_t count(std::uint32_t size) const {
    return first_of_size_[size + 1] - first_of_size_[size];
  }

  /// 1 / (prod_v |S(v)| * |Aut S|); equals p_S/|S| for random recursive trees.
  double recursive_coefficient(std::uint32_t id) const { return rec_coef_[id]; }

  /// Probability that a random binary search tree of size |S| has unordered
  /// shape S (only for catalogs with degrees within {0,1,2}).
  double bst_probability(std::uint32_t id) const { return bst_prob_[id]; }

  Tree tree_of(std::uint32_t id) const;

 private:
  std::uint32_t max_size_;
  std::vector<std::uint32_t> size_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> child_span_;
  std::vector<std::uint32_t> arena_;
  std::vector<std::uint32_t> first_of_size_;
  std::vector<double> rec_coef_;
  std::vector<double> bst_prob_;
};

}  // namespace fringe
