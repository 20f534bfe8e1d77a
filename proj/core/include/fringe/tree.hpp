#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fringe {

using VertexId = std::uint32_t;

/// Rooted ordered tree stored as a flat arena in preorder: vertex 0 is the
/// root and every child has a larger id than its parent, so a reverse scan
/// over ids visits children before parents (no recursion needed anywhere).
///
/// Slot labels on child edges are optional; they are present exactly when the
/// tree belongs to a d-ary (position-labelled) family. Dropping them recovers
/// the plane tree, which consumers do by simply ignoring slots().
class Tree {
 public:
  Tree() = default;

  static Tree single_vertex();

  /// Build from a preorder degree sequence (sum of degrees = n-1).
  static Tree from_preorder_degrees(std::span<const std::uint32_t> degrees);

  /// Slotted variant; slots[j] labels the edge into vertex j+1. Within each
  /// vertex, child slots must be strictly increasing and < arity.
  static Tree from_preorder_degrees(std::span<const std::uint32_t> degrees,
                                    std::span<const std::uint32_t> slots,
                                    int arity);

  std::size_t size() const { return first_child_.empty() ? 0 : first_child_.size() - 1; }
  VertexId root() const { return 0; }

  std::uint32_t degree(VertexId v) const { return first_child_[v + 1] - first_child_[v]; }

  std::span<const VertexId> children(VertexId v) const {
    return {child_.data() + first_child_[v], child_.data() + first_child_[v + 1]};
  }

  /// Slot labels of v's child edges; empty span when the tree is unslotted.
  std::span<const std::uint32_t> slots(VertexId v) const {
    if (slot_.empty()) return {};
    return {slot_.data() + first_child_[v], slot_.data() + first_child_[v + 1]};
  }

  bool slotted() const { return arity_.has_value(); }
  std::optional<int> arity_bound() const { return arity_; }

  std::uint32_t root_degree() const { return degree(0); }

  bool operator==(const Tree&) const = default;

 private:
  std::vector<std::uint32_t> first_child_;  // size n+1, offsets into child_/slot_
  std::vector<VertexId> child_;             // size n-1
  std::vector<std::uint32_t> slot_;         // size n-1 iff slotted
  std::optional<int> arity_;
};

/// Tree shape together with a labelling by 1..n that increases along every
/// root-to-leaf path. labels[v] is the label of preorder vertex v.
struct LabeledTree {
  Tree shape;
  std::vector<std::uint32_t> labels;
};

struct TreeParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Parse the plane grammar  tree ::= "(" tree* ")"  (whitespace ignored).
Tree parse_tree(std::string_view text);

/// Parse the slotted grammar  tree ::= "[" (slot ":" tree)* "]"  with decimal
/// slots, strictly increasing and < arity.
Tree parse_tree_slotted(std::string_view text, int arity);

/// Inverse of the parsers; vertex order is normalized to preorder.
std::string serialize_tree(const Tree& t);

/// |t(v)| for every vertex, indexed by vertex id. The root entry equals |t|.
std::vector<std::uint32_t> fringe_sizes(const Tree& t);

/// Z_k(t): number of fringe subtrees of size k. Values sum to |t|.
std::map<std::uint32_t, std::uint64_t> subtree_count_by_size(const Tree& t);

/// d_k(t): number of vertices of out-degree k.
std::map<std::uint32_t, std::uint64_t> degree_profile(const Tree& t);

/// Copy the fringe subtree rooted at v into a standalone tree.
Tree extract_fringe(const Tree& t, VertexId v);

}  // namespace fringe
