#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fringe/tree.hpp"

namespace fringe {

/// The three ways two fringe subtrees can be "the same":
///  - AsFamily: order and slot positions of branches both matter,
///  - Plane:    order matters, slot positions do not,
///  - Unordered: neither matters.
/// On a slot-free tree AsFamily coincides with Plane.
enum class IsoNotion { AsFamily, Plane, Unordered };

const char* to_string(IsoNotion n);

struct CanonicalCode {
  std::string bytes;
  IsoNotion notion;

  bool operator==(const CanonicalCode&) const = default;
};

/// Result of hash-consing all fringe subtrees of one tree under one notion.
/// Classes are numbered in order of first completion, so every class's
/// children have smaller ids; class 0 is always the single leaf class.
struct FringeClasses {
  IsoNotion notion;
  bool slotted = false;
  std::vector<std::uint32_t> class_of;  // per vertex
  // Per class, children as packed entries into `arena`: for a slotted
  // AsFamily run an entry is (slot << 32) | child_class, otherwise just
  // child_class (the slot is the ordinal position).
  std::vector<std::uint64_t> arena;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> class_children;  // (offset, count)
  std::vector<std::uint64_t> class_multiplicity;
  std::vector<std::uint32_t> class_size;

  std::size_t num_classes() const { return class_children.size(); }

  std::span<const std::uint64_t> children_of(std::uint32_t cls) const {
    auto [off, cnt] = class_children[cls];
    return {arena.data() + off, arena.data() + off + cnt};
  }
  std::uint32_t child_class(std::uint64_t entry) const {
    return static_cast<std::uint32_t>(entry & 0xffffffffu);
  }
  std::uint32_t child_slot(std::uint64_t entry, std::uint32_t ordinal) const {
    return slotted ? static_cast<std::uint32_t>(entry >> 32) : ordinal;
  }
};

FringeClasses intern_fringe_classes(const Tree& t, IsoNotion notion);

/// Canonical byte string deciding isomorphism under `notion`: two trees get
/// equal codes iff they are isomorphic. Unordered codes sort sibling codes
/// lexicographically (AHU style), so they are stable across invocations.
CanonicalCode canonical_code(const Tree& t, IsoNotion notion);

/// Minimal DAG: one node per distinct fringe-subtree class.
struct MinimalDag {
  struct Node {
    std::uint64_t code_hash;
    std::uint64_t multiplicity;
    std::uint32_t subtree_size;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> children;  // (slot, node id)
  };
  std::vector<Node> nodes;
  std::uint32_t root = 0;
  IsoNotion notion = IsoNotion::AsFamily;
};

MinimalDag build_minimal_dag(const Tree& t, IsoNotion notion);

/// Text export, one node per line: "id code_hash multiplicity [slot:child ...]"
/// preceded by a header line with the root id.
std::string export_minimal_dag(const MinimalDag& dag);

/// Number of distinct fringe-subtree classes; equals the minimal-DAG size.
std::uint64_t count_distinct_fringe(const Tree& t, IsoNotion notion);

/// ln |Aut(t)| of the tree viewed as unordered, via the branch-multiplicity
/// recursion |Aut(t)| = prod_j |Aut(t_j)| * prod_i m_i!.
double automorphism_size_log(const Tree& t);

/// Exact |Aut(t)| (big integer); intended for moderate sizes in tests.
boost::multiprecision::cpp_int automorphism_size_exact(const Tree& t);

/// ln of the number of distinct plane trees with the same unordered
/// representation as t: ln(prod_v deg(v)! / |Aut(t)|).
double plane_embeddings_log(const Tree& t);

}  // namespace fringe
