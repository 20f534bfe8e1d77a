#include "fringe/tree.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

namespace fringe {

Tree Tree::single_vertex() {
  std::uint32_t deg = 0;
  return from_preorder_degrees({&deg, 1});
}

Tree Tree::from_preorder_degrees(std::span<const std::uint32_t> degrees) {
  return from_preorder_degrees(degrees, {}, 0);
}

Tree Tree::from_preorder_degrees(std::span<const std::uint32_t> degrees,
                                 std::span<const std::uint32_t> slots,
                                 int arity) {
  const std::size_t n = degrees.size();
  if (n == 0) throw std::invalid_argument("empty degree sequence");
  std::uint64_t total = std::accumulate(degrees.begin(), degrees.end(), std::uint64_t{0});
  if (total != n - 1) throw std::invalid_argument("degree sequence does not sum to n-1");

  Tree t;
  t.first_child_.resize(n + 1);
  t.first_child_[0] = 0;
  for (std::size_t v = 0; v < n; ++v)
    t.first_child_[v + 1] = t.first_child_[v] + degrees[v];
  t.child_.resize(n - 1);

  // Assign preorder ids: walk the degree sequence with an explicit stack of
  // (vertex, next child slot) frames.
  std::vector<std::pair<VertexId, std::uint32_t>> stack;
  stack.reserve(64);
  if (degrees[0] > 0) stack.emplace_back(0, 0);
  for (VertexId v = 1; v < n; ++v) {
    if (stack.empty()) throw std::invalid_argument("degree sequence is not a preorder walk");
    auto& [parent, idx] = stack.back();
    t.child_[t.first_child_[parent] + idx] = v;
    if (++idx == degrees[parent]) stack.pop_back();
    if (degrees[v] > 0) stack.emplace_back(v, 0);
  }
  if (!stack.empty()) throw std::invalid_argument("degree sequence is not a preorder walk");

  if (!slots.empty() || arity > 0) {
    if (arity <= 0) throw std::invalid_argument("slots given without arity");
    if (slots.size() != n - 1) throw std::invalid_argument("slot count must equal n-1");
    // Input slots are keyed by child vertex (slots[j] labels the edge into
    // vertex j+1); regroup them by parent for the arena.
    t.slot_.resize(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) t.slot_[i] = slots[t.child_[i] - 1];
    for (std::size_t v = 0; v < n; ++v) {
      std::uint32_t prev = 0;
      for (std::uint32_t i = t.first_child_[v]; i < t.first_child_[v + 1]; ++i) {
        if (t.slot_[i] >= static_cast<std::uint32_t>(arity))
          throw std::invalid_argument("slot out of range");
        if (i > t.first_child_[v] && t.slot_[i] <= prev)
          throw std::invalid_argument("slots must be strictly increasing");
        prev = t.slot_[i];
      }
    }
    t.arity_ = arity;
  }
  return t;
}

namespace {

void skip_ws(std::string_view s, std::size_t& i) {
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\n' || s[i] == '\r')) ++i;
}

}  // namespace

Tree parse_tree(std::string_view text) {
  std::size_t i = 0;
  skip_ws(text, i);
  if (i >= text.size() || text[i] != '(') throw TreeParseError("expected '('");

  std::vector<std::uint32_t> degrees;
  std::vector<std::size_t> open;  // indices into degrees
  while (i < text.size()) {
    skip_ws(text, i);
    if (i >= text.size()) break;
    if (text[i] == '(') {
      if (!open.empty()) ++degrees[open.back()];
      else if (!degrees.empty())
        throw TreeParseError("trailing content after tree");
      open.push_back(degrees.size());
      degrees.push_back(0);
      ++i;
    } else if (text[i] == ')') {
      if (open.empty()) throw TreeParseError("unbalanced ')'");
      open.pop_back();
      ++i;
      if (open.empty()) break;
    } else {
      throw TreeParseError("unexpected character in plane tree");
    }
  }
  if (!open.empty()) throw TreeParseError("unbalanced '('");
  skip_ws(text, i);
  if (i != text.size()) throw TreeParseError("trailing content after tree");
  if (degrees.empty()) throw TreeParseError("empty input");
  return Tree::from_preorder_degrees(degrees);
}

Tree parse_tree_slotted(std::string_view text, int arity) {
  if (arity < 1) throw std::invalid_argument("arity must be positive");
  std::size_t i = 0;
  skip_ws(text, i);
  if (i >= text.size() || text[i] != '[') throw TreeParseError("expected '['");

  // Single pass: collect degrees and per-child slots in preorder.
  std::vector<std::uint32_t> degrees;
  std::vector<std::size_t> open;
  std::vector<std::uint32_t> flat_slots;
  std::optional<std::uint32_t> pending_slot;
  while (i < text.size()) {
    skip_ws(text, i);
    if (i >= text.size()) break;
    char c = text[i];
    if (c == '[') {
      if (open.empty() && !degrees.empty()) throw TreeParseError("trailing content after tree");
      if (!open.empty()) {
        if (!pending_slot) throw TreeParseError("child without slot label");
        ++degrees[open.back()];
        flat_slots.push_back(*pending_slot);
        pending_slot.reset();
      } else if (pending_slot) {
        throw TreeParseError("slot label outside tree");
      }
      open.push_back(degrees.size());
      degrees.push_back(0);
      ++i;
    } else if (c == ']') {
      if (open.empty()) throw TreeParseError("unbalanced ']'");
      if (pending_slot) throw TreeParseError("slot label without child");
      open.pop_back();
      ++i;
      if (open.empty()) break;
    } else if (c >= '0' && c <= '9') {
      std::uint32_t value = 0;
      auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
      if (ec != std::errc{}) throw TreeParseError("bad slot number");
      i = static_cast<std::size_t>(ptr - text.data());
      skip_ws(text, i);
      if (i >= text.size() || text[i] != ':') throw TreeParseError("expected ':' after slot");
      ++i;
      pending_slot = value;
    } else {
      throw TreeParseError("unexpected character in slotted tree");
    }
  }
  if (!open.empty()) throw TreeParseError("unbalanced '['");
  skip_ws(text, i);
  if (i != text.size()) throw TreeParseError("trailing content after tree");
  if (degrees.empty()) throw TreeParseError("empty input");

  // Flat slots are in child-creation order, which is preorder of the child
  // edges; from_preorder_degrees validates range and monotonicity.
  return Tree::from_preorder_degrees(degrees, flat_slots, arity);
}

std::string serialize_tree(const Tree& t) {
  std::string out;
  out.reserve(t.size() * 2);
  const bool slotted = t.slotted();
  // Explicit stack of (vertex, next child index); -1u marks "close bracket".
  struct Frame {
    VertexId v;
    std::uint32_t next;
  };
  std::vector<Frame> stack;
  stack.push_back({t.root(), 0});
  out.push_back(slotted ? '[' : '(');
  while (!stack.empty()) {
    Frame& f = stack.back();
    auto kids = t.children(f.v);
    if (f.next < kids.size()) {
      VertexId c = kids[f.next];
      if (slotted) {
        out += std::to_string(t.slots(f.v)[f.next]);
        out.push_back(':');
        out.push_back('[');
      } else {
        out.push_back('(');
      }
      ++f.next;
      stack.push_back({c, 0});
    } else {
      out.push_back(slotted ? ']' : ')');
      stack.pop_back();
      if (slotted && !stack.empty() && stack.back().next < t.degree(stack.back().v))
        out.push_back(' ');
    }
  }
  return out;
}

std::vector<std::uint32_t> fringe_sizes(const Tree& t) {
  const std::size_t n = t.size();
  std::vector<std::uint32_t> sizes(n, 1);
  for (std::size_t v = n; v-- > 0;)
    for (VertexId c : t.children(static_cast<VertexId>(v)))
      sizes[v] += sizes[c];
  return sizes;
}

std::map<std::uint32_t, std::uint64_t> subtree_count_by_size(const Tree& t) {
  std::map<std::uint32_t, std::uint64_t> z;
  for (std::uint32_t s : fringe_sizes(t)) ++z[s];
  return z;
}

std::map<std::uint32_t, std::uint64_t> degree_profile(const Tree& t) {
  std::map<std::uint32_t, std::uint64_t> d;
  for (VertexId v = 0; v < t.size(); ++v) ++d[t.degree(v)];
  return d;
}

Tree extract_fringe(const Tree& t, VertexId v) {
  // Preorder ids make the fringe subtree the contiguous id range
  // [v, v + |t(v)|), already in preorder.
  auto sizes = fringe_sizes(t);
  const std::uint32_t m = sizes[v];
  std::vector<std::uint32_t> degrees(m);
  std::vector<std::uint32_t> slots(t.slotted() && m > 1 ? m - 1 : 0);
  for (std::uint32_t i = 0; i < m; ++i) {
    VertexId u = v + i;
    degrees[i] = t.degree(u);
    if (t.slotted()) {
      auto kids = t.children(u);
      auto sl = t.slots(u);
      for (std::size_t idx = 0; idx < kids.size(); ++idx)
        slots[kids[idx] - v - 1] = sl[idx];
    }
  }
  if (t.slotted()) return Tree::from_preorder_degrees(degrees, slots, *t.arity_bound());
  return Tree::from_preorder_degrees(degrees);
}

}  // namespace fringe
