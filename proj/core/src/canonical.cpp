#include "fringe/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace fringe {

const char* to_string(IsoNotion n) {
  switch (n) {
    case IsoNotion::AsFamily: return "family";
    case IsoNotion::Plane: return "plane";
    case IsoNotion::Unordered: return "unordered";
  }
  return "?";
}

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t hash_key(std::span<const std::uint64_t> key) {
  std::uint64_t h = 0x243f6a8885a308d3ULL;
  for (std::uint64_t e : key) h = mix64(h ^ e);
  return h ^ key.size();
}

/// Hash-consing table for uint64 sequences; keys live in a shared arena so
/// lookups never allocate.
class InternTable {
 public:
  InternTable() : table_(1024, kEmpty), mask_(1023) {}

  std::uint32_t intern(std::span<const std::uint64_t> key, bool& inserted) {
    const std::uint64_t h = hash_key(key);
    std::size_t pos = h & mask_;
    while (table_[pos] != kEmpty) {
      const std::uint32_t id = table_[pos];
      if (hashes_[id] == h && matches(id, key)) {
        inserted = false;
        return id;
      }
      pos = (pos + 1) & mask_;
    }
    const auto id = static_cast<std::uint32_t>(spans_.size());
    spans_.emplace_back(static_cast<std::uint32_t>(arena_.size()),
                        static_cast<std::uint32_t>(key.size()));
    arena_.insert(arena_.end(), key.begin(), key.end());
    hashes_.push_back(h);
    table_[pos] = id;
    if (spans_.size() * 10 > table_.size() * 7) grow();
    inserted = true;
    return id;
  }

  std::size_t size() const { return spans_.size(); }

  std::span<const std::uint64_t> key(std::uint32_t id) const {
    auto [off, len] = spans_[id];
    return {arena_.data() + off, arena_.data() + off + len};
  }

  std::vector<std::uint64_t> take_arena() { return std::move(arena_); }
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& spans() const { return spans_; }

 private:
  static constexpr std::uint32_t kEmpty = 0xffffffffu;

  bool matches(std::uint32_t id, std::span<const std::uint64_t> key) const {
    auto [off, len] = spans_[id];
    if (len != key.size()) return false;
    return std::memcmp(arena_.data() + off, key.data(), len * sizeof(std::uint64_t)) == 0;
  }

  void grow() {
    std::vector<std::uint32_t> bigger(table_.size() * 2, kEmpty);
    const std::size_t mask = bigger.size() - 1;
    for (std::uint32_t id = 0; id < spans_.size(); ++id) {
      std::size_t pos = hashes_[id] & mask;
      while (bigger[pos] != kEmpty) pos = (pos + 1) & mask;
      bigger[pos] = id;
    }
    table_ = std::move(bigger);
    mask_ = mask;
  }

  std::vector<std::uint64_t> arena_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> spans_;
  std::vector<std::uint64_t> hashes_;
  std::vector<std::uint32_t> table_;
  std::size_t mask_;
};

}  // namespace

FringeClasses intern_fringe_classes(const Tree& t, IsoNotion notion) {
  const std::size_t n = t.size();
  const bool use_slots = notion == IsoNotion::AsFamily && t.slotted();

  FringeClasses fc;
  fc.notion = notion;
  fc.slotted = use_slots;
  fc.class_of.resize(n);

  InternTable table;
  std::vector<std::uint64_t> key;
  std::vector<std::uint32_t> sizes;

  // Children always carry larger preorder ids, so a reverse id scan is a
  // postorder: every child class is interned before its parent.
  for (std::size_t vi = n; vi-- > 0;) {
    const auto v = static_cast<VertexId>(vi);
    auto kids = t.children(v);
    key.clear();
    if (use_slots) {
      auto sl = t.slots(v);
      for (std::size_t i = 0; i < kids.size(); ++i)
        key.push_back((static_cast<std::uint64_t>(sl[i]) << 32) | fc.class_of[kids[i]]);
    } else {
      for (VertexId c : kids) key.push_back(fc.class_of[c]);
      if (notion == IsoNotion::Unordered) std::sort(key.begin(), key.end());
    }
    bool inserted = false;
    const std::uint32_t id = table.intern(key, inserted);
    fc.class_of[v] = id;
    if (inserted) {
      fc.class_multiplicity.push_back(0);
      std::uint32_t sz = 1;
      for (std::uint64_t e : key) sz += sizes[e & 0xffffffffu];
      sizes.push_back(sz);
    }
    ++fc.class_multiplicity[id];
  }

  fc.class_children = table.spans();
  fc.arena = table.take_arena();
  fc.class_size = std::move(sizes);
  return fc;
}

CanonicalCode canonical_code(const Tree& t, IsoNotion notion) {
  const FringeClasses fc = intern_fringe_classes(t, notion);
  const char open = fc.slotted ? '[' : '(';
  const char close = fc.slotted ? ']' : ')';

  std::vector<std::string> code(fc.num_classes());
  std::vector<std::string_view> parts;
  for (std::uint32_t cls = 0; cls < fc.num_classes(); ++cls) {
    auto entries = fc.children_of(cls);
    std::string s;
    s.push_back(open);
    if (notion == IsoNotion::Unordered) {
      parts.clear();
      for (std::uint64_t e : entries) parts.emplace_back(code[fc.child_class(e)]);
      std::sort(parts.begin(), parts.end());
      for (auto p : parts) s.append(p);
    } else {
      std::uint32_t ordinal = 0;
      for (std::uint64_t e : entries) {
        if (fc.slotted) {
          if (ordinal) s.push_back(' ');
          s.append(std::to_string(fc.child_slot(e, ordinal)));
          s.push_back(':');
        }
        s.append(code[fc.child_class(e)]);
        ++ordinal;
      }
    }
    s.push_back(close);
    code[cls] = std::move(s);
  }
  return {std::move(code[fc.class_of[t.root()]]), notion};
}

MinimalDag build_minimal_dag(const Tree& t, IsoNotion notion) {
  const FringeClasses fc = intern_fringe_classes(t, notion);
  MinimalDag dag;
  dag.notion = notion;
  dag.root = fc.class_of[t.root()];
  dag.nodes.resize(fc.num_classes());
  for (std::uint32_t cls = 0; cls < fc.num_classes(); ++cls) {
    MinimalDag::Node& node = dag.nodes[cls];
    node.multiplicity = fc.class_multiplicity[cls];
    node.subtree_size = fc.class_size[cls];
    std::uint64_t h = 0x2545f4914f6cdd1dULL;
    std::uint32_t ordinal = 0;
    for (std::uint64_t e : fc.children_of(cls)) {
      const std::uint32_t child = fc.child_class(e);
      const std::uint32_t slot = fc.child_slot(e, ordinal);
      node.children.emplace_back(slot, child);
      h = mix64(h ^ dag.nodes[child].code_hash) + slot;
      ++ordinal;
    }
    node.code_hash = mix64(h ^ ordinal);
  }
  return dag;
}

std::string export_minimal_dag(const MinimalDag& dag) {
  std::string out = "root " + std::to_string(dag.root) + "\n";
  char buf[32];
  for (std::uint32_t id = 0; id < dag.nodes.size(); ++id) {
    const auto& node = dag.nodes[id];
    out += std::to_string(id);
    std::snprintf(buf, sizeof(buf), " %016llx ",
                  static_cast<unsigned long long>(node.code_hash));
    out += buf;
    out += std::to_string(node.multiplicity);
    for (auto [slot, child] : node.children) {
      out.push_back(' ');
      out += std::to_string(slot);
      out.push_back(':');
      out += std::to_string(child);
    }
    out.push_back('\n');
  }
  return out;
}

std::uint64_t count_distinct_fringe(const Tree& t, IsoNotion notion) {
  return intern_fringe_classes(t, notion).num_classes();
}

namespace {

/// Visits each vertex's children grouped by unordered class and applies f to
/// every multiplicity run.
template <typename F>
void for_each_branch_multiplicity(const Tree& t, F&& f) {
  const FringeClasses fc = intern_fringe_classes(t, IsoNotion::Unordered);
  std::vector<std::uint32_t> ids;
  for (VertexId v = 0; v < t.size(); ++v) {
    auto kids = t.children(v);
    if (kids.size() < 2) continue;
    ids.clear();
    for (VertexId c : kids) ids.push_back(fc.class_of[c]);
    std::sort(ids.begin(), ids.end());
    std::size_t run = 1;
    for (std::size_t i = 1; i <= ids.size(); ++i) {
      if (i < ids.size() && ids[i] == ids[i - 1]) {
        ++run;
      } else {
        if (run > 1) f(run);
        run = 1;
      }
    }
  }
}

}  // namespace

double automorphism_size_log(const Tree& t) {
  double total = 0.0;
  for_each_branch_multiplicity(
      t, [&](std::size_t m) { total += std::lgamma(static_cast<double>(m) + 1.0); });
  return total;
}

boost::multiprecision::cpp_int automorphism_size_exact(const Tree& t) {
  boost::multiprecision::cpp_int total = 1;
  for_each_branch_multiplicity(t, [&](std::size_t m) {
    for (std::size_t i = 2; i <= m; ++i) total *= static_cast<unsigned>(i);
  });
  return total;
}

double plane_embeddings_log(const Tree& t) {
  double deg_factorials = 0.0;
  for (VertexId v = 0; v < t.size(); ++v)
    deg_factorials += std::lgamma(static_cast<double>(t.degree(v)) + 1.0);
  return deg_factorials - automorphism_size_log(t);
}

}  // namespace fringe
