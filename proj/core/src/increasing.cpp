#include "fringe/increasing.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace fringe {

cpp_rational parse_decimal_rational(const std::string& text) {
  std::string s = text;
  bool negative = false;
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) negative = s[i++] == '-';
  cpp_int num = 0, den = 1;
  bool digits = false, dot = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c == '.') {
      if (dot) throw std::invalid_argument("bad decimal: " + text);
      dot = true;
    } else if (c >= '0' && c <= '9') {
      num = num * 10 + (c - '0');
      if (dot) den *= 10;
      digits = true;
    } else {
      throw std::invalid_argument("bad decimal: " + text);
    }
  }
  if (!digits) throw std::invalid_argument("bad decimal: " + text);
  cpp_rational r(num, den);
  return negative ? -r : r;
}

IncFamily IncFamily::recursive() {
  IncFamily f;
  f.kind = Kind::Recursive;
  return f;
}

IncFamily IncFamily::dary(int d) {
  if (d < 2) throw std::invalid_argument("d-ary increasing trees need d >= 2");
  IncFamily f;
  f.kind = Kind::Dary;
  f.d = d;
  return f;
}

IncFamily IncFamily::gport(cpp_rational r) {
  if (r <= 0) throw std::invalid_argument("gport needs r > 0");
  IncFamily f;
  f.kind = Kind::Gport;
  f.r = std::move(r);
  return f;
}

IncFamily IncFamily::from_descriptor(const std::string& descriptor) {
  if (descriptor == "recursive") return recursive();
  if (descriptor == "bst") return bst();
  if (descriptor.rfind("inc-dary:", 0) == 0) return dary(std::stoi(descriptor.substr(9)));
  if (descriptor.rfind("gport:", 0) == 0)
    return gport(parse_decimal_rational(descriptor.substr(6)));
  throw std::invalid_argument("unknown increasing family descriptor: " + descriptor);
}

cpp_rational IncFamily::alpha() const {
  switch (kind) {
    case Kind::Recursive: return 0;
    case Kind::Dary: return cpp_rational(-1, d);
    case Kind::Gport: return 1 / r;
  }
  return 0;
}

std::string IncFamily::descriptor() const {
  switch (kind) {
    case Kind::Recursive: return "recursive";
    case Kind::Dary: return "inc-dary:" + std::to_string(d);
    case Kind::Gport: {
      std::string s = "gport:" + numerator(r).str();
      if (denominator(r) != 1) s += "/" + denominator(r).str();
      return s;
    }
  }
  return "?";
}

namespace {

/// Fenwick tree over per-vertex attachment weights.
template <typename W>
class Fenwick {
 public:
  void push(W w) {
    values_.push_back(w);
    std::size_t i = values_.size();
    // fold lower entries covered by this node
    std::size_t span = i & (~i + 1);
    for (std::size_t j = 1; j < span; j <<= 1) values_[i - 1] += values_[i - 1 - j];
    total_ += w;
  }

  void add(std::size_t idx, W delta) {
    for (std::size_t i = idx + 1; i <= values_.size(); i += i & (~i + 1))
      values_[i - 1] += delta;
    total_ += delta;
  }

  W total() const { return total_; }

  /// Index of the element whose cumulative range contains u; on return u is
  /// the residual offset within that element's weight.
  std::size_t find(W& u) const {
    std::size_t pos = 0;
    std::size_t mask = std::bit_floor(values_.size());
    while (mask) {
      std::size_t next = pos + mask;
      if (next <= values_.size() && values_[next - 1] <= u) {
        u -= values_[next - 1];
        pos = next;
      }
      mask >>= 1;
    }
    return pos;
  }

  void clear() {
    values_.clear();
    total_ = 0;
  }

 private:
  std::vector<W> values_;
  W total_ = 0;
};

struct GrowthState {
  std::vector<std::vector<std::uint32_t>> children;  // in plane order
  std::vector<std::vector<std::uint32_t>> slots;     // parallel, d-ary only
  std::vector<std::uint32_t> degree;

  void reset(std::size_t n, bool slotted) {
    children.assign(n, {});
    if (slotted) slots.assign(n, {});
    degree.assign(n, 0);
  }
};

LabeledTree to_labeled_tree(const GrowthState& g, std::size_t n, const IncFamily& f) {
  // Preorder walk over the attachment-order structure.
  std::vector<std::uint32_t> degrees(n);
  std::vector<std::uint32_t> flat_slots;
  std::vector<std::uint32_t> labels(n);
  if (f.slotted()) flat_slots.reserve(n - 1);

  std::vector<std::pair<std::uint32_t, std::uint32_t>> stack;  // (attach id, child idx)
  std::uint32_t preorder = 0;
  stack.emplace_back(0, 0);
  degrees[0] = g.degree[0];
  labels[0] = 1;
  ++preorder;
  while (!stack.empty()) {
    auto& [v, idx] = stack.back();
    if (idx == g.children[v].size()) {
      stack.pop_back();
      continue;
    }
    std::uint32_t c = g.children[v][idx];
    if (f.slotted()) flat_slots.push_back(g.slots[v][idx]);
    ++idx;
    degrees[preorder] = g.degree[c];
    labels[preorder] = c + 1;
    ++preorder;
    stack.emplace_back(c, 0);
  }

  LabeledTree lt;
  lt.shape = f.slotted() ? Tree::from_preorder_degrees(degrees, flat_slots, f.d)
                         : Tree::from_preorder_degrees(degrees);
  // to_labeled built the degree array in preorder of the growth structure, so
  // labels are already aligned with preorder vertex ids.
  lt.labels = std::move(labels);
  return lt;
}

void insert_child(GrowthState& g, const IncFamily& f, std::uint32_t parent,
                  std::uint32_t child, std::uint32_t position_or_slot) {
  auto& kids = g.children[parent];
  if (f.kind == IncFamily::Kind::Dary) {
    // children stay sorted by slot
    auto& sl = g.slots[parent];
    auto it = std::upper_bound(sl.begin(), sl.end(), position_or_slot);
    kids.insert(kids.begin() + (it - sl.begin()), child);
    sl.insert(it, position_or_slot);
  } else if (f.kind == IncFamily::Kind::Gport) {
    kids.insert(kids.begin() + position_or_slot, child);
  } else {
    kids.push_back(child);
  }
  ++g.degree[parent];
}

/// The j-th (0-based) free slot of a vertex whose used slots are sorted.
std::uint32_t nth_free_slot(const std::vector<std::uint32_t>& used, std::uint32_t j) {
  std::uint32_t slot = j;
  for (std::uint32_t u : used) {
    if (u <= slot) ++slot;
    else break;
  }
  return slot;
}

}  // namespace

IncSampler::IncSampler(const IncFamily& f) : family_(f) {
  if (f.kind == IncFamily::Kind::Gport) {
    const cpp_int p = numerator(f.r), q = denominator(f.r);
    if (p <= 400000000 && q <= 400000000) {
      weight_num_ = static_cast<std::int64_t>(p);
      weight_step_ = static_cast<std::int64_t>(q);
    } else {
      exact_weights_ = false;  // falls back to floating weights
    }
  }
}

LabeledTree IncSampler::sample(std::size_t n, SplitRng& rng) const {
  if (n == 0) throw std::invalid_argument("tree size must be positive");
  const IncFamily& f = family_;
  GrowthState g;
  g.reset(n, f.slotted());

  switch (f.kind) {
    case IncFamily::Kind::Recursive: {
      for (std::uint32_t j = 1; j < n; ++j) {
        auto v = static_cast<std::uint32_t>(rng.next_below(j));
        insert_child(g, f, v, j, 0);
      }
      break;
    }
    case IncFamily::Kind::Dary: {
      // weight of v is its free-slot count d - deg(v), so the draw residual
      // is already a uniform free-slot index of the chosen vertex
      Fenwick<std::int64_t> weights;
      weights.push(f.d);
      for (std::uint32_t j = 1; j < n; ++j) {
        auto u = static_cast<std::int64_t>(rng.next_below(weights.total()));
        std::size_t v = weights.find(u);
        insert_child(g, f, static_cast<std::uint32_t>(v), j,
                     nth_free_slot(g.slots[v], static_cast<std::uint32_t>(u)));
        weights.add(v, -1);
        weights.push(f.d);
      }
      break;
    }
    case IncFamily::Kind::Gport: {
      if (exact_weights_) {
        Fenwick<std::int64_t> weights;
        weights.push(weight_num_);
        for (std::uint32_t j = 1; j < n; ++j) {
          auto u = static_cast<std::int64_t>(rng.next_below(weights.total()));
          std::size_t v = weights.find(u);
          auto gap = static_cast<std::uint32_t>(rng.next_below(g.degree[v] + 1));
          insert_child(g, f, static_cast<std::uint32_t>(v), j, gap);
          weights.add(v, weight_step_);
          weights.push(weight_num_);
        }
      } else {
        const double p = static_cast<double>(numerator(f.r));
        const double q = static_cast<double>(denominator(f.r));
        Fenwick<double> weights;
        weights.push(p);
        for (std::uint32_t j = 1; j < n; ++j) {
          double u = rng.next_double() * weights.total();
          std::size_t v = weights.find(u);
          if (v >= j) v = j - 1;
          auto gap = static_cast<std::uint32_t>(rng.next_below(g.degree[v] + 1));
          insert_child(g, f, static_cast<std::uint32_t>(v), j, gap);
          weights.add(v, q);
          weights.push(p);
        }
      }
      break;
    }
  }
  return to_labeled_tree(g, n, f);
}

LabeledTree sample_increasing_tree(std::size_t n, const IncFamily& f, SplitRng& rng) {
  return IncSampler(f).sample(n, rng);
}

cpp_rational count_increasing_trees(std::size_t n, const IncFamily& f) {
  if (n == 0) return 0;
  cpp_rational total = 1;
  switch (f.kind) {
    case IncFamily::Kind::Recursive:
      for (std::size_t k = 2; k < n; ++k) total *= static_cast<unsigned long>(k);
      return total;  // (n-1)!
    case IncFamily::Kind::Dary:
      for (std::size_t k = 1; k < n; ++k)
        total *= cpp_rational(1 + static_cast<long>(k) * (f.d - 1));
      return total;
    case IncFamily::Kind::Gport:
      for (std::size_t k = 1; k < n; ++k)
        total *= static_cast<long>(k) * (f.r + 1) - 1;
      return total;
  }
  return total;
}

cpp_int increasing_labellings_count(const Tree& t) {
  const std::size_t n = t.size();
  cpp_int num = 1;
  for (std::size_t k = 2; k <= n; ++k) num *= static_cast<unsigned long>(k);
  cpp_int den = 1;
  for (std::uint32_t s : fringe_sizes(t)) den *= s;
  cpp_int q, rem;
  divide_qr(num, den, q, rem);
  if (rem != 0) throw std::logic_error("labelling count was not integral");
  return q;
}

cpp_rational expected_fringe_count(std::size_t n, std::size_t k, const IncFamily& f) {
  if (k >= n) throw std::invalid_argument("expected_fringe_count needs k < n");
  const cpp_rational a = f.alpha();
  const cpp_rational one_plus = a + 1;
  cpp_rational num = one_plus * static_cast<long>(n) - a;
  cpp_rational den = (one_plus * static_cast<long>(k) + 1) * (one_plus * static_cast<long>(k) - a);
  return num / den;
}

namespace {

void enumerate_rec(GrowthState& g, const IncFamily& f, std::size_t n, std::uint32_t next,
                   cpp_rational prob,
                   std::vector<std::pair<LabeledTree, cpp_rational>>& out) {
  if (next == n) {
    out.emplace_back(to_labeled_tree(g, n, f), prob);
    return;
  }
  const auto k = static_cast<long>(next);  // current number of vertices
  switch (f.kind) {
    case IncFamily::Kind::Recursive: {
      cpp_rational step = prob / k;
      for (std::uint32_t v = 0; v < next; ++v) {
        g.children[v].push_back(next);
        ++g.degree[v];
        enumerate_rec(g, f, n, next + 1, step, out);
        --g.degree[v];
        g.children[v].pop_back();
      }
      break;
    }
    case IncFamily::Kind::Dary: {
      cpp_rational step = prob / (k * (f.d - 1) + 1);
      for (std::uint32_t v = 0; v < next; ++v) {
        const auto deg = g.degree[v];
        for (std::uint32_t j = 0; j + deg < static_cast<std::uint32_t>(f.d); ++j) {
          const std::uint32_t slot = nth_free_slot(g.slots[v], j);
          insert_child(g, f, v, next, slot);
          enumerate_rec(g, f, n, next + 1, step, out);
          auto& sl = g.slots[v];
          auto it = std::find(sl.begin(), sl.end(), slot);
          g.children[v].erase(g.children[v].begin() + (it - sl.begin()));
          sl.erase(it);
          --g.degree[v];
        }
      }
      break;
    }
    case IncFamily::Kind::Gport: {
      cpp_rational total = k * (f.r + 1) - 1;
      for (std::uint32_t v = 0; v < next; ++v) {
        const auto deg = g.degree[v];
        cpp_rational vertex_weight = f.r + deg;  // (p + q deg)/q, scale cancels below
        cpp_rational step = prob * vertex_weight / (total * (deg + 1));
        for (std::uint32_t gap = 0; gap <= deg; ++gap) {
          insert_child(g, f, v, next, gap);
          enumerate_rec(g, f, n, next + 1, step, out);
          g.children[v].erase(g.children[v].begin() + gap);
          --g.degree[v];
        }
      }
      break;
    }
  }
}

}  // namespace

std::vector<std::pair<LabeledTree, cpp_rational>> enumerate_increasing(std::size_t n,
                                                                       const IncFamily& f,
                                                                       std::size_t bound) {
  if (n == 0 || n > bound)
    throw std::invalid_argument("enumerate_increasing: size out of bounds");
  GrowthState g;
  g.reset(n, f.slotted());
  std::vector<std::pair<LabeledTree, cpp_rational>> out;
  enumerate_rec(g, f, n, 1, 1, out);
  return out;
}

double mean_additive_functional(std::size_t n, const IncFamily& f,
                                std::span<const double> toll_means) {
  if (toll_means.size() < n + 1)
    throw std::invalid_argument("toll expectations must cover sizes 1..n");
  double total = toll_means[n];
  for (std::size_t k = 1; k < n; ++k)
    total += static_cast<double>(expected_fringe_count(n, k, f)) * toll_means[k];
  return total;
}

cpp_rational mean_additive_functional_exact(std::size_t n, const IncFamily& f,
                                            std::span<const cpp_rational> toll_means) {
  if (toll_means.size() < n + 1)
    throw std::invalid_argument("toll expectations must cover sizes 1..n");
  cpp_rational total = toll_means[n];
  for (std::size_t k = 1; k < n; ++k)
    total += expected_fringe_count(n, k, f) * toll_means[k];
  return total;
}

}  // namespace fringe
