#include "fringe/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fringe {

DegreeSet DegreeSet::of(std::vector<int> degrees) {
  std::sort(degrees.begin(), degrees.end());
  degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
  if (degrees.empty() || degrees.front() != 0)
    throw std::invalid_argument("degree set must contain 0");
  if (degrees.back() < 2)
    throw std::invalid_argument("degree set needs an element >= 2");
  DegreeSet s;
  s.elements = std::move(degrees);
  return s;
}

bool DegreeSet::contains(std::uint32_t m) const {
  if (!elements) return true;
  return std::binary_search(elements->begin(), elements->end(), static_cast<int>(m));
}

int DegreeSet::max_degree() const { return elements ? elements->back() : -1; }

ShapeCatalog::ShapeCatalog(std::uint32_t max_size, DegreeSet degrees) : max_size_(max_size) {
  if (max_size == 0) throw std::invalid_argument("max_size must be positive");
  const int max_deg = degrees.max_degree();
  const bool binary = max_deg >= 0 && max_deg <= 2;

  first_of_size_.assign(max_size + 2, 0);

  // Size 1: the single leaf (degree 0 is always admissible by construction).
  size_.push_back(1);
  child_span_.emplace_back(0, 0);
  rec_coef_.push_back(1.0);
  bst_prob_.push_back(1.0);
  first_of_size_[1] = 0;
  first_of_size_[2] = 1;

  std::vector<std::uint32_t> stack;  // branch ids, non-increasing
  for (std::uint32_t s = 2; s <= max_size; ++s) {
    first_of_size_[s] = static_cast<std::uint32_t>(child_span_.size());

    // Choose a multiset of previously built shapes of total size s-1.
    auto emit = [&]() {
      if (!degrees.contains(static_cast<std::uint32_t>(stack.size()))) return;
      size_.push_back(s);
      child_span_.emplace_back(static_cast<std::uint32_t>(arena_.size()),
                               static_cast<std::uint32_t>(stack.size()));
      arena_.insert(arena_.end(), stack.begin(), stack.end());

      double rec = 1.0, bst = binary ? 2.0 : 0.0;
      std::uint64_t run = 1;
      for (std::size_t i = 0; i < stack.size(); ++i) {
        rec *= rec_coef_[stack[i]];
        if (binary) bst *= bst_prob_[stack[i]];
        if (i > 0 && stack[i] == stack[i - 1]) {
          ++run;
          rec /= static_cast<double>(run);
          if (binary) bst /= static_cast<double>(run);
        } else {
          run = 1;
        }
      }
      rec_coef_.push_back(rec / s);
      bst_prob_.push_back(binary ? bst / s : 0.0);
    };

    auto build = [&](auto&& self, std::uint32_t remaining, std::uint32_t max_id) -> void {
      if (remaining == 0) {
        emit();
        return;
      }
      if (max_deg >= 0 && stack.size() >= static_cast<std::size_t>(max_deg)) return;
      // next branch: any shape of size <= remaining with id <= max_id
      std::uint32_t sz_cap = std::min(remaining, s - 1);
      for (std::uint32_t sz = sz_cap; sz >= 1; --sz) {
        std::uint32_t lo = first_of_size_[sz];
        std::uint32_t hi = std::min(first_of_size_[sz + 1], max_id + 1);
        for (std::uint32_t id = hi; id-- > lo;) {
          stack.push_back(id);
          self(self, remaining - sz, id);
          stack.pop_back();
        }
        if (sz == 1) break;
      }
    };
    build(build, s - 1, static_cast<std::uint32_t>(child_span_.size()) - 1);
  }
  first_of_size_[max_size + 1] = static_cast<std::uint32_t>(child_span_.size());
}

Tree ShapeCatalog::tree_of(std::uint32_t id) const {
  std::vector<std::uint32_t> degrees;
  auto walk = [&](auto&& self, std::uint32_t cur) -> void {
    auto kids = children(cur);
    degrees.push_back(static_cast<std::uint32_t>(kids.size()));
    for (std::uint32_t c : kids) self(self, c);
  };
  walk(walk, id);
  return Tree::from_preorder_degrees(degrees);
}

}  // namespace fringe
