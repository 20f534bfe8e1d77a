#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fringe/canonical.hpp"
#include "fringe/tree.hpp"

namespace fringe {

/// Census of one tree: distinct fringe-subtree classes per notion plus the
/// fringe-size histogram Z_k. Histogram rows are (k, Z_k) with k <= cap;
/// larger sizes are lumped into an overflow row with k = 0.
struct TreeCensus {
  std::vector<std::pair<IsoNotion, std::uint64_t>> distinct;
  std::vector<std::pair<std::uint32_t, std::uint64_t>> histogram;
};

TreeCensus census_tree(const Tree& t, std::span<const IsoNotion> notions,
                       std::uint32_t hist_cap = 10000);

}  // namespace fringe
