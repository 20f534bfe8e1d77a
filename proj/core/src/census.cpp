#include "fringe/census.hpp"

#include <map>

namespace fringe {

TreeCensus census_tree(const Tree& t, std::span<const IsoNotion> notions,
                       std::uint32_t hist_cap) {
  TreeCensus census;
  for (IsoNotion notion : notions)
    census.distinct.emplace_back(notion, count_distinct_fringe(t, notion));

  std::map<std::uint32_t, std::uint64_t> hist;
  std::uint64_t overflow = 0;
  for (std::uint32_t s : fringe_sizes(t)) {
    if (s <= hist_cap)
      ++hist[s];
    else
      ++overflow;
  }
  census.histogram.assign(hist.begin(), hist.end());
  if (overflow > 0) census.histogram.emplace_back(0, overflow);
  return census;
}

}  // namespace fringe
