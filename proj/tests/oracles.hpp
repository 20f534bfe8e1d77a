#pragma once

// Brute-force oracles shared by the test suites. Everything here is
// deliberately independent of the interning/canonical-code implementation it
// is used to check.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fringe/rng.hpp"
#include "fringe/simply_generated.hpp"
#include "fringe/tree.hpp"

namespace oracles {

/// Root-preserving unordered isomorphism by recursive branch matching.
inline bool unordered_isomorphic(const fringe::Tree& a, fringe::VertexId va,
                                 const fringe::Tree& b, fringe::VertexId vb) {
  auto ka = a.children(va);
  auto kb = b.children(vb);
  if (ka.size() != kb.size()) return false;
  std::vector<fringe::VertexId> rest(kb.begin(), kb.end());
  for (fringe::VertexId ca : ka) {
    bool matched = false;
    for (std::size_t j = 0; j < rest.size(); ++j) {
      if (unordered_isomorphic(a, ca, b, rest[j])) {
        rest.erase(rest.begin() + j);
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

inline bool unordered_isomorphic(const fringe::Tree& a, const fringe::Tree& b) {
  return unordered_isomorphic(a, a.root(), b, b.root());
}

/// All plane serializations reachable by permuting children independently at
/// every vertex; the count of distinct results is the number of plane
/// embeddings of the unordered tree.
inline void plane_variants(const fringe::Tree& t, fringe::VertexId v,
                           std::vector<std::vector<std::string>>& memo) {
  std::vector<std::string> result;
  auto kids = t.children(v);
  if (kids.empty()) {
    memo[v] = {"()"};
    return;
  }
  for (fringe::VertexId c : kids) plane_variants(t, c, memo);
  std::vector<std::size_t> order(kids.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end());
  std::set<std::string> seen;
  do {
    // every combination of child variants, children permuted by `order`
    std::vector<std::string> partial = {""};
    for (std::size_t i : order) {
      std::vector<std::string> next;
      for (const std::string& prefix : partial)
        for (const std::string& variant : memo[kids[i]]) next.push_back(prefix + variant);
      partial = std::move(next);
    }
    for (const std::string& p : partial) seen.insert("(" + p + ")");
  } while (std::next_permutation(order.begin(), order.end()));
  memo[v].assign(seen.begin(), seen.end());
}

inline std::size_t plane_embedding_count(const fringe::Tree& t) {
  std::vector<std::vector<std::string>> memo(t.size());
  plane_variants(t, t.root(), memo);
  return memo[t.root()].size();
}

/// Statistics of the total-variation distance between an empirical
/// multinomial and its expectation: normal-approximation mean and a standard
/// deviation proxy, used as mean + 3 sd acceptance envelopes.
struct TvEnvelope {
  double mean;
  double sd;
  double bound3() const { return mean + 3.0 * sd; }
};

inline TvEnvelope tv_envelope(const std::vector<double>& probs, double samples) {
  double mean = 0.0, var = 0.0;
  for (double p : probs) {
    const double v = p * (1.0 - p) / samples;
    mean += std::sqrt(2.0 * v / M_PI);
    var += v * (1.0 - 2.0 / M_PI);
  }
  return {0.5 * mean, 0.5 * std::sqrt(var)};
}

inline double tv_distance(const std::map<std::string, double>& expected,
                          const std::map<std::string, std::uint64_t>& observed,
                          double samples) {
  double tv = 0.0;
  for (const auto& [key, p] : expected) {
    auto it = observed.find(key);
    const double emp = it == observed.end() ? 0.0 : static_cast<double>(it->second) / samples;
    tv += std::abs(emp - p);
  }
  for (const auto& [key, count] : observed)
    if (!expected.count(key)) tv += static_cast<double>(count) / samples;
  return 0.5 * tv;
}

/// Deterministic stream of random plane trees for property tests.
inline std::vector<fringe::Tree> random_plane_trees(std::size_t count, std::size_t max_size,
                                                    std::uint64_t seed) {
  fringe::GwSampler sampler(fringe::WeightSequence::plane());
  fringe::SplitRng rng(seed, 0);
  std::vector<fringe::Tree> trees;
  trees.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t n = 1 + rng.next_below(max_size);
    trees.push_back(sampler.sample(n, rng));
  }
  return trees;
}

}  // namespace oracles
