#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fringe/rng.hpp"
#include "fringe/tree.hpp"

namespace fringe {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

/// Exact rational from a decimal literal such as "2", "0.5" or "1.25".
cpp_rational parse_decimal_rational(const std::string& text);

/// One of the very simple increasing-tree families. Vertex j+1 attaches to an
/// existing vertex v with probability proportional to 1 + alpha * deg(v):
///   recursive: alpha = 0 (uniform attachment),
///   d-ary:     alpha = -1/d (a uniformly random free slot),
///   gport:     alpha = 1/r (preferential attachment; r = 1 is the plane
///              oriented recursive tree, uniform over insertion gaps).
struct IncFamily {
  enum class Kind { Recursive, Dary, Gport };

  Kind kind = Kind::Recursive;
  int d = 0;            // Dary
  cpp_rational r = 0;   // Gport, r > 0

  static IncFamily recursive();
  static IncFamily dary(int d);
  static IncFamily bst() { return dary(2); }
  static IncFamily gport(cpp_rational r);

  /// Parse "recursive" | "inc-dary:<d>" | "bst" | "gport:<r>".
  static IncFamily from_descriptor(const std::string& descriptor);

  cpp_rational alpha() const;
  bool slotted() const { return kind == Kind::Dary; }
  std::string descriptor() const;
};

/// One growth-process draw. The shape of a d-ary tree carries slot labels;
/// gport shapes are plane (children ordered by insertion gap); recursive
/// shapes list children in attachment order.
LabeledTree sample_increasing_tree(std::size_t n, const IncFamily& f, SplitRng& rng);

/// Reusable sampler; keeps the weight structure allocated across draws.
class IncSampler {
 public:
  explicit IncSampler(const IncFamily& f);
  LabeledTree sample(std::size_t n, SplitRng& rng) const;
  const IncFamily& family() const { return family_; }

 private:
  IncFamily family_;
  std::int64_t weight_num_ = 1;   // per-vertex base weight p (of p + q*deg)
  std::int64_t weight_step_ = 0;  // q
  bool exact_weights_ = true;
};

/// Number of trees of size n: (n-1)! for recursive, prod (1+k(d-1)) for
/// d-ary; for gports the total weight prod (k(r+1)-1), exact in r.
cpp_rational count_increasing_trees(std::size_t n, const IncFamily& f);

/// n! / prod_v |t(v)|, always an exact integer.
cpp_int increasing_labellings_count(const Tree& t);

/// E(Z_{n,k}) = ((1+a)n - a) / (((1+a)k + 1)((1+a)k - a)) with a = alpha.
cpp_rational expected_fringe_count(std::size_t n, std::size_t k, const IncFamily& f);

/// All trees of the family with their exact probabilities (summing to one).
std::vector<std::pair<LabeledTree, cpp_rational>> enumerate_increasing(std::size_t n,
                                                                       const IncFamily& f,
                                                                       std::size_t bound = 8);

/// E(F(T_n)) for an additive functional from per-size toll expectations
/// (index k = 1..n); the k < n terms are weighted by E(Z_{n,k}).
double mean_additive_functional(std::size_t n, const IncFamily& f,
                                std::span<const double> toll_means);
cpp_rational mean_additive_functional_exact(std::size_t n, const IncFamily& f,
                                            std::span<const cpp_rational> toll_means);

}  // namespace fringe
