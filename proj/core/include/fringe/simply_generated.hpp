#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fringe/rng.hpp"
#include "fringe/tree.hpp"

namespace fringe {

/// Weight sequence (phi_k) of a simply generated family, with closed-form
/// evaluators for Phi and its first two derivatives.
///
/// Built-ins: plane (phi_k = 1, Phi = 1/(1-x)), d-ary (phi_k = C(d,k),
/// Phi = (1+x)^d), Motzkin (1 + x + x^2), labelled (phi_k = 1/k!, Phi = e^x),
/// plus arbitrary finite custom sequences.
class WeightSequence {
 public:
  enum class Family { Plane, Dary, Motzkin, Labelled, Custom };

  static WeightSequence plane();
  static WeightSequence dary(int d);
  static WeightSequence motzkin();
  static WeightSequence labelled();
  static WeightSequence custom(std::vector<double> phi);

  /// Parse "plane" | "dary:<d>" | "motzkin" | "labelled" | "custom:<w0,w1,...>".
  static WeightSequence from_descriptor(const std::string& descriptor);

  double phi(std::uint32_t k) const;
  double Phi(double x) const;
  double dPhi(double x) const;
  double d2Phi(double x) const;

  double radius() const;   // +inf when entire
  int max_degree() const;  // -1 when support is unbounded
  /// gcd of the positive support {m >= 1 : phi_m > 0}; the period of the
  /// family (sizes n with y_n > 0 satisfy n == 1 mod gcd).
  int support_gcd() const;

  bool slotted() const { return family_ == Family::Dary; }
  int arity() const { return arity_; }
  Family family() const { return family_; }
  const std::string& descriptor() const { return descriptor_; }

 private:
  Family family_ = Family::Plane;
  int arity_ = 0;                   // d for Dary
  std::vector<double> phi_;         // Custom only
  std::string descriptor_;
};

struct NoCriticalPoint : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ImpossibleSize : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Solve t Phi'(t) = Phi(t) on (0, R]; bracketing plus bisection/Newton on
/// g(t) = t Phi'(t) - Phi(t), which increases through zero.
double solve_tau(const WeightSequence& w);

/// Critical offspring law p_m = phi_m tau^m / Phi(tau). Unbounded laws are
/// truncated where p_m < 1e-18 and renormalized.
struct OffspringDistribution {
  std::vector<double> p;
  std::vector<double> log_p;  // -inf where p = 0
  double tau = 0;
  double sigma2 = 0;
  int support_gcd = 1;

  double prob(std::uint32_t m) const { return m < p.size() ? p[m] : 0.0; }
  double log_prob(std::uint32_t m) const;
};

OffspringDistribution offspring_distribution(const WeightSequence& w);

/// sigma^2 = tau^2 Phi''(tau) / Phi(tau), as stored on the distribution.
double offspring_variance(const OffspringDistribution& o);

/// Turn a degree multiset with sum = n-1 into the unique tree whose preorder
/// degree walk is a cyclic rotation of the input (cycle lemma).
Tree degrees_to_tree(std::span<const std::uint32_t> degrees);

/// Exact conditioned sampler: i.i.d. degrees rejected on the total, then the
/// cycle-lemma rotation; d-ary families get uniform random slot subsets.
class GwSampler {
 public:
  explicit GwSampler(const WeightSequence& w);

  Tree sample(std::size_t n, SplitRng& rng) const;
  const OffspringDistribution& offspring() const { return off_; }
  const WeightSequence& weights() const { return w_; }

 private:
  std::uint32_t draw_degree(SplitRng& rng) const;

  WeightSequence w_;
  OffspringDistribution off_;
  std::vector<double> cumulative_;       // small supports
  std::vector<double> alias_prob_;       // large supports
  std::vector<std::uint32_t> alias_other_;
};

Tree sample_gw_tree(std::size_t n, const WeightSequence& w, SplitRng& rng);

/// All plane trees of size n with their weights w(t) = prod phi_deg(v);
/// the weights sum to y_n.
std::vector<std::pair<Tree, double>> enumerate_family(std::size_t n, const WeightSequence& w,
                                                      std::size_t bound = 9);

/// All d-ary (slotted) trees of size n, each of weight one.
std::vector<Tree> enumerate_family_slotted(std::size_t n, int d, std::size_t bound = 9);

/// Theorem-style asymptotic gcd * sqrt(Phi(tau)/(2 pi Phi''(tau))) *
/// Phi'(tau)^n / n^{3/2}, as a natural log (the value overflows doubles for
/// moderate n). Returns -inf for sizes the family cannot realize.
double yn_asymptotic_log(std::size_t n, const WeightSequence& w);

/// exp of the above; may overflow to +inf.
double yn_asymptotic(std::size_t n, const WeightSequence& w);

boost::multiprecision::cpp_int catalan(std::uint32_t k);

/// Exact y_1..y_N for integer-weight families with bounded degrees (and the
/// plane family, which routes through catalan()).
std::vector<boost::multiprecision::cpp_int> yn_exact_series(const WeightSequence& w,
                                                            std::uint32_t N);

}  // namespace fringe
