#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

#include "fringe/shapes.hpp"

namespace fringe {

/// Exact counts u_1..u_K of unordered rooted trees with vertex degrees in
/// `degrees`, via the multiset (Euler-transform) recurrences. The unrestricted
/// case uses the classic divisor-sum convolution.
std::vector<boost::multiprecision::cpp_int> unordered_count_series(const DegreeSet& degrees,
                                                                   std::uint32_t K);

/// Exact counts of plane trees with degrees in a finite set (0/1 weights).
std::vector<boost::multiprecision::cpp_int> plane_count_series(const DegreeSet& degrees,
                                                               std::uint32_t K);

struct GrowthEstimate {
  double growth = 0.0;    // b: u_k ~ a b^k / k^{3/2} along admissible sizes
  double radius = 0.0;    // 1/b
  double error_bound = 0.0;
};

/// Per-vertex exponential growth rate of the unordered counting sequence,
/// extracted from the truncated functional equation: at the square-root
/// singularity rho the equation y = F(x, y) becomes tangent (dF/dy = 1), and
/// higher substitutions U(x^i) are evaluated from the exact series, where
/// they converge geometrically.
GrowthEstimate unordered_growth(const DegreeSet& degrees, std::uint32_t K);

/// Psi'(upsilon) for the 0/1 weight sequence of a degree set, where upsilon
/// solves upsilon Psi'(upsilon) = Psi(upsilon): the exponential growth rate
/// of plane trees with restricted degrees.
double restricted_plane_growth(const DegreeSet& degrees);

}  // namespace fringe
