#pragma once

#include "fringe/canonical.hpp"
#include "fringe/increasing.hpp"
#include "fringe/simply_generated.hpp"
#include "fringe/tree.hpp"

namespace fringe {

/// ln nu(t) = sum_v ln P(xi = deg(v)); -inf when some degree is outside the
/// support.
double nu_log(const Tree& t, const OffspringDistribution& o);

/// Toll whose additive functional recovers ln nu(t): ln P(xi = root degree),
/// or 0 when that probability vanishes.
double toll_plane(const Tree& t, const OffspringDistribution& o);

/// Toll whose additive functional recovers ln(nu(t) prod_v deg(v)!/|Aut(t)|):
/// ln(P(xi = rho) rho!) - ln(m_1! m_2! ...), the m_i being multiplicities of
/// unordered-isomorphic root branches; 0 when P(xi = rho) = 0.
double toll_unordered(const Tree& t, const OffspringDistribution& o);

/// Toll for counting distinct unordered fringe subtrees of increasing trees:
/// ln|t| + ln(prod m_i!) minus ln of the falling factorial d^(rho) for d-ary
/// families, the rising factorial r^(rho) for gports, or nothing for
/// recursive trees.
double toll_inc_noniso(const Tree& t, const IncFamily& f);

/// Shape functional sum_v ln |t(v)|; exp(ln n! - value) is the number of
/// increasing labellings.
double shape_functional(const Tree& t);

/// Probability that a random recursive tree of size s = |S| is isomorphic to
/// S as an unordered tree: p_S = s / (prod_v |S(v)| * |Aut(S)|).
cpp_rational recursive_shape_probability(const Tree& s);

/// c_S = p_S / |S|, the per-size branch frequency used in series over shapes.
cpp_rational recursive_shape_coefficient(const Tree& s);

/// Tagged toll selector mirroring the evaluation entry points above.
struct Toll {
  enum class Kind { LogNu, PlaneEntropy, UnorderedAut, IncNonIso, LogSize, Constant };
  Kind kind = Kind::LogSize;
  OffspringDistribution offspring;  // LogNu / PlaneEntropy / UnorderedAut
  IncFamily inc_family;             // IncNonIso
  double constant = 0.0;            // Constant

  double operator()(const Tree& t) const;
};

}  // namespace fringe
