#include "fringe/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fringe {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log_factorial(std::uint64_t m) { return std::lgamma(static_cast<double>(m) + 1.0); }

/// ln(prod m_i!) over multiplicities of unordered-isomorphic root branches.
double root_branch_multiplicity_log(const Tree& t) {
  auto kids = t.children(t.root());
  if (kids.size() < 2) return 0.0;
  const FringeClasses fc = intern_fringe_classes(t, IsoNotion::Unordered);
  std::vector<std::uint32_t> ids;
  ids.reserve(kids.size());
  for (VertexId c : kids) ids.push_back(fc.class_of[c]);
  std::sort(ids.begin(), ids.end());
  double total = 0.0;
  std::uint64_t run = 1;
  for (std::size_t i = 1; i <= ids.size(); ++i) {
    if (i < ids.size() && ids[i] == ids[i - 1]) {
      ++run;
    } else {
      if (run > 1) total += log_factorial(run);
      run = 1;
    }
  }
  return total;
}

}  // namespace

double nu_log(const Tree& t, const OffspringDistribution& o) {
  double total = 0.0;
  for (VertexId v = 0; v < t.size(); ++v) {
    double lp = o.log_prob(t.degree(v));
    if (lp == -kInf) return -kInf;
    total += lp;
  }
  return total;
}

double toll_plane(const Tree& t, const OffspringDistribution& o) {
  double lp = o.log_prob(t.root_degree());
  return lp == -kInf ? 0.0 : lp;
}

double toll_unordered(const Tree& t, const OffspringDistribution& o) {
  const std::uint32_t rho = t.root_degree();
  double lp = o.log_prob(rho);
  if (lp == -kInf) return 0.0;
  return lp + log_factorial(rho) - root_branch_multiplicity_log(t);
}

double toll_inc_noniso(const Tree& t, const IncFamily& f) {
  const std::uint32_t rho = t.root_degree();
  double value = std::log(static_cast<double>(t.size())) + root_branch_multiplicity_log(t);
  switch (f.kind) {
    case IncFamily::Kind::Recursive: break;
    case IncFamily::Kind::Dary: {
      if (rho > static_cast<std::uint32_t>(f.d))
        throw std::invalid_argument("root degree exceeds the family arity");
      for (std::uint32_t i = 0; i < rho; ++i)
        value -= std::log(static_cast<double>(f.d - i));
      break;
    }
    case IncFamily::Kind::Gport: {
      const double r = static_cast<double>(f.r);
      for (std::uint32_t i = 0; i < rho; ++i) value -= std::log(r + i);
      break;
    }
  }
  return value;
}

double shape_functional(const Tree& t) {
  double total = 0.0;
  for (std::uint32_t s : fringe_sizes(t)) total += std::log(static_cast<double>(s));
  return total;
}

cpp_rational recursive_shape_probability(const Tree& s) {
  cpp_int sizes_product = 1;
  for (std::uint32_t sz : fringe_sizes(s)) sizes_product *= sz;
  const cpp_int aut = automorphism_size_exact(s);
  return cpp_rational(cpp_int(s.size()), sizes_product * aut);
}

cpp_rational recursive_shape_coefficient(const Tree& s) {
  return recursive_shape_probability(s) / cpp_int(s.size());
}

double Toll::operator()(const Tree& t) const {
  switch (kind) {
    case Kind::LogNu: return nu_log(t, offspring);
    case Kind::PlaneEntropy: return toll_plane(t, offspring);
    case Kind::UnorderedAut: return toll_unordered(t, offspring);
    case Kind::IncNonIso: return toll_inc_noniso(t, inc_family);
    case Kind::LogSize: return std::log(static_cast<double>(t.size()));
    case Kind::Constant: return constant;
  }
  return 0.0;
}

}  // namespace fringe
