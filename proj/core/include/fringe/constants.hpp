#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fringe/canonical.hpp"
#include "fringe/increasing.hpp"
#include "fringe/series.hpp"
#include "fringe/simply_generated.hpp"

namespace fringe {

/// A computed asymptotic constant. `error_bound` comes from explicit tail
/// estimates and truncation sensitivity, never from guessing; `published` is
/// the 10-digit reference value when one is known.
struct ConstantResult {
  std::string id;
  double value = 0.0;
  double error_bound = 0.0;
  std::string method;
  std::optional<double> published;
  std::string note;
};

/// Published central-limit constants consumed as inputs (never recomputed):
/// growth exponent of ln|Aut| for uniform full binary trees (by leaves)...
double aut_growth_exponent_full_binary();  // gamma  = 0.2710416936
/// ...and for unordered rooted trees (by vertices).
double aut_growth_exponent_polya();        // gamma' = 0.0522901096

/// Entropy mu = sum_m p_m ln p_m of an offspring law.
ConstantResult mu_plane_entropy(const OffspringDistribution& o);

/// kappa = sqrt(2/(pi sigma^2)); agrees with the 2 tau^{-1} sqrt(Phi/(2 pi
/// Phi'')) form to machine precision.
double kappa_simply_generated(const WeightSequence& w);
double kappa_increasing(const IncFamily& f);

/// Distinct unordered fringe subtrees of random recursive trees, lower
/// constant: series over unordered shapes up to s_max vertices plus the
/// sum_k ln k/(k(k+1)) part. per_size, when given, receives each shape
/// size's contribution (the measured convergence record).
ConstantResult c17_series(std::uint32_t s_max = 16, std::vector<double>* per_size = nullptr);

/// Distinct unordered fringe subtrees of random binary search trees, lower
/// constant: base series plus the isomorphic-sibling correction summed over
/// unordered binary shapes up to s_max vertices.
ConstantResult c3_series(std::uint32_t s_max = 20, std::vector<double>* per_size = nullptr);

/// Look up or compute a named constant. Ids: c1..c18, b_we, b_polya,
/// mu_labelled, gamma_full_binary, gamma_polya, c_plane, c_binary,
/// c_motzkin, c_dary:<d>, underline_c:<d>, overline_c:<d>,
/// C1:<family>:<notion>, C2:<family>:<notion>.
ConstantResult theorem_constant(const std::string& id);

/// The fixed table shown by the CLI.
std::vector<std::string> constant_ids();

/// Normalized comparison band for a census: counts scaled by sqrt(ln n)/n
/// (simply generated) or (ln n)/n (increasing) should approach
/// [kappa sqrt(C2), kappa sqrt(C1)] resp. [kappa C2, kappa C1].
struct TheoryBand {
  double lower = 0.0;
  double upper = 0.0;
  bool increasing = false;  // selects the ln n vs sqrt(ln n) normalization
  std::string description;
};

/// Band for a family descriptor and notion; throws std::invalid_argument for
/// combinations without established constants.
TheoryBand theory_band(const std::string& family_descriptor, IsoNotion notion);

}  // namespace fringe
