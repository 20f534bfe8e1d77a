#include <boost/multiprecision/cpp_bin_float.hpp>

#include "doctest.h"
#include "fringe/constants.hpp"
#include "fringe/count_series.hpp"
#include "fringe/series.hpp"
#include "fringe/shapes.hpp"

using namespace fringe;
using boost::multiprecision::cpp_int;

TEST_CASE("series summation against closed forms") {
  // sum 1/k^2 = pi^2/6 even with a modest cutoff, thanks to the tail terms
  SeriesResult basel = sum_to_infinity([](double k) { return 1.0 / (k * k); }, 1, 20000);
  CHECK_EQ(basel.value, doctest::Approx(M_PI * M_PI / 6.0).epsilon(1e-13));
  CHECK_LT(std::abs(basel.value - M_PI * M_PI / 6.0), basel.error_bound + 1e-15);

  // telescoping sum 1/(k(k+1)) = 1
  SeriesResult telescoping =
      sum_to_infinity([](double k) { return 1.0 / (k * (k + 1.0)); }, 1, 20000);
  CHECK_EQ(telescoping.value, doctest::Approx(1.0).epsilon(1e-13));

  // zero series
  SeriesResult zero = sum_to_infinity([](double) { return 0.0; }, 1, 100);
  CHECK_EQ(zero.value, 0.0);
  CHECK_EQ(zero.error_bound, 0.0);
}

TEST_CASE("integrator sanity") {
  double v = integrate([](double x) { return std::exp(-x); }, 0.0, 40.0);
  CHECK_EQ(v, doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("unordered count series match brute-force shape enumeration") {
  auto we = unordered_count_series(DegreeSet::of({0, 1, 2}), 12);
  const std::uint64_t we_expected[] = {1, 1, 2, 3, 6, 11, 23, 46, 98};
  for (std::uint32_t k = 1; k <= 9; ++k) CHECK_EQ(we[k], we_expected[k - 1]);

  auto polya = unordered_count_series(DegreeSet::all(), 12);
  const std::uint64_t polya_expected[] = {1, 1, 2, 4, 9, 20, 48, 115, 286, 719};
  for (std::uint32_t k = 1; k <= 10; ++k) CHECK_EQ(polya[k], polya_expected[k - 1]);

  ShapeCatalog we_catalog(12, DegreeSet::of({0, 1, 2}));
  ShapeCatalog polya_catalog(12, DegreeSet::all());
  for (std::uint32_t k = 1; k <= 12; ++k) {
    CHECK_EQ(we[k], we_catalog.count(k));
    CHECK_EQ(polya[k], polya_catalog.count(k));
  }

  // full binary (periodic): counts vanish at even sizes and match the
  // {0,1,2} class through the leaves <-> internal-vertices correspondence
  auto full = unordered_count_series(DegreeSet::of({0, 2}), 25);
  for (std::uint32_t k = 2; k <= 25; k += 2) CHECK_EQ(full[k], 0);
  for (std::uint32_t k = 1; k <= 12; ++k) CHECK_EQ(full[2 * k + 1], we[k]);
}

TEST_CASE("plane count series") {
  auto motzkin = plane_count_series(DegreeSet::of({0, 1, 2}), 8);
  const std::uint64_t motzkin_expected[] = {1, 1, 2, 4, 9, 21, 51, 127};
  for (std::uint32_t k = 1; k <= 8; ++k) CHECK_EQ(motzkin[k], motzkin_expected[k - 1]);

  auto plane = plane_count_series(DegreeSet::all(), 6);
  const std::uint64_t catalan_small[] = {1, 1, 2, 5, 14, 42};
  for (std::uint32_t k = 1; k <= 6; ++k) CHECK_EQ(plane[k], catalan_small[k - 1]);
}

TEST_CASE("restricted plane growth rates") {
  CHECK_EQ(restricted_plane_growth(DegreeSet::of({0, 1, 2})), doctest::Approx(3.0).epsilon(1e-12));
  CHECK_EQ(restricted_plane_growth(DegreeSet::all()), doctest::Approx(4.0).epsilon(1e-12));
  CHECK_EQ(restricted_plane_growth(DegreeSet::of({0, 2})), doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("unordered growth constants") {
  // Reference digits from an independent 40-digit evaluation of the same
  // singularity conditions (tangency of the exact-coefficient functional
  // equations); they agree with the usual 10-digit citations up to one unit
  // in the final printed digit.
  GrowthEstimate we = unordered_growth(DegreeSet::of({0, 1, 2}), 400);
  CHECK_EQ(we.growth, doctest::Approx(2.483253536172637).epsilon(1e-11));
  CHECK_LT(std::abs(we.growth - 2.483253536172637), we.error_bound + 1e-12);

  GrowthEstimate polya = unordered_growth(DegreeSet::all(), 400);
  CHECK_EQ(polya.growth, doctest::Approx(2.955765285651995).epsilon(1e-11));

  // the periodic {0,2} class grows with the square root of the {0,1,2} rate
  GrowthEstimate full = unordered_growth(DegreeSet::of({0, 2}), 400);
  CHECK_EQ(full.growth * full.growth, doctest::Approx(we.growth).epsilon(1e-8));
}

TEST_CASE("offspring entropies") {
  auto binary = mu_plane_entropy(offspring_distribution(WeightSequence::dary(2)));
  CHECK_EQ(binary.value, doctest::Approx(-1.5 * std::log(2.0)).epsilon(1e-12));

  auto geometric = mu_plane_entropy(offspring_distribution(WeightSequence::plane()));
  CHECK_EQ(geometric.value, doctest::Approx(-2.0 * std::log(2.0)).epsilon(1e-12));

  auto labelled = mu_plane_entropy(offspring_distribution(WeightSequence::labelled()));
  CHECK_EQ(labelled.value, doctest::Approx(-1.3048422423).epsilon(1e-9));
}

TEST_CASE("kappa values") {
  CHECK_EQ(kappa_simply_generated(WeightSequence::plane()),
           doctest::Approx(std::sqrt(1.0 / M_PI)).epsilon(1e-12));
  CHECK_EQ(kappa_simply_generated(WeightSequence::custom({1, 0, 1})),
           doctest::Approx(std::sqrt(2.0 / M_PI)).epsilon(1e-12));
  CHECK_EQ(kappa_increasing(IncFamily::bst()), doctest::Approx(2.0));
  CHECK_EQ(kappa_increasing(IncFamily::recursive()), doctest::Approx(1.0));
  CHECK_EQ(kappa_increasing(IncFamily::gport(1)), doctest::Approx(0.5));
}

TEST_CASE("closed-form constants") {
  CHECK_EQ(theorem_constant("c6").value, doctest::Approx(4.0 * std::log(2.0)).epsilon(1e-15));
  CHECK_EQ(theorem_constant("c14").value, doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK_EQ(theorem_constant("c16").value, doctest::Approx(2.0 * std::log(3.0)).epsilon(1e-15));
  CHECK_EQ(theorem_constant("c_plane").value,
           doctest::Approx(std::sqrt(std::log(4.0) / M_PI)).epsilon(1e-12));
  CHECK_EQ(theorem_constant("c_binary").value,
           doctest::Approx(2.0 * std::sqrt(std::log(4.0) / M_PI)).epsilon(1e-12));
}

TEST_CASE("series identities") {
  ConstantResult c5 = theorem_constant("c5");
  ConstantResult c15 = theorem_constant("c15");
  CHECK_EQ(c15.value, doctest::Approx(c5.value - 2.0 * std::log(2.0) / 3.0).epsilon(1e-10));

  // independent 40-digit reference values for the two series
  CHECK_EQ(c5.value, doctest::Approx(2.407129833499221).epsilon(1e-12));
  CHECK_EQ(c15.value, doctest::Approx(1.945031713125924).epsilon(1e-12));
  CHECK_EQ(theorem_constant("c13").value, doctest::Approx(0.5854804841166782).epsilon(1e-12));

  // underline/overline specialize to the bst constants at d = 2
  CHECK_EQ(theorem_constant("underline_c:2").value,
           doctest::Approx(c5.value).epsilon(1e-12));
  CHECK_EQ(theorem_constant("overline_c:2").value,
           doctest::Approx(theorem_constant("c6").value).epsilon(1e-14));
}

TEST_CASE("reported intervals contain the published values") {
  for (const std::string& id : constant_ids()) {
    ConstantResult r = theorem_constant(id);
    if (!r.published) continue;
    // Slack of two final-digit units: half an ulp covers the published
    // rounding itself, and two of the citations (c15 and b_we) are off by one
    // unit in their last printed digit against independent 40-digit
    // evaluations of the same formulas.
    double slack = 2.01e-10 * std::max(1.0, std::abs(r.value));
    CHECK_MESSAGE(std::abs(r.value - *r.published) <= r.error_bound + slack,
                  id, " value ", r.value, " published ", *r.published, " err ",
                  r.error_bound);
  }
}

TEST_CASE("single-vertex shape contribution of the recursive series") {
  // independent oracle: the unsimplified inner coefficient
  // sum_{m=2}^{l} (-1)^{l-m} C(l,m) ln m!  computed in extended precision
  using big_float = boost::multiprecision::cpp_bin_float_50;
  big_float oracle = 0;
  for (int ell = 2; ell <= 48; ++ell) {
    big_float inner = 0;
    cpp_int binom = cpp_int(ell) * (ell - 1) / 2;  // C(ell, 2)
    big_float log_factorial = log(big_float(2));
    for (int m = 2; m <= ell; ++m) {
      if (m > 2) log_factorial += log(big_float(m));
      big_float term = big_float(binom) * log_factorial;
      if ((ell - m) % 2 == 0)
        inner += term;
      else
        inner -= term;
      binom = binom * (ell - m) / (m + 1);
    }
    big_float factorial = 1;
    for (int j = 2; j <= ell; ++j) factorial *= j;
    oracle += inner / (factorial * (ell + 1));
  }

  std::vector<double> per_size;
  c17_series(8, &per_size);
  CHECK_EQ(per_size[1], doctest::Approx(static_cast<double>(oracle)).epsilon(1e-10));
}

TEST_CASE("recursive shape series stabilizes") {
  std::vector<double> values;
  for (std::uint32_t s_max : {10u, 12u, 14u}) values.push_back(c17_series(s_max).value);
  double d1 = std::abs(values[1] - values[0]);
  double d2 = std::abs(values[2] - values[1]);
  CHECK_LT(d2, d1);
  CHECK_LT(d2, 2e-4);
}

TEST_CASE("theory bands") {
  TheoryBand plane = theory_band("plane", IsoNotion::Plane);
  CHECK_EQ(plane.lower, doctest::Approx(plane.upper).epsilon(1e-9));
  CHECK_EQ(plane.lower, doctest::Approx(std::sqrt(std::log(4.0) / M_PI)).epsilon(1e-9));
  CHECK_FALSE(plane.increasing);

  TheoryBand bst = theory_band("bst", IsoNotion::AsFamily);
  CHECK(bst.increasing);
  CHECK_EQ(bst.lower, doctest::Approx(2.4071298335).epsilon(1e-7));
  CHECK_EQ(bst.upper, doctest::Approx(4.0 * std::log(2.0)).epsilon(1e-12));

  TheoryBand binary_unordered = theory_band("dary:2", IsoNotion::Unordered);
  CHECK_EQ(binary_unordered.lower, doctest::Approx(1.0591261434).epsilon(1e-7));
  CHECK_EQ(binary_unordered.upper, doctest::Approx(1.0761505454).epsilon(1e-5));

  TheoryBand binary_plane = theory_band("dary:2", IsoNotion::Plane);
  CHECK_EQ(binary_plane.lower, doctest::Approx(1.1505709891).epsilon(1e-9));
  CHECK_EQ(binary_plane.upper, doctest::Approx(1.1827073223).epsilon(1e-9));

  TheoryBand labelled_plane = theory_band("labelled", IsoNotion::Plane);
  CHECK_EQ(labelled_plane.lower, doctest::Approx(0.9114210724).epsilon(1e-8));
  CHECK_EQ(labelled_plane.upper, doctest::Approx(0.9394372787).epsilon(1e-9));

  TheoryBand labelled_unordered = theory_band("labelled", IsoNotion::Unordered);
  CHECK_EQ(labelled_unordered.lower, doctest::Approx(0.8184794989).epsilon(1e-8));
  CHECK_EQ(labelled_unordered.upper, doctest::Approx(0.8306271816).epsilon(1e-5));

  TheoryBand recursive = theory_band("recursive", IsoNotion::Unordered);
  CHECK_EQ(recursive.upper, doctest::Approx(1.0837575972).epsilon(1e-5));

  TheoryBand port = theory_band("gport:1", IsoNotion::Plane);
  CHECK_EQ(port.lower, doctest::Approx(0.5854804841).epsilon(1e-8));
  CHECK_EQ(port.upper, doctest::Approx(std::log(2.0)).epsilon(1e-12));

  CHECK_THROWS(theory_band("recursive", IsoNotion::Plane));
  CHECK_THROWS(theory_band("gport:2", IsoNotion::Unordered));
  CHECK_THROWS(theory_band("nonsense", IsoNotion::Plane));
}

TEST_CASE("derived C1/C2 ids") {
  ConstantResult c1 = theorem_constant("C1:bst:family");
  ConstantResult c2 = theorem_constant("C2:bst:family");
  CHECK_EQ(c1.value, doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-9));
  CHECK(c2.value <= c1.value + 1e-12);
  CHECK(c2.value > 0.0);

  // C1 >= C2 > 0 in every configured setting
  struct Probe {
    const char* family;
    IsoNotion notion;
  };
  for (Probe probe : std::initializer_list<Probe>{{"plane", IsoNotion::Plane},
                                                  {"dary:2", IsoNotion::Plane},
                                                  {"dary:2", IsoNotion::Unordered},
                                                  {"labelled", IsoNotion::Plane},
                                                  {"labelled", IsoNotion::Unordered},
                                                  {"bst", IsoNotion::AsFamily},
                                                  {"bst", IsoNotion::Plane},
                                                  {"bst", IsoNotion::Unordered},
                                                  {"recursive", IsoNotion::Unordered},
                                                  {"gport:1", IsoNotion::Plane}}) {
    std::string suffix = std::string(probe.family) + ":" + to_string(probe.notion);
    double C1 = theorem_constant("C1:" + suffix).value;
    double C2 = theorem_constant("C2:" + suffix).value;
    CHECK_MESSAGE(C1 >= C2 - 1e-9, suffix);
    CHECK_MESSAGE(C2 > 0.0, suffix);
  }
}
