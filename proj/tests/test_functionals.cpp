#include "fringe/functionals.hpp"

#include <map>

#include "doctest.h"
#include "fringe/shapes.hpp"
#include "oracles.hpp"

using namespace fringe;

TEST_CASE("nu log") {
  auto plane = offspring_distribution(WeightSequence::plane());
  CHECK_EQ(nu_log(parse_tree("()"), plane), doctest::Approx(std::log(0.5)));

  auto binary = offspring_distribution(WeightSequence::dary(2));
  CHECK_EQ(nu_log(parse_tree("(()())"), binary), doctest::Approx(std::log(1.0 / 64.0)));

  auto motzkin = offspring_distribution(WeightSequence::motzkin());
  CHECK_EQ(nu_log(parse_tree("(()()())"), motzkin),
           -std::numeric_limits<double>::infinity());
}

TEST_CASE("plane toll and its additive functional") {
  auto binary = offspring_distribution(WeightSequence::dary(2));
  CHECK_EQ(toll_plane(parse_tree("()"), binary), doctest::Approx(std::log(0.25)));

  auto motzkin = offspring_distribution(WeightSequence::motzkin());
  CHECK_EQ(toll_plane(parse_tree("(()()())"), motzkin), 0.0);  // zero-probability degree

  auto geometric = offspring_distribution(WeightSequence::plane());
  for (const Tree& t : oracles::random_plane_trees(500, 60, 808)) {
    double additive = 0.0;
    for (VertexId v = 0; v < t.size(); ++v)
      additive += toll_plane(extract_fringe(t, v), geometric);
    CHECK_EQ(additive, doctest::Approx(nu_log(t, geometric)).epsilon(1e-10));
  }
}

TEST_CASE("unordered toll and its additive functional") {
  auto full_binary = offspring_distribution(WeightSequence::custom({1, 0, 1}));
  CHECK_EQ(toll_unordered(parse_tree("()"), full_binary), doctest::Approx(std::log(0.5)));
  // cherry: root toll ln(p_2 2!) - ln 2! = -ln 2, and the additive functional
  // over the three fringe subtrees gives ln(nu prod deg!/|Aut|) = ln(1/8)
  {
    Tree cherry = parse_tree("(()())");
    CHECK_EQ(toll_unordered(cherry, full_binary), doctest::Approx(-std::log(2.0)));
    double additive = 0.0;
    for (VertexId v = 0; v < cherry.size(); ++v)
      additive += toll_unordered(extract_fringe(cherry, v), full_binary);
    CHECK_EQ(additive, doctest::Approx(std::log(1.0 / 8.0)).epsilon(1e-12));
  }

  auto geometric = offspring_distribution(WeightSequence::plane());
  for (const Tree& t : oracles::random_plane_trees(500, 50, 909)) {
    double additive = 0.0;
    for (VertexId v = 0; v < t.size(); ++v)
      additive += toll_unordered(extract_fringe(t, v), geometric);
    double deg_factorials = 0.0;
    for (VertexId v = 0; v < t.size(); ++v)
      deg_factorials += std::lgamma(static_cast<double>(t.degree(v)) + 1.0);
    double target = nu_log(t, geometric) + deg_factorials - automorphism_size_log(t);
    CHECK_EQ(additive, doctest::Approx(target).epsilon(1e-10));
  }
}

TEST_CASE("increasing-family nonisomorphism toll") {
  CHECK_EQ(toll_inc_noniso(parse_tree("()"), IncFamily::recursive()), doctest::Approx(0.0));
  // two identical leaf branches: ln 3 + ln 2!
  CHECK_EQ(toll_inc_noniso(parse_tree("(()())"), IncFamily::recursive()),
           doctest::Approx(std::log(3.0) + std::log(2.0)));
  // bst with a single child: ln 2 - ln d^(1) = ln 2 - ln 2
  CHECK_EQ(toll_inc_noniso(parse_tree("(())"), IncFamily::bst()), doctest::Approx(0.0));
  // gport r=1 with root degree 2: ln 3 + ln 2 - ln(1*2)
  CHECK_EQ(toll_inc_noniso(parse_tree("(()())"), IncFamily::gport(1)),
           doctest::Approx(std::log(3.0)));
  CHECK_THROWS(toll_inc_noniso(parse_tree("(()()())"), IncFamily::bst()));
}

TEST_CASE("shape functional") {
  CHECK_EQ(shape_functional(parse_tree("((()))")), doctest::Approx(std::log(6.0)));
  CHECK_EQ(shape_functional(parse_tree("(()())")), doctest::Approx(std::log(3.0)));
  CHECK_EQ(shape_functional(parse_tree("((()())(()()))")), doctest::Approx(std::log(63.0)));

  for (const Tree& t : oracles::random_plane_trees(100, 20, 606)) {
    double log_labellings =
        std::lgamma(static_cast<double>(t.size()) + 1.0) - shape_functional(t);
    double exact = static_cast<double>(increasing_labellings_count(t));
    CHECK_EQ(std::exp(log_labellings), doctest::Approx(exact).epsilon(1e-9));
  }
}

TEST_CASE("recursive shape probabilities") {
  CHECK_EQ(recursive_shape_probability(parse_tree("()")), 1);
  CHECK_EQ(recursive_shape_probability(parse_tree("((()))")), cpp_rational(1, 2));
  CHECK_EQ(recursive_shape_probability(parse_tree("(()())")), cpp_rational(1, 2));
  CHECK_EQ(recursive_shape_coefficient(parse_tree("(()())")), cpp_rational(1, 6));
}

TEST_CASE("shape probabilities sum to one per size") {
  ShapeCatalog catalog(7, DegreeSet::all());
  for (std::uint32_t s = 1; s <= 7; ++s) {
    cpp_rational total = 0;
    auto [lo, hi] = catalog.id_range(s);
    for (std::uint32_t id = lo; id < hi; ++id)
      total += recursive_shape_probability(catalog.tree_of(id));
    CHECK_EQ(total, 1);
  }
}

TEST_CASE("shape probability agrees with growth-process enumeration") {
  for (std::size_t s = 2; s <= 6; ++s) {
    // aggregate enumerated recursive trees by unordered shape
    std::map<std::string, cpp_rational> by_shape;
    for (auto& [lt, p] : enumerate_increasing(s, IncFamily::recursive()))
      by_shape[canonical_code(lt.shape, IsoNotion::Unordered).bytes] += p;

    ShapeCatalog catalog(static_cast<std::uint32_t>(s), DegreeSet::all());
    auto [lo, hi] = catalog.id_range(static_cast<std::uint32_t>(s));
    for (std::uint32_t id = lo; id < hi; ++id) {
      Tree shape = catalog.tree_of(id);
      auto key = canonical_code(shape, IsoNotion::Unordered).bytes;
      REQUIRE(by_shape.count(key));
      CHECK_EQ(by_shape[key], recursive_shape_probability(shape));
    }
  }
}

TEST_CASE("catalog coefficients match the exact formulas") {
  ShapeCatalog catalog(9, DegreeSet::all());
  for (std::uint32_t s = 1; s <= 9; ++s) {
    auto [lo, hi] = catalog.id_range(s);
    for (std::uint32_t id = lo; id < hi; ++id) {
      double exact = static_cast<double>(recursive_shape_coefficient(catalog.tree_of(id)));
      CHECK_EQ(catalog.recursive_coefficient(id), doctest::Approx(exact).epsilon(1e-12));
    }
  }

  // bst probabilities against the growth-process enumeration
  ShapeCatalog binary(6, DegreeSet::of({0, 1, 2}));
  for (std::uint32_t s = 2; s <= 6; ++s) {
    std::map<std::string, double> by_shape;
    for (auto& [lt, p] : enumerate_increasing(s, IncFamily::bst()))
      by_shape[canonical_code(lt.shape, IsoNotion::Unordered).bytes] +=
          static_cast<double>(p);
    auto [lo, hi] = binary.id_range(s);
    for (std::uint32_t id = lo; id < hi; ++id) {
      auto key = canonical_code(binary.tree_of(id), IsoNotion::Unordered).bytes;
      REQUIRE(by_shape.count(key));
      CHECK_EQ(binary.bst_probability(id), doctest::Approx(by_shape[key]).epsilon(1e-12));
    }
  }
}

TEST_CASE("noniso toll mean via the additive-functional formula") {
  for (const char* desc : {"recursive", "bst", "gport:1"}) {
    IncFamily f = IncFamily::from_descriptor(desc);
    const std::size_t n = 7;

    // per-size enumerated means of the toll
    std::vector<double> toll_mean(n + 1, 0.0);
    for (std::size_t k = 1; k <= n; ++k) {
      double mean = 0.0;
      for (auto& [lt, p] : enumerate_increasing(k, f))
        mean += static_cast<double>(p) * toll_inc_noniso(lt.shape, f);
      toll_mean[k] = mean;
    }

    // enumerated mean of the additive functional at size n
    double brute = 0.0;
    for (auto& [lt, p] : enumerate_increasing(n, f)) {
      double F = 0.0;
      for (VertexId v = 0; v < lt.shape.size(); ++v)
        F += toll_inc_noniso(extract_fringe(lt.shape, v), f);
      brute += static_cast<double>(p) * F;
    }

    CHECK_EQ(mean_additive_functional(n, f, toll_mean),
             doctest::Approx(brute).epsilon(1e-12));
  }
}

TEST_CASE("toll selector dispatches") {
  Toll toll;
  toll.kind = Toll::Kind::LogSize;
  CHECK_EQ(toll(parse_tree("((()))")), doctest::Approx(std::log(3.0)));
  toll.kind = Toll::Kind::Constant;
  toll.constant = 2.5;
  CHECK_EQ(toll(parse_tree("()")), 2.5);
  toll.kind = Toll::Kind::IncNonIso;
  toll.inc_family = IncFamily::recursive();
  CHECK_EQ(toll(parse_tree("(()())")), doctest::Approx(std::log(6.0)));
}
