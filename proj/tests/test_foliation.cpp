#include <doctest.h>

#include "foliacoh/fixtures.hpp"
#include "foliacoh/foliation.hpp"

using namespace foliacoh;
using Coeffs = std::vector<std::int64_t>;

namespace {

FoliationStrataModel hopf_strata() {
  FoliationStrataModel m;
  m.q = 2;
  m.dim_a = 1;
  m.strata = {{"open", 0, 0, PoincarePolynomial(Coeffs{1})},
              {"leaf_1", 2, 1, PoincarePolynomial(Coeffs{1})},
              {"leaf_2", 2, 1, PoincarePolynomial(Coeffs{1})}};
  return m;
}

bool has_rule(const ValidationReport& r, const std::string& rule) {
  for (const auto& i : r.issues)
    if (i.rule == rule) return true;
  return false;
}

}  // namespace

TEST_CASE("strata series for the Hopf flow") {
  const auto m = hopf_strata();
  CHECK(validate_strata(m).ok());
  const auto eq = equivariant_series_from_strata(m);
  CHECK(eq.numerator().coeffs() == Coeffs{1, 0, 1});
  CHECK(eq.den_exp() == 1);
  const auto b = basic_series_formal(m);
  CHECK(b.basic.coeffs() == Coeffs{1, 0, 1});
  CHECK(b.euler == 2);
  CHECK(b.closed_leaf_euler == 2);
  CHECK(eq.expand(20) == (PoincareSeries(b.basic.polynomial()) * PoincareSeries(SignedPolynomial({1}), 1)).expand(20));
}

TEST_CASE("strata validation rules") {
  auto odd = hopf_strata();
  odd.q = 3;
  odd.strata = {{"open", 0, 0, PoincarePolynomial(Coeffs{1})}, {"leaf", 3, 1, PoincarePolynomial(Coeffs{1})}};
  CHECK(has_rule(validate_strata(odd), "isolated-closed-leaf"));
  CHECK_THROWS_AS(equivariant_series_from_strata(odd), ValidationError);

  auto bound = hopf_strata();
  bound.dim_a = 2;
  bound.strata = {{"open", 0, 0, PoincarePolynomial(Coeffs{1})}, {"leaf", 2, 2, PoincarePolynomial(Coeffs{1})}};
  CHECK(has_rule(validate_strata(bound), "closed-leaf-bound"));
}

TEST_CASE("formality that the data cannot support is reported") {
  FoliationStrataModel m;
  m.q = 1;
  m.dim_a = 1;
  m.strata = {{"M", 0, 0, PoincarePolynomial(Coeffs{1, 1})}};
  CHECK_THROWS_AS(basic_series_formal(m), InconsistentModel);
}

TEST_CASE("Borel inequality") {
  CHECK(borel_check(2, 2, true).consistent);
  CHECK(borel_check(2, 2, true).equality);
  CHECK(borel_check(2, 0, false).consistent);
  CHECK_FALSE(borel_check(2, 2, false).consistent);
  CHECK_FALSE(borel_check(2, 0, true).consistent);
  CHECK_FALSE(borel_check(1, 2, true).inequality_holds);
}

TEST_CASE("localization rank") {
  auto m = fixtures::hopf_module(0);
  m.window = default_window(m);
  const auto v = localization_rank_check(m, 0);
  REQUIRE(v.consistent);
  CHECK(*v.consistent);
  CHECK_FALSE(*localization_rank_check(m, 1).consistent);
}

TEST_CASE("Morse series and perfectness") {
  MorseData d;
  d.components = {{"min", 0, 1, PoincarePolynomial(Coeffs{1})}, {"max", 2, 1, PoincarePolynomial(Coeffs{1})}};
  const PoincarePolynomial p(Coeffs{1, 0, 1});
  CHECK(validate_morse(d, 1).ok());
  const auto v = perfectness_check(d, p, 1);
  CHECK(v.perfect);
  CHECK(v.series.basic.coeffs() == Coeffs{1, 0, 1});
  CHECK(v.series.equivariant.den_exp() == 1);

  d.components.push_back({"saddle", 1, 0, PoincarePolynomial(Coeffs{1})});
  d.components.push_back({"extra", 2, 0, PoincarePolynomial(Coeffs{1})});
  const auto w = perfectness_check(d, p, 1);
  CHECK_FALSE(w.perfect);
  CHECK(w.gap.ok);
  CHECK(w.gap.quotient == Coeffs{0, 1});
  CHECK(w.series.equivariant.numerator().coeffs() == Coeffs{1, 1, 2, -1, -1});
}

TEST_CASE("simple polytopes") {
  const auto seg = polytope_series({{2, 1}, 2, std::nullopt});
  CHECK(seg.basic.coeffs() == Coeffs{1, 0, 1});
  const auto sq = polytope_series({{4, 4, 1}, 4, std::nullopt});
  CHECK(sq.basic.coeffs() == Coeffs{1, 0, 2, 0, 1});
  CHECK(euler_at_minus_one(sq.basic.polynomial()) == 4);
  CHECK(sq.induced.q == 4);
  const auto tri = polytope_series({{3, 3, 1}, 4, std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 0}}});
  CHECK(tri.basic.coeffs() == Coeffs{1, 0, 1, 0, 1});
}

TEST_CASE("polytope validation") {
  CHECK(has_rule(validate_polytope({{4, 3, 1}, 4, std::nullopt}), "euler-relation"));
  CHECK_FALSE(validate_polytope({{2, 1}, 3, std::nullopt}).ok());
  CHECK_THROWS_AS(polytope_series({{4, 3, 1}, 4, std::nullopt}), ValidationError);
}
