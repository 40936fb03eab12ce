#include <doctest.h>

#include "foliacoh/fixtures.hpp"
#include "foliacoh/gstar.hpp"
#include "foliacoh/testing.hpp"

using namespace foliacoh;

namespace {

std::vector<std::size_t> head(const std::vector<std::size_t>& v, int through) {
  return {v.begin(), v.begin() + through + 1};
}

}  // namespace

TEST_CASE("Lie algebras") {
  CHECK(LieAlgebra::abelian(3).is_abelian());
  CHECK_FALSE(LieAlgebra::so3().check());
  CHECK_FALSE(LieAlgebra::direct_sum(LieAlgebra::so3(), LieAlgebra::abelian(1)).check());
  LieAlgebra bad = LieAlgebra::abelian(2);
  bad.c(0, 1, 0) = 1;  // antisymmetric partner missing
  CHECK(bad.check());
}

TEST_CASE("Weil algebras are acyclic in the stable window") {
  for (std::size_t r : {1u, 2u}) {
    const auto w = weil_algebra(LieAlgebra::abelian(r), 8);
    CHECK(check_gstar_axioms(w).ok());
    CHECK(w.stable_through() == 6);
    const auto h = cohomology_dims(w.complex());
    std::vector<std::size_t> expected(7, 0);
    expected[0] = 1;
    CHECK(head(h, 6) == expected);
  }
  const auto w3 = weil_algebra(LieAlgebra::so3(), 6);
  CHECK(check_gstar_axioms(w3).ok());
  CHECK(head(cohomology_dims(w3.complex()), 4) == std::vector<std::size_t>{1, 0, 0, 0, 0});
}

TEST_CASE("fixture algebras satisfy the axioms") {
  for (const auto& f : fixtures::gstar_fixtures()) {
    CAPTURE(f.name);
    CHECK(check_gstar_axioms(f.structure).ok());
    CHECK(check_graded_algebra(f.structure).ok());
    CHECK(verify_complex(f.structure.complex()).ok);
  }
}

TEST_CASE("a mutated Lie derivative breaks the Cartan identity") {
  const auto bad = testing::mutate_lie_derivative(fixtures::hopf_basic_model());
  const auto report = check_gstar_axioms(bad);
  CHECK_FALSE(report.ok());
  CHECK_FALSE(report.get("L_X=di_X+i_Xd").ok);
}

TEST_CASE("builder rejects unknown labels and degree errors") {
  GStarBuilder b(LieAlgebra::abelian(1));
  b.basis("1", 0).basis("x", 1).unit("1");
  CHECK_THROWS_AS(GStarBuilder(b).d("y", {{"1", Rational(1)}}).build(), std::invalid_argument);
  CHECK_THROWS_AS(GStarBuilder(b).d("x", {{"1", Rational(1)}}).build(), std::invalid_argument);
}

TEST_CASE("basic subcomplex of the Hopf model") {
  const auto s = fixtures::hopf_basic_model();
  const auto basic = basic_subcomplex(s);
  CHECK(basic.complex.space.dims == std::vector<std::size_t>{1, 0, 1, 0});
  CHECK(cohomology_dims(s.complex()) == std::vector<std::size_t>{1, 1, 1, 1});
}

TEST_CASE("type C detection") {
  const auto t = detect_type_c(fixtures::hopf_basic_model(), fixtures::hopf_connection());
  CHECK(t.free);
  CHECK(t.type_c);
  const auto triv = detect_type_c(fixtures::trivial_action(1, {1, 1}), {Vector{Rational(1)}});
  CHECK_FALSE(triv.free);
}

TEST_CASE("tensor products keep the axioms") {
  const auto a = fixtures::hopf_basic_model();
  const auto t = tensor_gstar(a, trivial_line(a.lie));
  CHECK(t.structure.space.dims == a.space.dims);
  CHECK(check_gstar_axioms(t.structure).ok());
  const auto aa = tensor_gstar(a, a, 4);
  CHECK(aa.overflow);
  CHECK(check_gstar_axioms(aa.structure).ok());
}

TEST_CASE("Weil model cohomology") {
  const auto hopf = weil_model_cohomology(fixtures::hopf_basic_model(), 6);
  CHECK(head(hopf.dims, 6) == std::vector<std::size_t>{1, 0, 1, 0, 0, 0, 0});
  const auto triv = weil_model_cohomology(fixtures::trivial_action(1, {1, 0, 1}), 6);
  CHECK(head(triv.dims, 6) == std::vector<std::size_t>{1, 0, 2, 0, 2, 0, 2});
}
