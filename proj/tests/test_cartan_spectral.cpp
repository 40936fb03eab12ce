#include <doctest.h>

#include "foliacoh/cartan.hpp"
#include "foliacoh/fixtures.hpp"
#include "foliacoh/spectral.hpp"

using namespace foliacoh;

namespace {

std::vector<std::size_t> head(const std::vector<std::size_t>& v, int through) {
  return {v.begin(), v.begin() + through + 1};
}

std::vector<std::size_t> poincare(const GStarStructure& s) { return cohomology_dims(s.complex()); }

}  // namespace

TEST_CASE("Cartan slices of the Hopf model") {
  const auto c = cartan_complex(fixtures::hopf_basic_model(), 6);
  std::vector<std::size_t> dims;
  for (int n = 0; n <= 6; ++n) dims.push_back(c.slices[static_cast<std::size_t>(n)].dim());
  CHECK(dims == std::vector<std::size_t>{1, 1, 2, 2, 2, 2, 2});
  CHECK(c.d_squared.ok);
  CHECK_FALSE(c.projected);
}

TEST_CASE("equivariant cohomology of the fixtures") {
  CHECK(head(equivariant_cohomology(fixtures::hopf_basic_model(), 8).dims, 8) ==
        std::vector<std::size_t>{1, 0, 1, 0, 0, 0, 0, 0, 0});
  CHECK(head(equivariant_cohomology(fixtures::exterior_free(2), 6).dims, 6) ==
        std::vector<std::size_t>{1, 0, 0, 0, 0, 0, 0});
  CHECK(head(equivariant_cohomology(fixtures::s3_model(), 7).dims, 7) ==
        std::vector<std::size_t>{1, 0, 1, 1, 1, 1, 1, 1});
  CHECK(head(equivariant_cohomology(fixtures::trivial_action(2, {1, 0, 1}), 4).dims, 4) ==
        std::vector<std::size_t>{1, 0, 3, 0, 5});
}

TEST_CASE("Cartan and Weil models agree") {
  for (const auto& f : fixtures::gstar_fixtures()) {
    CAPTURE(f.name);
    const auto e = equivariant_cohomology(f.structure, 6);
    const auto w = weil_model_cohomology(f.structure, 6);
    const int through = std::min(e.stable_through, w.stable_through);
    CHECK(through >= 4);
    CHECK(head(e.dims, through) == head(w.dims, through));
  }
}

TEST_CASE("free actions: equivariant cohomology is basic cohomology") {
  for (const auto& f : fixtures::gstar_fixtures()) {
    if (!f.type_c) continue;
    CAPTURE(f.name);
    const auto e = equivariant_cohomology(f.structure, 6);
    auto basic = cohomology_dims(basic_subcomplex(f.structure).complex);
    basic.resize(7, 0);
    CHECK(head(e.dims, 6) == basic);
  }
}

TEST_CASE("module structure of equivariant cohomology") {
  const auto triv = equivariant_cohomology(fixtures::trivial_action(1, {1, 0, 1}), 8);
  CHECK(triv.generator_degrees == std::vector<int>{0, 2});
  const auto m = module_presentation(triv);
  CHECK(m.relations.empty());
  const auto hopf = module_presentation(equivariant_cohomology(fixtures::hopf_basic_model(), 8));
  CHECK(hopf.generator_degrees == std::vector<int>{0, 2});
  CHECK(hopf.relations.size() == 2);
}

TEST_CASE("commuting reduction") {
  const auto s = fixtures::hopf_with_trivial_factor();
  const auto r = commuting_reduction_check(s, 1, {Vector{Rational(1)}}, 6);
  CHECK(r.status == ReductionStatus::agree);
  CHECK(head(r.product_dims, 4) == head(r.reduced_dims, 4));
}

TEST_CASE("spectral pages") {
  const auto hopf = run_pages(fixtures::hopf_basic_model(), 8);
  CHECK(hopf.converged);
  CHECK(hopf.collapse_page == 2);
  CHECK(hopf.pages[0].total(0) == 1);
  CHECK(hopf.pages[0].total(1) == 1);
  CHECK(hopf.pages[0].total(2) == 2);
  CHECK(hopf.e_infinity == hopf.cohomology);
  const auto triv = run_pages(fixtures::trivial_action(1, {1, 0, 1}), 8);
  CHECK(triv.collapse_page == 1);
  for (std::size_t r = 1; r < hopf.pages.size(); ++r)
    for (int n = 0; n <= 8; ++n) CHECK(hopf.pages[r].total(n) <= hopf.pages[r - 1].total(n));
}

TEST_CASE("formality verdicts") {
  const auto hopf_alg = fixtures::hopf_basic_model();
  const auto e = equivariant_cohomology(hopf_alg, 8);
  const auto run = run_pages(hopf_alg, 8);
  const auto v = formality_verdict(e, poincare(hopf_alg), 1, 8, &run, &hopf_alg);
  CHECK(v.conclusive);
  CHECK_FALSE(v.formal);
  CHECK(v.method == FormalityMethod::hilbert_factorization);
  REQUIRE(v.witness_degree);
  CHECK(*v.witness_degree == 1);
  CHECK_FALSE(v.conflict);

  const auto triv_alg = fixtures::trivial_action(1, {1, 0, 1, 0, 1});
  const auto te = equivariant_cohomology(triv_alg, 8);
  const auto tv = formality_verdict(te, poincare(triv_alg), 1, 8);
  CHECK(tv.formal);
  CHECK(tv.method == FormalityMethod::odd_vanishing);

  const auto s3 = fixtures::s3_model();
  const auto se = equivariant_cohomology(s3, 8);
  const auto srun = run_pages(s3, 8);
  const auto sv = formality_verdict(se, poincare(s3), 1, 8, &srun, &s3);
  CHECK(sv.formal);
  CHECK_FALSE(sv.conflict);
  CHECK(to_string(FormalityMethod::hilbert_factorization) == "hilbert-factorization");
}

TEST_CASE("restriction to the fibre") {
  const auto s = fixtures::trivial_action(1, {1, 0, 1});
  const auto e = equivariant_cohomology(s, 6);
  const auto r = restriction_ranks(s, e);
  CHECK(head(r, 2) == std::vector<std::size_t>{1, 0, 1});
  const auto h = fixtures::hopf_basic_model();
  CHECK(head(restriction_ranks(h, equivariant_cohomology(h, 6)), 3) == std::vector<std::size_t>{1, 0, 1, 0});
}
