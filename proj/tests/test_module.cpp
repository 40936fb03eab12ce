#include <doctest.h>

#include "foliacoh/fixtures.hpp"
#include "foliacoh/module.hpp"

using namespace foliacoh;
using Coeffs = std::vector<std::int64_t>;

namespace {

GradedModulePresentation with_default_window(GradedModulePresentation m) {
  m.window = default_window(m);
  return m;
}

}  // namespace

TEST_CASE("presentations are validated") {
  auto m = fixtures::free_module(1, {0}, 4);
  MultiPolynomial mixed(1);
  mixed.add_term({0}, 1);
  mixed.add_term({1}, 1);
  m.relations.push_back({mixed});
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);
}

TEST_CASE("Hilbert functions") {
  CHECK(hilbert(fixtures::free_module(1, {0}, 6)).coeffs == Coeffs{1, 0, 1, 0, 1, 0, 1});
  CHECK(hilbert(fixtures::cyclic_quotient(1, 1, 6)).coeffs == Coeffs{1, 0, 0, 0, 0, 0, 0});
  CHECK(hilbert(fixtures::hopf_module(6)).coeffs == Coeffs{1, 0, 1, 0, 0, 0, 0});
  const auto h = hilbert(with_default_window(fixtures::free_module(2, {0, 2}, 0)));
  REQUIRE(h.closed_form);
  CHECK(h.closed_form->numerator().coeffs() == Coeffs{1, 0, 1});
  CHECK(h.closed_form->den_exp() == 2);
}

TEST_CASE("a short window gives no closed form") {
  const auto h = hilbert(fixtures::cyclic_quotient(1, 1, 3));
  CHECK_FALSE(h.closed_form);
  CHECK(h.certificate.find("need") != std::string::npos);
}

TEST_CASE("Koszul Tor") {
  const auto res = koszul_tor(fixtures::residue_field(2, 8));
  CHECK(res.total(0) == 1);
  CHECK(res.total(1) == 2);
  CHECK(res.total(2) == 1);
  CHECK(res.dims[2][4] == 1);
  const auto cyc = koszul_tor(fixtures::cyclic_quotient(1, 1, 6));
  CHECK(cyc.dims[1][2] == 1);
  CHECK(cyc.total(1) == 1);
  const auto sq = koszul_tor(fixtures::cyclic_quotient(1, 2, 8));
  CHECK(sq.dims[1][4] == 1);
  const auto fr = koszul_tor(fixtures::free_module(2, {0}, 8));
  CHECK(fr.total(1) == 0);
  CHECK(fr.total(2) == 0);
}

TEST_CASE("Koszul Euler characteristic equals (1-t^2)^r h(t)") {
  for (const auto& m : {fixtures::residue_field(2, 8), fixtures::mixed_sum(2, 8), fixtures::hopf_module(8),
                        fixtures::free_module(3, {0, 2, 2}, 8)}) {
    const GradedModule g(m);
    CHECK(koszul_euler(g) == hilbert(g).multiplied);
    const auto tor = koszul_tor(g);
    Coeffs alt(static_cast<std::size_t>(m.window) + 1, 0);
    for (std::size_t i = 0; i < tor.dims.size(); ++i)
      for (std::size_t n = 0; n < alt.size(); ++n)
        alt[n] += (i % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(tor.dims[i][n]);
    // Tor and the Koszul chains have the same Euler characteristic degreewise
    CHECK(alt == koszul_euler(g));
  }
}

TEST_CASE("freeness") {
  const auto f = freeness_test(GradedModule(fixtures::free_module(2, {0, 2}, 8)));
  CHECK(f.free);
  CHECK(f.ranks == std::vector<int>{0, 2});
  CHECK_FALSE(freeness_test(GradedModule(fixtures::hopf_module(8))).free);
  CHECK_FALSE(freeness_test(GradedModule(fixtures::cyclic_quotient(1, 2, 8))).free);
  CHECK_FALSE(freeness_test(GradedModule(fixtures::free_module(1, {0}, 1))).window_sufficient);
}

TEST_CASE("localized rank") {
  CHECK(localized_rank(GradedModule(with_default_window(fixtures::free_module(2, {0, 2}, 0)))).rank == 2);
  CHECK(localized_rank(GradedModule(with_default_window(fixtures::hopf_module(0)))).rank == 0);
  CHECK(localized_rank(GradedModule(with_default_window(fixtures::mixed_sum(1, 0)))).rank == 1);
  CHECK_FALSE(localized_rank(GradedModule(fixtures::cyclic_quotient(1, 1, 3))).rank);
}

TEST_CASE("depth, dimension and Cohen-Macaulay") {
  struct Row {
    GradedModulePresentation m;
    std::int64_t depth, dim;
    bool cm;
  };
  const std::vector<Row> rows{{fixtures::free_module(2, {0}, 0), 2, 2, true},
                              {fixtures::residue_field(2, 0), 0, 0, true},
                              {fixtures::cyclic_quotient(1, 1, 0), 0, 0, true},
                              {fixtures::mixed_sum(2, 0), 1, 2, false}};
  for (const auto& row : rows) {
    const auto d = depth_dim_cm(GradedModule(with_default_window(row.m)));
    CHECK(d.conclusive);
    REQUIRE(d.depth);
    CHECK(*d.depth == row.depth);
    CHECK(d.krull_dim == row.dim);
    CHECK(d.cohen_macaulay == row.cm);
  }
}

TEST_CASE("the zero module has infinite depth") {
  const auto d = depth_dim_cm(GradedModule(with_default_window(fixtures::free_module(1, {}, 0))));
  CHECK_FALSE(d.depth);
  CHECK(d.krull_dim == -1);
}

TEST_CASE("CM of maximal dimension is free") {
  for (const auto& m : {fixtures::free_module(2, {0, 2}, 0), fixtures::residue_field(2, 0), fixtures::mixed_sum(2, 0),
                        fixtures::hopf_module(0), fixtures::cyclic_quotient(1, 2, 0), fixtures::free_module(1, {0}, 0)}) {
    const GradedModule g(with_default_window(m));
    const auto d = depth_dim_cm(g);
    REQUIRE(d.conclusive);
    CHECK((d.cohen_macaulay && d.krull_dim == static_cast<std::int64_t>(m.dim_a)) == freeness_test(g).free);
  }
}

TEST_CASE("short exact sequences of modules") {
  const auto s = with_default_window(fixtures::free_module(1, {0}, 0));
  const auto ss = with_default_window(fixtures::free_module(1, {0, 0}, 0));
  ModuleMap inc, proj;
  inc.images.push_back({MultiPolynomial::constant(1, 1), MultiPolynomial(1)});
  proj.images.push_back({MultiPolynomial(1)});
  proj.images.push_back({MultiPolynomial::constant(1, 1)});
  CHECK(ses_cm_check(s, ss, s, inc, proj).status == SesCmStatus::verified);
  ModuleMap zero;
  zero.images.push_back({MultiPolynomial(1)});
  zero.images.push_back({MultiPolynomial(1)});
  CHECK(ses_cm_check(s, ss, s, inc, zero).status == SesCmStatus::not_short_exact);

  // 0 -> S(-2) -> S -> S/(u) -> 0
  const auto shifted = with_default_window(fixtures::free_module(1, {2}, 0));
  const auto quotient = with_default_window(fixtures::cyclic_quotient(1, 1, 0));
  ModuleMap by_u, onto;
  by_u.images.push_back({MultiPolynomial::variable(1, 0)});
  onto.images.push_back({MultiPolynomial::constant(1, 1)});
  CHECK(ses_cm_check(shifted, s, quotient, by_u, onto).status == SesCmStatus::hypotheses_not_met);
}

TEST_CASE("induced matrices") {
  const GradedModule src(fixtures::free_module(1, {2}, 6));
  const GradedModule dst(fixtures::free_module(1, {0}, 6));
  ModuleMap by_u;
  by_u.images.push_back({MultiPolynomial::variable(1, 0)});
  const Matrix m = induced_matrix(src, dst, by_u, 4);
  CHECK(m.rows() == 1);
  CHECK(m.cols() == 1);
  CHECK(m(0, 0) == 1);
}
