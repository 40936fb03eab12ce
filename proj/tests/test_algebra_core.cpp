#include <doctest.h>

#include <random>

#include "foliacoh/complex.hpp"
#include "foliacoh/kernels.hpp"
#include "foliacoh/linalg.hpp"
#include "foliacoh/testing.hpp"

using namespace foliacoh;

namespace {

// Textbook Gauss-Jordan over Q, used as an oracle for the fraction-free kernels.
std::size_t naive_rank(Matrix m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(p, j));
    const Rational inv = 1 / m(r, c);
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Rational f = m(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, std::size_t rank_cap) {
  std::uniform_int_distribution<int> entry(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  Matrix a(rows, rank_cap), b(rank_cap, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < rank_cap; ++j) a(i, j) = Rational(entry(rng), den(rng));
  for (std::size_t i = 0; i < rank_cap; ++i)
    for (std::size_t j = 0; j < cols; ++j) b(i, j) = Rational(entry(rng), den(rng));
  return a * b;
}

CochainComplex circle() {
  // 0 -> Q -> Q^2 -> Q -> 0, exact
  Matrix d0(2, 1), d1(1, 2);
  d0(0, 0) = 1;
  d0(1, 0) = 1;
  d1(0, 0) = 1;
  d1(0, 1) = -1;
  return CochainComplex::make({1, 2, 1}, {d0, d1, Matrix(0, 1)});
}

}  // namespace

TEST_CASE("rational text round trip") {
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-7")) == "-7");
  CHECK(to_string(parse_rational("0/5")) == "0");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/"), std::invalid_argument);
}

TEST_CASE("echelon form, null space and solve") {
  Matrix m(2, 3);
  m(0, 0) = 1; m(0, 1) = 2; m(0, 2) = 3;
  m(1, 0) = 2; m(1, 1) = 4; m(1, 2) = 7;
  const RowEchelon e = row_echelon(m);
  CHECK(e.rank() == 2);
  CHECK(e.pivots == std::vector<std::size_t>{0, 2});
  const auto ns = null_space(m);
  REQUIRE(ns.size() == 1);
  CHECK(is_zero(m * ns[0]));
  const auto x = solve(m, Vector{Rational(6), Rational(13)});
  REQUIRE(x);
  CHECK(m * *x == Vector{Rational(6), Rational(13)});
  Matrix sing(2, 2);
  sing(0, 0) = 1; sing(0, 1) = 1; sing(1, 0) = 1; sing(1, 1) = 1;
  CHECK_FALSE(solve(sing, Vector{Rational(1), Rational(2)}));
}

TEST_CASE("empty shapes are valid") {
  CHECK(rank(Matrix(0, 5)) == 0);
  CHECK(rank(Matrix(4, 0)) == 0);
  CHECK(null_space(Matrix(0, 3)).size() == 3);
}

TEST_CASE("serial and parallel kernels agree with each other and with a naive oracle") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t rows = 1 + rng() % 24, cols = 1 + rng() % 24, cap = 1 + rng() % 12;
    const Matrix m = random_matrix(rng, rows, cols, cap);
    const RowEchelon s = kernels::row_echelon_serial(m);
    const RowEchelon p = kernels::row_echelon_parallel(m);
    CHECK(s.reduced == p.reduced);
    CHECK(s.pivots == p.pivots);
    CHECK(s.rank() == naive_rank(m));
    const Matrix b = random_matrix(rng, cols, 1 + rng() % 10, 3);
    CHECK(kernels::multiply_serial(m, b) == kernels::multiply_parallel(m, b));
  }
}

TEST_CASE("parallel kernel is deterministic across thread counts") {
  std::mt19937_64 rng(11);
  const Matrix m = random_matrix(rng, 90, 90, 40);
  kernels::set_thread_count(1);
  const RowEchelon one = kernels::row_echelon_parallel(m);
  kernels::set_thread_count(4);
  const RowEchelon four = kernels::row_echelon_parallel(m);
  kernels::set_thread_count(0);
  CHECK(one.reduced == four.reduced);
  CHECK(one.rank() == 40);
  CHECK(rank(m) == 40);
}

TEST_CASE("echelon basis and coordinate systems") {
  EchelonBasis b(3);
  CHECK(b.insert({Rational(1), Rational(1), Rational(0)}));
  CHECK_FALSE(b.insert({Rational(2), Rational(2), Rational(0)}));
  CHECK(b.contains({Rational(-1), Rational(-1), Rational(0)}));
  const std::vector<Vector> modulo{{Rational(1), Rational(0), Rational(0)}};
  const std::vector<Vector> basis{{Rational(0), Rational(1), Rational(0)}};
  CoordinateSystem cs(3, modulo, basis);
  const auto c = cs.coordinates({Rational(5), Rational(3), Rational(0)});
  REQUIRE(c);
  CHECK((*c)[0] == 3);
  CHECK_FALSE(cs.coordinates({Rational(0), Rational(0), Rational(1)}));
}

TEST_CASE("cohomology of small complexes") {
  const auto c = circle();
  CHECK(verify_complex(c).ok);
  CHECK(cohomology_dims(c) == std::vector<std::size_t>{0, 0, 0});
  CHECK(cohomology_dims(CochainComplex::zero({1, 0, 1})) == std::vector<std::size_t>{1, 0, 1});
  CHECK(euler_characteristic({1, 2, 1}) == 0);
}

TEST_CASE("d squared failures are located") {
  Matrix d0(1, 1), d1(1, 1);
  d0(0, 0) = 1;
  d1(0, 0) = 1;
  const auto c = CochainComplex::make({1, 1, 1}, {d0, d1, Matrix(0, 1)});
  const auto r = verify_complex(c);
  CHECK_FALSE(r.ok);
  REQUIRE(r.failing_degree);
  CHECK(*r.failing_degree == 0);
}

TEST_CASE("shape mismatch is a dimension error") {
  CHECK_THROWS_AS(CochainComplex::make({1, 2}, {Matrix(1, 1), Matrix(0, 2)}), DimensionError);
}

TEST_CASE("cohomology classes of representatives") {
  const auto c = CochainComplex::zero({0, 2});
  const Cohomology h = cohomology(c);
  const auto k = h.class_of(1, {Rational(3), Rational(-1)});
  REQUIRE(k);
  CHECK(k->size() == 2);
}

TEST_CASE("random complexes: cohomology and Euler characteristic") {
  std::mt19937_64 rng(20260117);
  for (int trial = 0; trial < 50; ++trial) {
    const auto rc = testing::random_complex(rng, 4, 6);
    CHECK(verify_complex(rc.complex).ok);
    const auto h = cohomology_dims(rc.complex);
    CHECK(h == rc.expected_h);
    CHECK(euler_characteristic(h) == euler_characteristic(rc.complex.space.dims));
  }
}

TEST_CASE("long exact sequences of random split extensions are exact") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const auto ses = testing::random_split_ses(rng, 4, 6);
    const auto r = les_exactness_check(ses);
    CHECK(r.status == LesStatus::exact);
  }
}

TEST_CASE("a non-exact sequence is rejected") {
  std::mt19937_64 rng(3);
  auto ses = testing::random_split_ses(rng, 3, 4);
  bool broken = false;
  for (auto& p : ses.projection)
    if (p.rows() > 0 && p.cols() > 0) {
      p = Matrix(p.rows(), p.cols());
      broken = true;
      break;
    }
  if (broken) CHECK(les_exactness_check(ses).status == LesStatus::not_short_exact);
}
