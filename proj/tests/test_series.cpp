#include <doctest.h>

#include <random>
#include <stdexcept>

#include "foliacoh/series.hpp"

using namespace foliacoh;

namespace {

using Coeffs = std::vector<std::int64_t>;

Coeffs cauchy(const Coeffs& a, const Coeffs& b) {
  Coeffs out(a.size(), 0);
  for (std::size_t n = 0; n < a.size(); ++n)
    for (std::size_t k = 0; k <= n; ++k) out[n] += a[k] * b[n - k];
  return out;
}

PoincareSeries random_series(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-3, 3);
  Coeffs num(1 + rng() % 5);
  for (auto& x : num) x = c(rng);
  return PoincareSeries(SignedPolynomial(num), static_cast<int>(rng() % 3));
}

}  // namespace

TEST_CASE("polynomial arithmetic") {
  const SignedPolynomial p({1, 0, 1});
  const SignedPolynomial q({1, 1});
  CHECK((p * q).coeffs() == Coeffs{1, 1, 1, 1});
  CHECK((p - p).is_zero());
  CHECK((p - p).degree() == -1);
  CHECK(SignedPolynomial({1, 2, 0, 0}).coeffs() == Coeffs{1, 2});
  CHECK(SignedPolynomial::one_minus_t2(2).coeffs() == Coeffs{1, 0, -2, 0, 1});
  CHECK(p.evaluate(-1) == 2);
  CHECK(euler_at_minus_one(SignedPolynomial({1, 0, 2, 0, 1})) == 4);
}

TEST_CASE("exact division by 1 - t^2") {
  const auto q = SignedPolynomial({1, 0, -1}).divide_one_minus_t2();
  REQUIRE(q);
  CHECK(q->coeffs() == Coeffs{1});
  CHECK_FALSE(SignedPolynomial({1, 1}).divide_one_minus_t2());
}

TEST_CASE("Poincare polynomials reject negative coefficients") {
  CHECK_THROWS_AS(PoincarePolynomial(Coeffs{1, -1}), std::invalid_argument);
  CHECK(PoincarePolynomial(Coeffs{1, 0, 1}).total() == 2);
}

TEST_CASE("series are kept canonical") {
  const PoincareSeries s(SignedPolynomial({1, 0, -1}), 1);
  CHECK(s.is_polynomial());
  CHECK(s.numerator().coeffs() == Coeffs{1});
  CHECK(PoincareSeries(SignedPolynomial(), 3).den_exp() == 0);
}

TEST_CASE("expansions") {
  CHECK(PoincareSeries(SignedPolynomial({1}), 1).expand(6) == Coeffs{1, 0, 1, 0, 1, 0, 1});
  CHECK(PoincareSeries(SignedPolynomial({1, 0, 1}), 1).expand(6) == Coeffs{1, 0, 2, 0, 2, 0, 2});
  CHECK(PoincareSeries(SignedPolynomial({1}), 2).expand(4) == Coeffs{1, 0, 2, 0, 3});
  CHECK(PoincareSeries(SignedPolynomial({1, 1, 1, 1}), 1).expand(5) == Coeffs{1, 1, 2, 2, 2, 2});
}

TEST_CASE("property: products expand to Cauchy products, sums to sums") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_series(rng), b = random_series(rng);
    const int n = 12;
    CHECK((a * b).expand(n) == cauchy(a.expand(n), b.expand(n)));
    const auto sa = a.expand(n), sb = b.expand(n), sum = (a + b).expand(n);
    for (int k = 0; k <= n; ++k) CHECK(sum[static_cast<std::size_t>(k)] == sa[static_cast<std::size_t>(k)] + sb[static_cast<std::size_t>(k)]);
    CHECK((a - a).numerator().is_zero());
  }
}

TEST_CASE("Morse gap") {
  const PoincareSeries p(SignedPolynomial({1, 0, 1}));
  const auto perfect = morse_gap(p, p, 6);
  CHECK(perfect.ok);
  CHECK(perfect.quotient.empty());
  const auto lacunary = morse_gap(PoincareSeries(SignedPolynomial({1, 1, 2})), p, 6);
  CHECK(lacunary.ok);
  CHECK(lacunary.quotient == Coeffs{0, 1});
  const auto bad = morse_gap(PoincareSeries(SignedPolynomial({1, 0, 2})), p, 6);
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.violation_degree);
  CHECK(*bad.violation_degree == 2);
}
