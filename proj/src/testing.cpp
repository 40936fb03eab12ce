#include "foliacoh/testing.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace foliacoh::testing {

namespace {

struct RowOp {
  std::size_t target, source;
  Rational factor;
};

std::vector<RowOp> random_ops(std::mt19937_64& rng, std::size_t n) {
  std::vector<RowOp> ops;
  if (n < 2) return ops;
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<int> num(-3, 3), den(1, 2);
  for (std::size_t k = 0; k < 3 * n; ++k) {
    const std::size_t a = idx(rng), b = idx(rng);
    if (a == b) continue;
    ops.push_back({a, b, Rational(num(rng), den(rng))});
  }
  return ops;
}

// P M with P the product of the row operations, applied in order.
Matrix left(const std::vector<RowOp>& ops, Matrix m) {
  for (const auto& op : ops)
    for (std::size_t c = 0; c < m.cols(); ++c) m(op.target, c) += op.factor * m(op.source, c);
  return m;
}

// M P^{-1}.
Matrix right_inverse(const std::vector<RowOp>& ops, Matrix m) {
  for (const auto& op : ops)
    for (std::size_t r = 0; r < m.rows(); ++r) m(r, op.source) -= op.factor * m(r, op.target);
  return m;
}

}  // namespace

RandomComplex random_complex(std::mt19937_64& rng, int top, std::size_t max_dim) {
  const auto degrees = static_cast<std::size_t>(top) + 1;
  std::vector<std::size_t> h(degrees), b(degrees, 0), dims(degrees);
  std::size_t incoming = 0;
  for (std::size_t n = 0; n < degrees; ++n) {
    const std::size_t room = max_dim - incoming;
    h[n] = std::uniform_int_distribution<std::size_t>(0, room)(rng);
    b[n] = n + 1 < degrees ? std::uniform_int_distribution<std::size_t>(0, room - h[n])(rng) : 0;
    dims[n] = incoming + h[n] + b[n];
    incoming = b[n];
  }
  std::vector<std::vector<RowOp>> ops;
  for (std::size_t n = 0; n < degrees; ++n) ops.push_back(random_ops(rng, dims[n]));
  std::vector<Matrix> ds;
  for (std::size_t n = 0; n < degrees; ++n) {
    const std::size_t next = n + 1 < degrees ? dims[n + 1] : 0;
    Matrix d(next, dims[n]);
    const std::size_t source = dims[n] - b[n];
    for (std::size_t k = 0; k < b[n]; ++k) d(k, source + k) = 1;
    if (n + 1 < degrees) d = left(ops[n + 1], d);
    ds.push_back(right_inverse(ops[n], d));
  }
  return {CochainComplex::make(dims, std::move(ds)), h};
}

ShortExactSequence random_split_ses(std::mt19937_64& rng, int top, std::size_t max_dim) {
  const std::size_t half = max_dim / 2;
  const CochainComplex a = random_complex(rng, top, half).complex;
  const CochainComplex c = random_complex(rng, top, max_dim - half).complex;
  const auto degrees = static_cast<std::size_t>(top) + 1;
  std::uniform_int_distribution<int> coeff(-2, 2);
  std::vector<Matrix> h;  // h[n] : C^n -> A^n
  for (std::size_t n = 0; n < degrees; ++n) {
    Matrix m(a.dim(static_cast<int>(n)), c.dim(static_cast<int>(n)));
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = coeff(rng);
    h.push_back(std::move(m));
  }
  auto h_at = [&](std::size_t n) {
    return n < degrees ? h[n] : Matrix(0, 0);
  };
  ShortExactSequence s;
  s.sub = a;
  s.quotient = c;
  std::vector<std::size_t> dims;
  std::vector<Matrix> ds;
  for (std::size_t n = 0; n < degrees; ++n) {
    const int k = static_cast<int>(n);
    const std::size_t an = a.dim(k), cn = c.dim(k), an1 = a.dim(k + 1), cn1 = c.dim(k + 1);
    dims.push_back(an + cn);
    Matrix d(an1 + cn1, an + cn);
    const Matrix da = a.differential(k), dc = c.differential(k);
    Matrix twist(an1, cn);
    if (n + 1 < degrees) twist = da * h_at(n) - h_at(n + 1) * dc;
    for (std::size_t i = 0; i < an1; ++i) {
      for (std::size_t j = 0; j < an; ++j) d(i, j) = da(i, j);
      for (std::size_t j = 0; j < cn; ++j) d(i, an + j) = twist(i, j);
    }
    for (std::size_t i = 0; i < cn1; ++i)
      for (std::size_t j = 0; j < cn; ++j) d(an1 + i, an + j) = dc(i, j);
    ds.push_back(std::move(d));
    Matrix inc(an + cn, an), proj(cn, an + cn);
    for (std::size_t i = 0; i < an; ++i) inc(i, i) = 1;
    for (std::size_t i = 0; i < cn; ++i) proj(i, an + i) = 1;
    s.inclusion.push_back(std::move(inc));
    s.projection.push_back(std::move(proj));
  }
  s.middle = CochainComplex::make(std::move(dims), std::move(ds));
  return s;
}

GStarStructure mutate_lie_derivative(const GStarStructure& s) {
  if (s.lie.dim == 0) throw std::invalid_argument("no Lie derivative to mutate");
  GStarStructure m = s;
  for (int n = 0; n <= m.top(); ++n)
    if (m.dim(n) > 0) {
      m.lie_derivative[0][static_cast<std::size_t>(n)](0, 0) += 1;
      return m;
    }
  throw std::invalid_argument("algebra has no basis elements");
}

}  // namespace foliacoh::testing
