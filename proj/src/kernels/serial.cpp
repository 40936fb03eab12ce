#include <stdexcept>
#include <utility>

#include "foliacoh/kernels.hpp"
#include "integer_rows.hpp"

namespace foliacoh::kernels {

RowEchelon row_echelon_serial(const Matrix& m) {
  auto rows = detail::clear_denominators(m);
  const std::size_t n_rows = m.rows();
  const std::size_t n_cols = m.cols();
  std::vector<std::size_t> pivots;
  Integer previous = 1;
  Integer scratch;
  std::size_t k = 0;
  for (std::size_t c = 0; c < n_cols && k < n_rows; ++c) {
    const std::size_t best = detail::pick_pivot(rows, k, c);
    if (best == n_rows) continue;
    std::swap(rows[k], rows[best]);
    const Integer pivot = rows[k][c];
    for (std::size_t i = 0; i < n_rows; ++i) {
      if (i == k) continue;
      const Integer factor = rows[i][c];
      for (std::size_t j = 0; j < n_cols; ++j) {
        mpz_mul(scratch.get_mpz_t(), rows[i][j].get_mpz_t(), pivot.get_mpz_t());
        mpz_submul(scratch.get_mpz_t(), factor.get_mpz_t(), rows[k][j].get_mpz_t());
        mpz_divexact(rows[i][j].get_mpz_t(), scratch.get_mpz_t(), previous.get_mpz_t());
      }
    }
    previous = pivot;
    pivots.push_back(c);
    ++k;
  }
  return detail::normalize(rows, std::move(pivots), n_cols);
}

Matrix multiply_serial(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply_serial: shape mismatch");
  Matrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Rational& x = a(r, k);
      if (sgn(x) == 0) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) {
        if (sgn(b(k, c)) != 0) out(r, c) += x * b(k, c);
      }
    }
  }
  return out;
}

}  // namespace foliacoh::kernels
