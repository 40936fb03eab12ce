#include "integer_rows.hpp"

namespace foliacoh::kernels::detail {

std::vector<IntegerRow> clear_denominators(const Matrix& m) {
  std::vector<IntegerRow> rows(m.rows(), IntegerRow(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Integer scale = 1;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const Integer& den = m(r, c).get_den();
      if (den != 1) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), den.get_mpz_t());
    }
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const Rational& x = m(r, c);
      if (sgn(x) == 0) continue;
      Integer q;
      mpz_divexact(q.get_mpz_t(), scale.get_mpz_t(), x.get_den().get_mpz_t());
      rows[r][c] = x.get_num() * q;
    }
  }
  return rows;
}

std::size_t pick_pivot(const std::vector<IntegerRow>& rows, std::size_t from, std::size_t col) {
  std::size_t best = rows.size();
  for (std::size_t r = from; r < rows.size(); ++r) {
    if (sgn(rows[r][col]) == 0) continue;
    if (best == rows.size() || mpz_cmpabs(rows[r][col].get_mpz_t(), rows[best][col].get_mpz_t()) > 0) best = r;
  }
  return best;
}

RowEchelon normalize(const std::vector<IntegerRow>& rows, std::vector<std::size_t> pivots, std::size_t cols) {
  RowEchelon out;
  out.reduced = Matrix(pivots.size(), cols);
  for (std::size_t k = 0; k < pivots.size(); ++k) {
    const Integer& p = rows[k][pivots[k]];
    for (std::size_t c = 0; c < cols; ++c) {
      if (sgn(rows[k][c]) == 0) continue;
      Rational x(rows[k][c], p);
      x.canonicalize();
      out.reduced(k, c) = x;
    }
  }
  out.pivots = std::move(pivots);
  return out;
}

}  // namespace foliacoh::kernels::detail
