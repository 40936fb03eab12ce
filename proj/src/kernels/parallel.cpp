#include <omp.h>

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>

#include "foliacoh/kernels.hpp"
#include "integer_rows.hpp"

namespace foliacoh::kernels {

namespace {
int g_threads = 0;  // 0: OpenMP default
}

void set_thread_count(int threads) {
  g_threads = threads < 1 ? 0 : threads;
  if (g_threads > 0) omp_set_num_threads(g_threads);
}

int thread_count() { return g_threads > 0 ? g_threads : omp_get_max_threads(); }

void configure_from_environment() {
  if (const char* env = std::getenv("FOLIACOH_THREADS")) {
    try {
      set_thread_count(std::stoi(env));
    } catch (const std::exception&) {
      // advisory only; ignore junk
    }
  }
}

RowEchelon row_echelon_parallel(const Matrix& m) {
  auto rows = detail::clear_denominators(m);
  const auto n_rows = static_cast<std::ptrdiff_t>(m.rows());
  const std::size_t n_cols = m.cols();
  std::vector<std::size_t> pivots;
  Integer previous = 1;
  std::size_t k = 0;
  for (std::size_t c = 0; c < n_cols && k < m.rows(); ++c) {
    const std::size_t best = detail::pick_pivot(rows, k, c);
    if (best == m.rows()) continue;
    std::swap(rows[k], rows[best]);
    const Integer pivot = rows[k][c];
    const auto pivot_row = static_cast<std::ptrdiff_t>(k);
#pragma omp parallel for schedule(dynamic, 4) num_threads(thread_count())
    for (std::ptrdiff_t i = 0; i < n_rows; ++i) {
      if (i == pivot_row) continue;
      auto& row = rows[static_cast<std::size_t>(i)];
      const Integer factor = row[c];
      Integer scratch;
      for (std::size_t j = 0; j < n_cols; ++j) {
        mpz_mul(scratch.get_mpz_t(), row[j].get_mpz_t(), pivot.get_mpz_t());
        mpz_submul(scratch.get_mpz_t(), factor.get_mpz_t(), rows[k][j].get_mpz_t());
        mpz_divexact(row[j].get_mpz_t(), scratch.get_mpz_t(), previous.get_mpz_t());
      }
    }
    previous = pivot;
    pivots.push_back(c);
    ++k;
  }
  return detail::normalize(rows, std::move(pivots), n_cols);
}

Matrix multiply_parallel(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply_parallel: shape mismatch");
  Matrix out(a.rows(), b.cols());
  const auto n_rows = static_cast<std::ptrdiff_t>(a.rows());
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (std::ptrdiff_t ri = 0; ri < n_rows; ++ri) {
    const auto r = static_cast<std::size_t>(ri);
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
