#ifndef FOLIACOH_KERNELS_HPP
#define FOLIACOH_KERNELS_HPP

#include "foliacoh/linalg.hpp"

// Elimination and product kernels. Each exists as a serial reference and as an
// OpenMP variant; both must produce identical results.
namespace foliacoh::kernels {

/// Fraction-free Gauss-Jordan elimination over the integers after clearing
/// denominators row by row. Pivot: largest-magnitude entry in the column.
RowEchelon row_echelon_serial(const Matrix& m);
RowEchelon row_echelon_parallel(const Matrix& m);

Matrix multiply_serial(const Matrix& a, const Matrix& b);
Matrix multiply_parallel(const Matrix& a, const Matrix& b);

/// Thread count used by the parallel kernels; values < 1 restore the OpenMP default.
void set_thread_count(int threads);
int thread_count();

/// Reads FOLIACOH_THREADS if set.
void configure_from_environment();

/// Entry count (rows * cols) at which the dispatcher switches to the parallel kernels.
inline constexpr std::size_t kParallelThreshold = 64 * 64;

}  // namespace foliacoh::kernels

#endif  // FOLIACOH_KERNELS_HPP
