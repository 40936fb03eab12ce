#ifndef FOLIACOH_SRC_KERNELS_INTEGER_ROWS_HPP
#define FOLIACOH_SRC_KERNELS_INTEGER_ROWS_HPP

#include <vector>

#include "foliacoh/linalg.hpp"

namespace foliacoh::kernels::detail {

using IntegerRow = std::vector<Integer>;

/// Multiplies each row by the lcm of its denominators.
std::vector<IntegerRow> clear_denominators(const Matrix& m);

/// Index of the largest |rows[r][col]| with r >= from, or rows.size() if the column is zero there.
std::size_t pick_pivot(const std::vector<IntegerRow>& rows, std::size_t from, std::size_t col);

/// Divides the first `rank` rows by their pivot entries.
RowEchelon normalize(const std::vector<IntegerRow>& rows, std::vector<std::size_t> pivots, std::size_t cols);

}  // namespace foliacoh::kernels::detail

#endif
