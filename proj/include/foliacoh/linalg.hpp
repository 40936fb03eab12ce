#ifndef FOLIACOH_LINALG_HPP
#define FOLIACOH_LINALG_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "foliacoh/rational.hpp"

namespace foliacoh {

using Vector = std::vector<Rational>;

/// Dense row-major rational matrix. A matrix with zero rows or columns is valid
/// and represents a map into or out of the zero space.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);
  static Matrix from_rows(std::span<const Vector> rows, std::size_t cols);
  static Matrix from_columns(std::span<const Vector> columns, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector row(std::size_t r) const;
  Vector column(std::size_t c) const;
  Matrix transpose() const;
  bool is_zero() const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& m, const Vector& v);

/// Stacks matrices with equal column counts on top of each other.
Matrix vstack(std::span<const Matrix> blocks, std::size_t cols);

bool is_zero(const Vector& v);
Vector unit_vector(std::size_t n, std::size_t i);

/// Reduced row echelon form. `reduced` holds only the nonzero rows, so its row
/// count is the rank; `pivots[k]` is the pivot column of row k.
struct RowEchelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;

  std::size_t rank() const { return pivots.size(); }
};

/// Picks the serial or OpenMP elimination kernel by problem size.
RowEchelon row_echelon(const Matrix& m);
std::size_t rank(const Matrix& m);

/// Basis of {x : m x = 0}, one vector per free column, in increasing free-column order.
std::vector<Vector> null_space(const Matrix& m);

/// Reduced echelon basis of the column space of m.
std::vector<Vector> column_space(const Matrix& m);

/// Some x with m x = y (free variables set to zero), or nullopt if inconsistent.
std::optional<Vector> solve(const Matrix& m, const Vector& y);

/// Incrementally built echelon basis of a subspace of Q^n. Rows are kept with unit
/// pivots, and each row vanishes at the pivots of all rows inserted before it.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t ambient) : ambient_(ambient) {}

  std::size_t ambient() const { return ambient_; }
  std::size_t rank() const { return rows_.size(); }

  /// Remainder of v after elimination; zero exactly when v lies in the span, and
  /// otherwise zero at every pivot coordinate.
  Vector reduce(Vector v) const;
  bool contains(const Vector& v) const { return is_zero(reduce(v)); }

  /// Inserts v; returns false (and leaves the basis unchanged) when v is dependent.
  bool insert(Vector v);

  const std::vector<std::size_t>& pivots() const { return pivots_; }

 private:
  std::size_t ambient_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

/// Coordinates with respect to a list of vectors modulo a subspace:
/// v = sum_j c_j basis[j] + (element of span(modulo)).
/// Throws std::invalid_argument if the basis is dependent modulo the subspace.
class CoordinateSystem {
 public:
  CoordinateSystem() = default;
  CoordinateSystem(std::size_t ambient, std::span<const Vector> modulo, std::span<const Vector> basis);

  std::size_t size() const { return size_; }
  std::size_t ambient() const { return ambient_; }

  /// nullopt when v is outside span(basis) + span(modulo).
  std::optional<Vector> coordinates(const Vector& v) const;

 private:
  struct Row {
    Vector vec;
    Vector coeff;
    std::size_t pivot;
  };
  std::size_t ambient_ = 0;
  std::size_t size_ = 0;
  std::vector<Row> rows_;
};

}  // namespace foliacoh

#endif  // FOLIACOH_LINALG_HPP
