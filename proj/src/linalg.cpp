#include "foliacoh/linalg.hpp"

#include <stdexcept>

#include "foliacoh/kernels.hpp"

namespace foliacoh {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(std::span<const Vector> rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("from_rows: ragged row");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Matrix Matrix::from_columns(std::span<const Vector> columns, std::size_t rows) {
  Matrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw std::invalid_argument("from_columns: ragged column");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

Vector Matrix::row(std::size_t r) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector Matrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_)
    if (sgn(x) != 0) return false;
  return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: shape mismatch");
  if (a.rows() * b.cols() >= kernels::kParallelThreshold && kernels::thread_count() > 1)
    return kernels::multiply_parallel(a, b);
  return kernels::multiply_serial(a, b);
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix sum: shape mismatch");
  Matrix s(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) s(r, c) = a(r, c) + b(r, c);
  return s;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix difference: shape mismatch");
  Matrix s(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) s(r, c) = a(r, c) - b(r, c);
  return s;
}

Vector operator*(const Matrix& m, const Vector& v) {
  if (m.cols() != v.size()) throw std::invalid_argument("matrix-vector product: shape mismatch");
  Vector out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Rational acc = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (sgn(v[c]) != 0) acc += m(r, c) * v[c];
    }
    out[r] = acc;
  }
  return out;
}

Matrix vstack(std::span<const Matrix> blocks, std::size_t cols) {
  std::size_t rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols) throw std::invalid_argument("vstack: column mismatch");
    rows += b.rows();
  }
  Matrix out(rows, cols);
  std::size_t at = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.rows(); ++r, ++at)
      for (std::size_t c = 0; c < cols; ++c) out(at, c) = b(r, c);
  }
  return out;
}

bool is_zero(const Vector& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v(n);
  v.at(i) = 1;
  return v;
}

RowEchelon row_echelon(const Matrix& m) {
  if (m.rows() * m.cols() >= kernels::kParallelThreshold && kernels::thread_count() > 1)
    return kernels::row_echelon_parallel(m);
  return kernels::row_echelon_serial(m);
}

std::size_t rank(const Matrix& m) { return row_echelon(m).rank(); }

std::vector<Vector> null_space(const Matrix& m) {
  const RowEchelon e = row_echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v(m.cols());
    v[f] = 1;
    for (std::size_t k = 0; k < e.pivots.size(); ++k) v[e.pivots[k]] = -e.reduced(k, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Vector> column_space(const Matrix& m) {
  const RowEchelon e = row_echelon(m.transpose());
  std::vector<Vector> basis;
  basis.reserve(e.rank());
  for (std::size_t k = 0; k < e.rank(); ++k) basis.push_back(e.reduced.row(k));
  return basis;
}

std::optional<Vector> solve(const Matrix& m, const Vector& y) {
  if (y.size() != m.rows()) throw std::invalid_argument("solve: dimension mismatch");
  Matrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = y[r];
  }
  const RowEchelon e = row_echelon(aug);
  Vector x(m.cols());
  for (std::size_t k = 0; k < e.rank(); ++k) {
    if (e.pivots[k] == m.cols()) return std::nullopt;
    x[e.pivots[k]] = e.reduced(k, m.cols());
  }
  return x;
}

Vector EchelonBasis::reduce(Vector v) const {
  if (v.size() != ambient_) throw std::invalid_argument("EchelonBasis::reduce: dimension mismatch");
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const Rational c = v[pivots_[k]];
    if (sgn(c) == 0) continue;
    const Vector& row = rows_[k];
    for (std::size_t j = 0; j < ambient_; ++j) {
      if (sgn(row[j]) != 0) v[j] -= c * row[j];
    }
  }
  return v;
}

bool EchelonBasis::insert(Vector v) {
  v = reduce(std::move(v));
  std::size_t p = 0;
  while (p < ambient_ && sgn(v[p]) == 0) ++p;
  if (p == ambient_) return false;
  const Rational inv = 1 / v[p];
  for (auto& x : v) x *= inv;
  rows_.push_back(std::move(v));
  pivots_.push_back(p);
  return true;
}

CoordinateSystem::CoordinateSystem(std::size_t ambient, std::span<const Vector> modulo,
                                   std::span<const Vector> basis)
    : ambient_(ambient), size_(basis.size()) {
  auto insert = [&](Vector vec, Vector coeff) -> bool {
    for (const auto& row : rows_) {
      const Rational c = vec[row.pivot];
      if (sgn(c) == 0) continue;
      for (std::size_t j = 0; j < ambient_; ++j)
        if (sgn(row.vec[j]) != 0) vec[j] -= c * row.vec[j];
      for (std::size_t j = 0; j < size_; ++j)
        if (sgn(row.coeff[j]) != 0) coeff[j] -= c * row.coeff[j];
    }
    std::size_t p = 0;
    while (p < ambient_ && sgn(vec[p]) == 0) ++p;
    if (p == ambient_) return false;
    const Rational inv = 1 / vec[p];
    for (auto& x : vec) x *= inv;
    for (auto& x : coeff) x *= inv;
    rows_.push_back(Row{std::move(vec), std::move(coeff), p});
    return true;
  };
  for (const auto& m : modulo) {
    if (m.size() != ambient_) throw std::invalid_argument("CoordinateSystem: dimension mismatch");
    insert(m, Vector(size_));
  }
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (basis[j].size() != ambient_) throw std::invalid_argument("CoordinateSystem: dimension mismatch");
    if (!insert(basis[j], unit_vector(size_, j)))
      throw std::invalid_argument("CoordinateSystem: basis is dependent modulo the subspace");
  }
}

std::optional<Vector> CoordinateSystem::coordinates(const Vector& v) const {
  if (v.size() != ambient_) throw std::invalid_argument("CoordinateSystem::coordinates: dimension mismatch");
  Vector rem = v;
  Vector out(size_);
  for (const auto& row : rows_) {
    const Rational c = rem[row.pivot];
    if (sgn(c) == 0) continue;
    for (std::size_t j = 0; j < ambient_; ++j)
      if (sgn(row.vec[j]) != 0) rem[j] -= c * row.vec[j];
    for (std::size_t j = 0; j < size_; ++j)
      if (sgn(row.coeff[j]) != 0) out[j] += c * row.coeff[j];
  }
  if (!is_zero(rem)) return std::nullopt;
  return out;
}

}  // namespace foliacoh
