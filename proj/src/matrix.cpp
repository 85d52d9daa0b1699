#include "heuberger/matrix.hpp"

#include <ostream>
#include <sstream>
#include <utility>

namespace heuberger {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, Vector entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols)
    throw DimensionError("matrix entry count " + std::to_string(data_.size()) + " != " +
                         std::to_string(rows) + "x" + std::to_string(cols));
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  std::size_t r = rows.size();
  std::size_t c = r == 0 ? 0 : rows.begin()->size();
  Vector data;
  data.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionError("ragged matrix rows");
    for (long x : row) data.emplace_back(x);
  }
  return IntMatrix(r, c, std::move(data));
}

IntMatrix IntMatrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
  Vector data;
  data.reserve(rows.size() * cols);
  for (const auto& row : rows) {
    if (row.size() != cols) throw DimensionError("ragged matrix rows");
    data.insert(data.end(), row.begin(), row.end());
  }
  return IntMatrix(rows.size(), cols, std::move(data));
}

IntMatrix IntMatrix::from_columns(const std::vector<Vector>& columns, std::size_t rows) {
  IntMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw DimensionError("column length mismatch");
    m.set_column(j, columns[j]);
  }
  return m;
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::column_vector(const Vector& v) { return IntMatrix(v.size(), 1, v); }

Vector IntMatrix::column(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

Vector IntMatrix::row(std::size_t i) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

void IntMatrix::set_column(std::size_t j, const Vector& v) {
  if (v.size() != rows_) throw DimensionError("column length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Integer IntMatrix::column_sum(std::size_t j) const {
  Integer s = 0;
  for (std::size_t i = 0; i < rows_; ++i) s += (*this)(i, j);
  return s;
}

bool IntMatrix::is_zero() const { return heuberger::is_zero(data_); }

bool IntMatrix::row_is_zero(std::size_t i) const {
  for (std::size_t j = 0; j < cols_; ++j)
    if ((*this)(i, j) != 0) return false;
  return true;
}

bool IntMatrix::column_is_zero(std::size_t j) const {
  for (std::size_t i = 0; i < rows_; ++i)
    if ((*this)(i, j) != 0) return false;
  return true;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::without_row(std::size_t r) const {
  if (r >= rows_) throw DimensionError("row index out of range");
  IntMatrix out(rows_ - 1, cols_);
  for (std::size_t i = 0, k = 0; i < rows_; ++i) {
    if (i == r) continue;
    for (std::size_t j = 0; j < cols_; ++j) out(k, j) = (*this)(i, j);
    ++k;
  }
  return out;
}

IntMatrix IntMatrix::without_column(std::size_t c) const {
  if (c >= cols_) throw DimensionError("column index out of range");
  IntMatrix out(rows_, cols_ - 1);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0, k = 0; j < cols_; ++j) {
      if (j == c) continue;
      out(i, k++) = (*this)(i, j);
    }
  return out;
}

IntMatrix IntMatrix::column_range(std::size_t first, std::size_t last) const {
  if (first > last || last > cols_) throw DimensionError("column range out of bounds");
  IntMatrix out(rows_, last - first);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = first; j < last; ++j) out(i, j - first) = (*this)(i, j);
  return out;
}

IntMatrix IntMatrix::row_range(std::size_t first, std::size_t last) const {
  if (first > last || last > rows_) throw DimensionError("row range out of bounds");
  IntMatrix out(last - first, cols_);
  for (std::size_t i = first; i < last; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(i - first, j) = (*this)(i, j);
  return out;
}

IntMatrix IntMatrix::with_column(const Vector& v) const {
  if (v.size() != rows_) throw DimensionError("appended column has wrong length");
  IntMatrix out(rows_, cols_ + 1);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j);
    out(i, cols_) = v[i];
  }
  return out;
}

IntMatrix IntMatrix::with_zero_row() const {
  Vector data = data_;
  data.resize(data.size() + cols_);
  return IntMatrix(rows_ + 1, cols_, std::move(data));
}

void IntMatrix::swap_columns(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::negate_column(std::size_t j) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
}

void IntMatrix::add_column_multiple(std::size_t target, std::size_t source, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, target) += factor * (*this)(i, source);
}

void IntMatrix::add_row_multiple(std::size_t target, std::size_t source, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) (*this)(target, j) += factor * (*this)(source, j);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product shape mismatch");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Vector operator*(const IntMatrix& a, const Vector& v) {
  if (a.cols() != v.size()) throw DimensionError("matrix-vector shape mismatch");
  Vector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
  return out;
}

IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw DimensionError("hconcat row mismatch");
  IntMatrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

IntMatrix direct_sum(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
  return out;
}

std::string to_string(const IntMatrix& m) {
  std::ostringstream os;
  os << m;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) os << ", ";
    os << '[';
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ", ";
      os << m(i, j);
    }
    os << ']';
  }
  return os << ']';
}

}  // namespace heuberger
