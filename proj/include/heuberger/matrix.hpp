#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

#include "heuberger/integer.hpp"

namespace heuberger {

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::size_t rows, std::size_t cols, Vector entries);

  /// Builds from nested rows; every row must have the same length.
  static IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);
  static IntMatrix from_rows(const std::vector<Vector>& rows, std::size_t cols);
  static IntMatrix from_columns(const std::vector<Vector>& columns, std::size_t rows);
  static IntMatrix identity(std::size_t n);
  static IntMatrix column_vector(const Vector& v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const Vector& entries() const { return data_; }

  Vector column(std::size_t j) const;
  Vector row(std::size_t i) const;
  void set_column(std::size_t j, const Vector& v);

  Integer column_sum(std::size_t j) const;
  bool is_zero() const;
  bool row_is_zero(std::size_t i) const;
  bool column_is_zero(std::size_t j) const;

  IntMatrix transpose() const;
  IntMatrix without_row(std::size_t i) const;
  IntMatrix without_column(std::size_t j) const;
  /// Columns [first, last).
  IntMatrix column_range(std::size_t first, std::size_t last) const;
  IntMatrix row_range(std::size_t first, std::size_t last) const;
  IntMatrix with_column(const Vector& v) const;
  IntMatrix with_zero_row() const;

  // Elementary column/row operations, applied in place.
  void swap_columns(std::size_t a, std::size_t b);
  void swap_rows(std::size_t a, std::size_t b);
  void negate_column(std::size_t j);
  void negate_row(std::size_t i);
  /// col[target] += factor * col[source]
  void add_column_multiple(std::size_t target, std::size_t source, const Integer& factor);
  /// row[target] += factor * row[source]
  void add_row_multiple(std::size_t target, std::size_t source, const Integer& factor);

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Vector data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
Vector operator*(const IntMatrix& a, const Vector& v);

/// Horizontal concatenation [a | b].
IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b);
/// Block diagonal a ⊕ b.
IntMatrix direct_sum(const IntMatrix& a, const IntMatrix& b);

std::string to_string(const IntMatrix& m);
std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

}  // namespace heuberger
