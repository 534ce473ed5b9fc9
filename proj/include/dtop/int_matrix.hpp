#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "dtop/integer.hpp"

namespace dtop {

/// Dense matrix of arbitrary-precision integers, row-major.
///
/// Zero-sized shapes are meaningful: a 3×0 matrix is the map Z^0 → Z^3 and
/// keeps its row count through concatenation.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);
  static IntMatrix from_columns(std::size_t rows, const std::vector<Vec>& columns);
  static IntMatrix diagonal(std::size_t rows, std::size_t cols, const std::vector<Int>& diag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Int& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  const std::vector<Int>& entries() const { return data_; }

  Vec row(std::size_t r) const;
  Vec column(std::size_t c) const;
  std::vector<Vec> columns() const;

  IntMatrix transpose() const;
  IntMatrix select_rows(std::span<const std::size_t> idx) const;
  IntMatrix select_columns(std::span<const std::size_t> idx) const;
  IntMatrix column_range(std::size_t begin, std::size_t end) const;
  IntMatrix row_range(std::size_t begin, std::size_t end) const;
  bool is_zero() const;
  bool is_diagonal() const;

  // In-place elementary operations (used by the Smith reduction).
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  void add_row_multiple(std::size_t dst, std::size_t src, const Int& q);  // row dst += q·row src
  void add_col_multiple(std::size_t dst, std::size_t src, const Int& q);  // col dst += q·col src
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
Vec operator*(const IntMatrix& a, const Vec& x);
IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator*(const Int& s, const IntMatrix& a);

IntMatrix hcat(const IntMatrix& a, const IntMatrix& b);
IntMatrix hcat(std::initializer_list<const IntMatrix*> parts);
IntMatrix vcat(const IntMatrix& a, const IntMatrix& b);
IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b);
IntMatrix kron(const IntMatrix& a, const IntMatrix& b);
// k copies of `a` along the diagonal.
IntMatrix repeat_diag(const IntMatrix& a, std::size_t k);

}  // namespace dtop
