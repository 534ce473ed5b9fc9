#include "dtop/int_matrix.hpp"

#include <cassert>
#include <utility>

#include "dtop/errors.hpp"

namespace dtop {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols)
    throw ValidationError("matrix-shape", std::to_string(data_.size()) + " entries for " +
                                              std::to_string(rows) + "x" + std::to_string(cols));
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  std::size_t r = rows.size();
  std::size_t c = r ? rows.begin()->size() : 0;
  IntMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw ValidationError("matrix-shape", "ragged rows");
    std::size_t j = 0;
    for (long v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows, const std::vector<Vec>& columns) {
  IntMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw ValidationError("matrix-shape", "column length");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

IntMatrix IntMatrix::diagonal(std::size_t rows, std::size_t cols, const std::vector<Int>& diag) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < diag.size() && i < rows && i < cols; ++i) m(i, i) = diag[i];
  return m;
}

Vec IntMatrix::row(std::size_t r) const {
  return Vec(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
             data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vec IntMatrix::column(std::size_t c) const {
  Vec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
  return v;
}

std::vector<Vec> IntMatrix::columns() const {
  std::vector<Vec> out;
  out.reserve(cols_);
  for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::select_rows(std::span<const std::size_t> idx) const {
  IntMatrix m(idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(idx[i], j);
  return m;
}

IntMatrix IntMatrix::select_columns(std::span<const std::size_t> idx) const {
  IntMatrix m(rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
  return m;
}

IntMatrix IntMatrix::column_range(std::size_t begin, std::size_t end) const {
  IntMatrix m(rows_, end - begin);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = begin; j < end; ++j) m(i, j - begin) = (*this)(i, j);
  return m;
}

IntMatrix IntMatrix::row_range(std::size_t begin, std::size_t end) const {
  IntMatrix m(end - begin, cols_);
  for (std::size_t i = begin; i < end; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i - begin, j) = (*this)(i, j);
  return m;
}

bool IntMatrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

bool IntMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && (*this)(i, j) != 0) return false;
  return true;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Int& q) {
  if (q == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) {
    const Int& s = (*this)(src, j);
    if (s != 0) (*this)(dst, j) += q * s;
  }
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Int& q) {
  if (q == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) {
    const Int& s = (*this)(i, src);
    if (s != 0) (*this)(i, dst) += q * s;
  }
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
}

void IntMatrix::negate_col(std::size_t c) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
}

std::string IntMatrix::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) s += "; ";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) s += " ";
      s += (*this)(i, j).get_str();
    }
  }
  return s + "]";
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw ValidationError("matrix-shape", "product dimension mismatch");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Int& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const Int& y = b(k, j);
        if (y != 0) c(i, j) += x * y;
      }
    }
  return c;
}

Vec operator*(const IntMatrix& a, const Vec& x) {
  if (a.cols() != x.size()) throw ValidationError("matrix-shape", "matrix-vector mismatch");
  Vec y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (x[k] != 0 && a(i, k) != 0) y[i] += a(i, k) * x[k];
  return y;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ValidationError("matrix-shape", "sum dimension mismatch");
  IntMatrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
  return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ValidationError("matrix-shape", "difference dimension mismatch");
  IntMatrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
  return c;
}

IntMatrix operator*(const Int& s, const IntMatrix& a) {
  IntMatrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) *= s;
  return c;
}

IntMatrix hcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw ValidationError("matrix-shape", "hcat row mismatch");
  IntMatrix c(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
  }
  return c;
}

IntMatrix hcat(std::initializer_list<const IntMatrix*> parts) {
  assert(parts.size() > 0);
  IntMatrix out = **parts.begin();
  for (auto it = parts.begin() + 1; it != parts.end(); ++it) out = hcat(out, **it);
  return out;
}

IntMatrix vcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) throw ValidationError("matrix-shape", "vcat column mismatch");
  IntMatrix c(a.rows() + b.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) c(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i) c(a.rows() + i, j) = b(i, j);
  }
  return c;
}

IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) c(a.rows() + i, a.cols() + j) = b(i, j);
  return c;
}

IntMatrix kron(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Int& x = a(i, j);
      if (x == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          if (b(k, l) != 0) c(i * b.rows() + k, j * b.cols() + l) = x * b(k, l);
    }
  return c;
}

IntMatrix repeat_diag(const IntMatrix& a, std::size_t k) {
  IntMatrix c(a.rows() * k, a.cols() * k);
  for (std::size_t t = 0; t < k; ++t)
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) c(t * a.rows() + i, t * a.cols() + j) = a(i, j);
  return c;
}

}  // namespace dtop
