#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "eigshift/error.hpp"
#include "eigshift/scalar.hpp"

namespace eigshift {

template <typename T>
class DenseVector {
 public:
  using value_type = T;

  DenseVector() = default;
  explicit DenseVector(std::size_t dim) : entries_(dim, scalar_traits<T>::zero()) {}
  explicit DenseVector(std::vector<T> entries) : entries_(std::move(entries)) {}
  DenseVector(std::initializer_list<T> entries) : entries_(entries) {}

  /// Standard basis vector e_{index+1} (index is zero-based).
  static DenseVector unit(std::size_t dim, std::size_t index) {
    DenseVector v(dim);
    v[index] = scalar_traits<T>::one();
    return v;
  }

  std::size_t dim() const { return entries_.size(); }
  T& operator[](std::size_t i) { return entries_[i]; }
  const T& operator[](std::size_t i) const { return entries_[i]; }
  std::span<const T> entries() const { return entries_; }

  bool is_zero() const {
    for (const auto& x : entries_)
      if (!scalar_traits<T>::is_zero(x)) return false;
    return true;
  }

  DenseVector& operator+=(const DenseVector& o) {
    require_same(o);
    for (std::size_t i = 0; i < dim(); ++i) entries_[i] += o.entries_[i];
    return *this;
  }
  DenseVector& operator-=(const DenseVector& o) {
    require_same(o);
    for (std::size_t i = 0; i < dim(); ++i) entries_[i] -= o.entries_[i];
    return *this;
  }
  DenseVector& operator*=(const T& s) {
    for (auto& x : entries_) x *= s;
    return *this;
  }

  friend DenseVector operator+(DenseVector a, const DenseVector& b) { return a += b; }
  friend DenseVector operator-(DenseVector a, const DenseVector& b) { return a -= b; }
  friend DenseVector operator*(const T& s, DenseVector v) { return v *= s; }
  friend DenseVector operator*(DenseVector v, const T& s) { return v *= s; }
  friend DenseVector operator-(DenseVector v) {
    for (auto& x : v.entries_) x = -x;
    return v;
  }
  friend bool operator==(const DenseVector& a, const DenseVector& b) { return a.entries_ == b.entries_; }

  DenseVector conj() const {
    DenseVector out(*this);
    for (auto& x : out.entries_) x = scalar_traits<T>::conj(x);
    return out;
  }

 private:
  void require_same(const DenseVector& o) const {
    if (o.dim() != dim())
      throw Error(ErrorKind::dimension_mismatch,
                  "vector dims " + std::to_string(dim()) + " vs " + std::to_string(o.dim()));
  }

  std::vector<T> entries_;
};

/// u* v, conjugate-linear in the left argument.
template <typename T>
T inner(const DenseVector<T>& u, const DenseVector<T>& v) {
  if (u.dim() != v.dim())
    throw Error(ErrorKind::dimension_mismatch,
                "inner product of dims " + std::to_string(u.dim()) + " and " + std::to_string(v.dim()));
  T acc = scalar_traits<T>::zero();
  for (std::size_t i = 0; i < u.dim(); ++i) acc += scalar_traits<T>::conj(u[i]) * v[i];
  return acc;
}

/// Dense row-major matrix. Value type; all operations return new matrices.
template <typename T>
class DenseMatrix {
 public:
  using value_type = T;
  using vector_type = DenseVector<T>;

  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, scalar_traits<T>::zero()) {}
  DenseMatrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw Error(ErrorKind::dimension_mismatch, "ragged matrix literal");
      entries_.insert(entries_.end(), row.begin(), row.end());
    }
  }

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = scalar_traits<T>::one();
    return m;
  }

  static DenseMatrix from_columns(std::span<const vector_type> columns, std::size_t dim) {
    DenseMatrix m(dim, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].dim() != dim) throw Error(ErrorKind::dimension_mismatch, "column has wrong dimension");
      for (std::size_t i = 0; i < dim; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }
  static DenseMatrix from_columns(const std::vector<vector_type>& columns) {
    if (columns.empty()) return {};
    return from_columns(std::span<const vector_type>(columns), columns.front().dim());
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  vector_type col(std::size_t j) const {
    vector_type v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  vector_type row(std::size_t i) const {
    vector_type v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
    return v;
  }
  void set_col(std::size_t j, const vector_type& v) {
    if (v.dim() != rows_) throw Error(ErrorKind::dimension_mismatch, "set_col dimension");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }

  DenseMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw Error(ErrorKind::dimension_mismatch, "block out of range");
    DenseMatrix m(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
  }
  void set_block(std::size_t r0, std::size_t c0, const DenseMatrix& b) {
    if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_)
      throw Error(ErrorKind::dimension_mismatch, "set_block out of range");
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  /// Submatrix on arbitrary (ordered) row and column index sets.
  DenseMatrix select(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
    DenseMatrix m(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = (*this)(rows[i], cols[j]);
    return m;
  }

  DenseMatrix transpose() const {
    DenseMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }
  DenseMatrix conj_transpose() const {
    DenseMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = scalar_traits<T>::conj((*this)(i, j));
    return m;
  }

  bool is_zero() const {
    for (const auto& x : entries_)
      if (!scalar_traits<T>::is_zero(x)) return false;
    return true;
  }

  DenseMatrix& operator+=(const DenseMatrix& o) {
    require_same_shape(o, "+");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
    return *this;
  }
  DenseMatrix& operator-=(const DenseMatrix& o) {
    require_same_shape(o, "-");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
    return *this;
  }
  DenseMatrix& operator*=(const T& s) {
    for (auto& x : entries_) x *= s;
    return *this;
  }

  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
  friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
  friend DenseMatrix operator*(const T& s, DenseMatrix m) { return m *= s; }
  friend DenseMatrix operator*(DenseMatrix m, const T& s) { return m *= s; }
  friend DenseMatrix operator-(DenseMatrix m) {
    for (auto& x : m.entries_) x = -x;
    return m;
  }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ != b.rows_)
      throw Error(ErrorKind::dimension_mismatch, "product of " + a.shape() + " and " + b.shape());
    DenseMatrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t l = 0; l < a.cols_; ++l) {
        const T& x = a(i, l);
        if (scalar_traits<T>::is_zero(x)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += x * b(l, j);
      }
    return m;
  }
  friend vector_type operator*(const DenseMatrix& a, const vector_type& v) {
    if (a.cols_ != v.dim())
      throw Error(ErrorKind::dimension_mismatch, "matrix " + a.shape() + " times vector of dim " +
                                                     std::to_string(v.dim()));
    vector_type out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) out[i] += a(i, j) * v[j];
    return out;
  }

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

 private:
  void require_same_shape(const DenseMatrix& o, const char* op) const {
    if (o.rows_ != rows_ || o.cols_ != cols_)
      throw Error(ErrorKind::dimension_mismatch, std::string("operator") + op + " on " + shape() + " and " + o.shape());
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> entries_;
};

using Vector = DenseVector<Scalar>;
using Matrix = DenseMatrix<Scalar>;
using FloatVector = DenseVector<FloatScalar>;
using FloatMatrix = DenseMatrix<FloatScalar>;

template <typename T>
DenseMatrix<T> mat_mul(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  return a * b;
}

template <typename T>
DenseMatrix<T> conj_transpose(const DenseMatrix<T>& m) {
  return m.conj_transpose();
}

/// Columns of `a` followed by columns of `b`.
template <typename T>
DenseMatrix<T> hstack(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  if (a.cols() == 0) return b;
  if (b.cols() == 0) return a;
  if (a.rows() != b.rows()) throw Error(ErrorKind::dimension_mismatch, "hstack of " + a.shape() + " and " + b.shape());
  DenseMatrix<T> m(a.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

template <typename T>
DenseMatrix<T> vstack(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  if (a.cols() != b.cols()) throw Error(ErrorKind::dimension_mismatch, "vstack of " + a.shape() + " and " + b.shape());
  DenseMatrix<T> m(a.rows() + b.rows(), a.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), 0, b);
  return m;
}

template <typename T>
DenseMatrix<T> direct_sum(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  DenseMatrix<T> m(a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

template <typename T>
DenseMatrix<T> as_column(const DenseVector<T>& v) {
  DenseMatrix<T> m(v.dim(), 1);
  for (std::size_t i = 0; i < v.dim(); ++i) m(i, 0) = v[i];
  return m;
}

/// u v* as a rank-one matrix (v conjugated).
template <typename T>
DenseMatrix<T> outer_star(const DenseVector<T>& u, const DenseVector<T>& v) {
  DenseMatrix<T> m(u.dim(), v.dim());
  for (std::size_t i = 0; i < u.dim(); ++i)
    for (std::size_t j = 0; j < v.dim(); ++j) m(i, j) = u[i] * scalar_traits<T>::conj(v[j]);
  return m;
}

/// Converts an exact matrix to the floating backend.
inline FloatMatrix to_float(const Matrix& m) {
  FloatMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_complex();
  return out;
}
inline FloatVector to_float(const Vector& v) {
  FloatVector out(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) out[i] = v[i].to_complex();
  return out;
}

}  // namespace eigshift
