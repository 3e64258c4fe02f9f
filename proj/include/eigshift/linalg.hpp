#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "eigshift/error.hpp"
#include "eigshift/matrix.hpp"

namespace eigshift {

namespace detail {

template <typename T>
struct BareissResult {
  std::size_t rank = 0;
  bool negated = false;  // odd number of row swaps
  T last_pivot = scalar_traits<T>::one();
};

// Fraction-free elimination with first-nonzero pivoting. Each update divides
// by the previous pivot, so for Gaussian-integer input every intermediate
// entry is itself a minor of the input.
template <typename T>
BareissResult<T> bareiss(DenseMatrix<T> m) {
  using tr = scalar_traits<T>;
  BareissResult<T> out;
  T prev = tr::one();
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && tr::is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    if (p != r) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
      out.negated = !out.negated;
    }
    const T pivot = m(r, c);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      const T lead = m(i, c);
      for (std::size_t j = c + 1; j < m.cols(); ++j) {
        m(i, j) = (pivot * m(i, j) - lead * m(r, j)) / prev;
      }
      m(i, c) = tr::zero();
    }
    prev = pivot;
    out.last_pivot = pivot;
    ++r;
  }
  out.rank = r;
  return out;
}

}  // namespace detail

template <typename T>
std::size_t exact_rank(const DenseMatrix<T>& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return detail::bareiss(m).rank;
}

template <typename T>
T determinant(const DenseMatrix<T>& m) {
  if (!m.is_square()) throw Error(ErrorKind::dimension_mismatch, "determinant of non-square " + m.shape());
  if (m.rows() == 0) return scalar_traits<T>::one();
  auto res = detail::bareiss(m);
  if (res.rank < m.rows()) return scalar_traits<T>::zero();
  return res.negated ? -res.last_pivot : res.last_pivot;
}

/// Reduced row echelon form together with the pivot column of each nonzero row.
template <typename T>
std::pair<DenseMatrix<T>, std::vector<std::size_t>> rref(DenseMatrix<T> m) {
  using tr = scalar_traits<T>;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && tr::is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const T inv = tr::one() / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || tr::is_zero(m(i, c))) continue;
      const T f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

/// Basis of {x : M x = 0}; one vector per free column, in column order.
template <typename T>
std::vector<DenseVector<T>> null_space_basis(const DenseMatrix<T>& m) {
  auto [r, pivots] = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<DenseVector<T>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    DenseVector<T> v(m.cols());
    v[free] = scalar_traits<T>::one();
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Basis of the column space, taken from the pivot columns of M itself.
template <typename T>
std::vector<DenseVector<T>> column_space_basis(const DenseMatrix<T>& m) {
  auto pivots = rref(m).second;
  std::vector<DenseVector<T>> basis;
  basis.reserve(pivots.size());
  for (auto c : pivots) basis.push_back(m.col(c));
  return basis;
}

/// Solves A X = B for square nonsingular A.
template <typename T>
DenseMatrix<T> solve(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  if (!a.is_square()) throw Error(ErrorKind::dimension_mismatch, "solve with non-square " + a.shape());
  if (b.rows() != a.rows()) throw Error(ErrorKind::dimension_mismatch, "solve rhs " + b.shape());
  const std::size_t n = a.rows();
  auto [r, pivots] = rref(hstack(a, b));
  std::size_t rank = 0;
  while (rank < pivots.size() && pivots[rank] < n) ++rank;
  if (rank < n) throw SingularError(rank, n);
  return r.block(0, n, n, b.cols());
}

template <typename T>
DenseVector<T> solve(const DenseMatrix<T>& a, const DenseVector<T>& b) {
  return solve(a, as_column(b)).col(0);
}

template <typename T>
DenseMatrix<T> inverse(const DenseMatrix<T>& a) {
  return solve(a, DenseMatrix<T>::identity(a.rows()));
}

/// M - s I.
template <typename T>
DenseMatrix<T> shifted(const DenseMatrix<T>& m, const T& s) {
  if (!m.is_square()) throw Error(ErrorKind::dimension_mismatch, "shifted on non-square " + m.shape());
  DenseMatrix<T> out = m;
  for (std::size_t i = 0; i < m.rows(); ++i) out(i, i) -= s;
  return out;
}

template <typename T>
DenseMatrix<T> power(const DenseMatrix<T>& m, std::size_t e) {
  DenseMatrix<T> out = DenseMatrix<T>::identity(m.rows());
  for (std::size_t i = 0; i < e; ++i) out = out * m;
  return out;
}

/// True when `vectors` (all of dimension `dim`) are linearly independent.
template <typename T>
bool independent(const std::vector<DenseVector<T>>& vectors, std::size_t dim) {
  if (vectors.empty()) return true;
  return exact_rank(DenseMatrix<T>::from_columns(std::span<const DenseVector<T>>(vectors), dim)) == vectors.size();
}

/// True when the two families span the same subspace.
template <typename T>
bool same_span(const std::vector<DenseVector<T>>& a, const std::vector<DenseVector<T>>& b, std::size_t dim) {
  std::vector<DenseVector<T>> both = a;
  both.insert(both.end(), b.begin(), b.end());
  auto rank_of = [dim](const std::vector<DenseVector<T>>& vs) -> std::size_t {
    if (vs.empty()) return 0;
    return exact_rank(DenseMatrix<T>::from_columns(std::span<const DenseVector<T>>(vs), dim));
  };
  const std::size_t ra = rank_of(a);
  return ra == rank_of(b) && ra == rank_of(both);
}

}  // namespace eigshift
