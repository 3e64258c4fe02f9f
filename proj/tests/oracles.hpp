#pragma once

// Reference computations for the tests. They share nothing with the library's
// elimination code: determinants by permutation expansion, ranks by plain
// Gauss-Jordan with last-row pivoting.

#include <algorithm>
#include <numeric>
#include <vector>

#include "eigshift/matrix.hpp"

namespace oracle {

using eigshift::Matrix;
using eigshift::Scalar;

inline Scalar leibniz_det(const Matrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Scalar total(0);
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    Scalar term(inversions % 2 ? -1 : 1);
    for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline std::size_t plain_rank(Matrix m) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t piv = m.rows();
    for (std::size_t r = m.rows(); r-- > rank;)
      if (!m(r, c).is_zero()) {
        piv = r;
        break;
      }
    if (piv == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(rank, j), m(piv, j));
    const Scalar inv = Scalar(1) / m(rank, c);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == rank || m(r, c).is_zero()) continue;
      const Scalar f = m(r, c) * inv;
      for (std::size_t j = c; j < m.cols(); ++j) m(r, j) -= f * m(rank, j);
    }
    ++rank;
  }
  return rank;
}

inline Matrix shifted_by(const Matrix& m, const Scalar& s) {
  Matrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i) out(i, i) -= s;
  return out;
}

/// Jordan block sizes of m at lambda, descending, from ranks of powers.
inline std::vector<std::size_t> block_sizes(const Matrix& m, const Scalar& lambda) {
  const std::size_t n = m.rows();
  const Matrix d = shifted_by(m, lambda);
  std::vector<std::size_t> ranks{n};
  Matrix p = Matrix::identity(n);
  while (true) {
    p = p * d;
    ranks.push_back(plain_rank(p));
    if (ranks.back() == ranks[ranks.size() - 2]) break;
  }
  // blocks of size >= j: ranks[j-1] - ranks[j]
  std::vector<std::size_t> sizes;
  for (std::size_t j = ranks.size() - 1; j >= 1; --j) {
    const std::size_t at_least = ranks[j - 1] - ranks[j];
    const std::size_t longer = j + 1 < ranks.size() ? ranks[j] - ranks[j + 1] : 0;
    for (std::size_t c = longer; c < at_least; ++c) sizes.push_back(j);
  }
  return sizes;
}

inline std::size_t geometric_multiplicity(const Matrix& m, const Scalar& lambda) {
  return m.rows() - plain_rank(shifted_by(m, lambda));
}

}  // namespace oracle
