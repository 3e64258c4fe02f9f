#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "eigshift/error.hpp"
#include "eigshift/linalg.hpp"
#include "eigshift/matrix.hpp"

namespace eigshift {

struct SegreBlock {
  Scalar eigenvalue;
  std::size_t size = 0;

  friend bool operator==(const SegreBlock&, const SegreBlock&) = default;
};

/// Multiset of Jordan blocks (eigenvalue, size). Comparison is on the
/// canonical ordering, so two characteristics listing the same blocks in a
/// different order compare equal.
class SegreCharacteristic {
 public:
  SegreCharacteristic() = default;
  explicit SegreCharacteristic(std::vector<SegreBlock> blocks) : blocks_(std::move(blocks)) {
    for (const auto& b : blocks_)
      if (b.size == 0) throw Error(ErrorKind::invalid_size, "Jordan block of size 0");
  }

  const std::vector<SegreBlock>& blocks() const { return blocks_; }
  bool empty() const { return blocks_.empty(); }

  std::size_t total_size() const {
    std::size_t n = 0;
    for (const auto& b : blocks_) n += b.size;
    return n;
  }

  /// Grouped by eigenvalue (lexicographic on re, im), sizes descending.
  SegreCharacteristic canonical() const {
    auto sorted = blocks_;
    std::stable_sort(sorted.begin(), sorted.end(), [](const SegreBlock& a, const SegreBlock& b) {
      auto c = lex_compare(a.eigenvalue, b.eigenvalue);
      if (c != 0) return c < 0;
      return a.size > b.size;
    });
    SegreCharacteristic out;
    out.blocks_ = std::move(sorted);
    return out;
  }

  /// Block sizes at one eigenvalue, descending.
  std::vector<std::size_t> sizes_at(const Scalar& lambda) const {
    std::vector<std::size_t> sizes;
    for (const auto& b : blocks_)
      if (b.eigenvalue == lambda) sizes.push_back(b.size);
    std::sort(sizes.rbegin(), sizes.rend());
    return sizes;
  }

  SegreCharacteristic without(const Scalar& lambda) const {
    SegreCharacteristic out;
    for (const auto& b : blocks_)
      if (b.eigenvalue != lambda) out.blocks_.push_back(b);
    return out;
  }

  void append(const SegreCharacteristic& other) {
    blocks_.insert(blocks_.end(), other.blocks_.begin(), other.blocks_.end());
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      if (i) s += ",";
      s += "(" + blocks_[i].eigenvalue.to_string() + "," + std::to_string(blocks_[i].size) + ")";
    }
    return s + "]";
  }

  friend bool operator==(const SegreCharacteristic& a, const SegreCharacteristic& b) {
    return a.canonical().blocks_ == b.canonical().blocks_;
  }

 private:
  std::vector<SegreBlock> blocks_;
};

/// Left chain u_1..u_p (u_1* A = lambda u_1*, u_{i+1}* A = lambda u_{i+1}* + u_i*)
/// and right chain v_1..v_q (A v_{i+1} = lambda v_{i+1} + v_i), leading vector first.
template <typename T>
struct BasicChainPair {
  T lambda;
  std::vector<DenseVector<T>> left;
  std::vector<DenseVector<T>> right;
};
using ChainPair = BasicChainPair<Scalar>;

template <typename T>
DenseMatrix<T> jordan_block(const T& lambda, std::size_t k) {
  if (k == 0) throw Error(ErrorKind::invalid_size, "Jordan block needs k >= 1");
  DenseMatrix<T> j(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    j(i, i) = lambda;
    if (i + 1 < k) j(i, i + 1) = scalar_traits<T>::one();
  }
  return j;
}

inline Matrix jordan_matrix(const SegreCharacteristic& segre) {
  Matrix j;
  for (const auto& b : segre.blocks()) j = direct_sum(j, jordan_block(b.eigenvalue, b.size));
  return j;
}

/// Index of the first chain vector violating its recurrence, if any.
template <typename T>
std::optional<std::size_t> right_chain_violation(const DenseMatrix<T>& a, const T& lambda,
                                                 const std::vector<DenseVector<T>>& right) {
  for (std::size_t i = 0; i < right.size(); ++i) {
    if (right[i].dim() != a.rows()) return i;
    DenseVector<T> lhs = a * right[i] - lambda * right[i];
    if (i > 0) lhs -= right[i - 1];
    if (!lhs.is_zero()) return i;
  }
  if (!right.empty() && right.front().is_zero()) return 0;
  return std::nullopt;
}

template <typename T>
std::optional<std::size_t> left_chain_violation(const DenseMatrix<T>& a, const T& lambda,
                                                const std::vector<DenseVector<T>>& left) {
  // u* A = lambda u* + w*  <=>  A* u = conj(lambda) u + w
  const DenseMatrix<T> as = a.conj_transpose();
  return right_chain_violation(as, scalar_traits<T>::conj(lambda), left);
}

template <typename T>
bool chain_pair_holds(const DenseMatrix<T>& a, const BasicChainPair<T>& c) {
  return !left_chain_violation(a, c.lambda, c.left) && !right_chain_violation(a, c.lambda, c.right);
}

struct SynthesizedMatrix {
  Matrix a;
  Matrix basis;       // P, with A = P J P^{-1}
  Matrix basis_inv;   // P^{-1}
  std::vector<ChainPair> chains;   // one per block, in segre order
  std::vector<std::size_t> offsets;  // first column of each block in P
};

/// A = P J P^{-1} with the chains of every block read off P (right) and the
/// conjugated rows of P^{-1} (left).
inline SynthesizedMatrix build_matrix(const SegreCharacteristic& segre, const Matrix& change_of_basis) {
  const std::size_t n = segre.total_size();
  if (!change_of_basis.is_square() || change_of_basis.rows() != n)
    throw Error(ErrorKind::dimension_mismatch,
                "change of basis " + change_of_basis.shape() + " for total size " + std::to_string(n));
  SynthesizedMatrix out;
  out.basis = change_of_basis;
  out.basis_inv = inverse(change_of_basis);
  out.a = change_of_basis * jordan_matrix(segre) * out.basis_inv;
  std::size_t offset = 0;
  for (const auto& b : segre.blocks()) {
    ChainPair c{b.eigenvalue, {}, {}};
    for (std::size_t i = 0; i < b.size; ++i) {
      c.right.push_back(change_of_basis.col(offset + i));
      c.left.push_back(out.basis_inv.row(offset + b.size - 1 - i).conj());
    }
    out.chains.push_back(std::move(c));
    out.offsets.push_back(offset);
    offset += b.size;
  }
  return out;
}

/// Another left chain for the block of size m starting at column `offset` of
/// P: u_i* = sum_j x_{i,j} (row offset+j of P^{-1}), where X is the lower
/// triangular Hankel matrix with x_{i,j} = h_{i+j-m} on and below the
/// anti-diagonal. Any such X with h_1 != 0 gives a valid chain.
inline std::vector<Vector> left_chain_from_hankel(const Matrix& basis_inv, std::size_t offset,
                                                  const std::vector<Scalar>& h) {
  const std::size_t m = h.size();
  if (m == 0 || h.front().is_zero()) throw Error(ErrorKind::invalid_parameter, "Hankel parameters need h_1 != 0");
  if (offset + m > basis_inv.rows()) throw Error(ErrorKind::dimension_mismatch, "block exceeds basis");
  std::vector<Vector> left;
  for (std::size_t i = 1; i <= m; ++i) {
    Vector u(basis_inv.cols());
    for (std::size_t j = m + 1 - i; j <= m; ++j) u += h[i + j - m - 1].conj() * basis_inv.row(offset + j - 1).conj();
    left.push_back(std::move(u));
  }
  return left;
}

/// Every left/right chain pair of J_{size}(lambda):
/// u_i = sum_j a_{i-j+1} e_{size-j+1}, v_i = sum_j b_{i-j+1} e_j.
inline ChainPair generate_parametric_chains_single(const Scalar& lambda, std::size_t size,
                                                   const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  if (size < 2 || size % 2 != 0) throw Error(ErrorKind::invalid_size, "block size must be even and >= 2");
  if (a.size() != size || b.size() != size)
    throw Error(ErrorKind::invalid_parameter, "need exactly " + std::to_string(size) + " coefficients each");
  if ((a[0] * b[0]).is_zero()) throw Error(ErrorKind::invalid_parameter, "a_1 b_1 must be nonzero");
  ChainPair c{lambda, {}, {}};
  for (std::size_t i = 1; i <= size; ++i) {
    Vector u(size), v(size);
    for (std::size_t j = 1; j <= i; ++j) {
      u[size - j] += a[i - j];
      v[j - 1] += b[i - j];
    }
    c.left.push_back(std::move(u));
    c.right.push_back(std::move(v));
  }
  return c;
}

/// Left chain drawn from the whole lambda-eigenspace of J_k(lambda) + J_k(lambda)
/// and a right chain of the same kind:
/// u_i = sum_j a_{i-j+1} e_{k-j+1} + b_{i-j+1} e_{2k-j+1},
/// v_i = sum_j c_{i-j+1} e_j + d_{i-j+1} e_{k+j}.
inline ChainPair generate_parametric_chains_two_blocks(const Scalar& lambda, std::size_t k,
                                                       const std::vector<Scalar>& a, const std::vector<Scalar>& b,
                                                       const std::vector<Scalar>& c, const std::vector<Scalar>& d) {
  if (k == 0) throw Error(ErrorKind::invalid_size, "k must be >= 1");
  if (a.size() != k || b.size() != k || c.size() != k || d.size() != k)
    throw Error(ErrorKind::invalid_parameter, "need exactly k coefficients in each family");
  Rational lead = (a[0].norm() + b[0].norm()) * (c[0].norm() + d[0].norm());
  if (sgn(lead) == 0) throw Error(ErrorKind::invalid_parameter, "leading left or right coefficients all zero");
  const std::size_t n = 2 * k;
  ChainPair out{lambda, {}, {}};
  for (std::size_t i = 1; i <= k; ++i) {
    Vector u(n), v(n);
    for (std::size_t j = 1; j <= i; ++j) {
      u[k - j] += a[i - j];
      u[n - j] += b[i - j];
      v[j - 1] += c[i - j];
      v[k + j - 1] += d[i - j];
    }
    out.left.push_back(std::move(u));
    out.right.push_back(std::move(v));
  }
  return out;
}

}  // namespace eigshift
