#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eigshift/error.hpp"
#include "eigshift/jordan.hpp"
#include "eigshift/linalg.hpp"

namespace eigshift {

/// x_{i,j} = u_i* v_j for a left family u and a right family v.
template <typename T>
struct BasicGramTable {
  DenseMatrix<T> x;

  std::size_t p() const { return x.rows(); }
  std::size_t q() const { return x.cols(); }
  /// One-based access, matching the usual x_{i,j} indexing.
  const T& at(std::size_t i, std::size_t j) const { return x(i - 1, j - 1); }
};
using GramTable = BasicGramTable<Scalar>;

template <typename T>
BasicGramTable<T> gram_table(const std::vector<DenseVector<T>>& left, const std::vector<DenseVector<T>>& right) {
  BasicGramTable<T> table{DenseMatrix<T>(left.size(), right.size())};
  for (std::size_t i = 0; i < left.size(); ++i)
    for (std::size_t j = 0; j < right.size(); ++j) table.x(i, j) = inner(left[i], right[j]);
  return table;
}

/// One-based position of the first entry that breaks a pattern.
struct PatternViolation {
  std::size_t i = 0;
  std::size_t j = 0;
  std::string what;
};

struct PatternCheck {
  bool ok = true;
  std::optional<PatternViolation> violation;

  explicit operator bool() const { return ok; }
};

namespace detail {
inline PatternCheck violated(std::size_t i, std::size_t j, std::string what) {
  return PatternCheck{false, PatternViolation{i, j, std::move(what)}};
}
}  // namespace detail

/// Lower triangular Hankel shape: zero for i+j <= max(p, q) and constant on
/// every anti-diagonal.
template <typename T>
PatternCheck check_hankel(const BasicGramTable<T>& t) {
  const std::size_t p = t.p(), q = t.q();
  const std::size_t bound = std::max(p, q);
  for (std::size_t i = 1; i <= p; ++i) {
    for (std::size_t j = 1; j <= q; ++j) {
      if (i + j <= bound && !scalar_traits<T>::is_zero(t.at(i, j)))
        return detail::violated(i, j, "nonzero inside the leading anti-triangle");
      if (i >= 2 && j + 1 <= q && !scalar_traits<T>::is_zero(t.at(i - 1, j + 1) - t.at(i, j)))
        return detail::violated(i, j, "differs from entry (" + std::to_string(i - 1) + "," +
                                          std::to_string(j + 1) + ") on the same anti-diagonal");
    }
  }
  return {};
}

template <typename T>
PatternCheck check_all_zero(const BasicGramTable<T>& t) {
  for (std::size_t i = 1; i <= t.p(); ++i)
    for (std::size_t j = 1; j <= t.q(); ++j)
      if (!scalar_traits<T>::is_zero(t.at(i, j))) return detail::violated(i, j, "nonzero entry");
  return {};
}

/// Parity specialisations of the same-eigenvalue vanishing pattern. Returns
/// nullopt when p and q have different parity (no statement applies).
template <typename T>
std::optional<PatternCheck> check_parity_vanishing(const BasicGramTable<T>& t) {
  const std::size_t p = t.p(), q = t.q();
  auto zero = [&](std::size_t i, std::size_t j) { return scalar_traits<T>::is_zero(t.at(i, j)); };
  if (p % 2 == 0 && q % 2 == 0) {
    for (std::size_t i = 1; i <= p / 2; ++i)
      for (std::size_t j = 1; j <= q / 2; ++j)
        if (!zero(i, j)) return detail::violated(i, j, "even case: leading quarter must vanish");
    return PatternCheck{};
  }
  if (p % 2 == 1 && q % 2 == 1) {
    const std::size_t hp = (p - 1) / 2, hq = (q - 1) / 2;
    for (std::size_t i = 1; i <= hp; ++i)
      for (std::size_t j = 1; j <= hq; ++j) {
        if (!zero(i, j)) return detail::violated(i, j, "odd case: leading block must vanish");
        if (!zero(hp + 1, j)) return detail::violated(hp + 1, j, "odd case: middle row must vanish");
        if (!zero(i, hq + 1)) return detail::violated(i, hq + 1, "odd case: middle column must vanish");
      }
    return PatternCheck{};
  }
  return std::nullopt;
}

/// u_m* v_m for the middle index m = (p+1)/2 of an odd chain pair; zero means
/// the vectors cannot be genuine chains of one block.
template <typename T>
T middle_product_nonzero(const std::vector<DenseVector<T>>& left, const std::vector<DenseVector<T>>& right) {
  if (left.size() != right.size() || left.size() % 2 == 0)
    throw Error(ErrorKind::invalid_parameter, "middle product needs two odd chains of equal length");
  const std::size_t mid = left.size() / 2;
  T x = inner(left[mid], right[mid]);
  if (scalar_traits<T>::is_zero(x)) throw Error(ErrorKind::invalid_chain, "middle inner product vanishes");
  return x;
}

namespace detail {

template <typename T>
DenseMatrix<T> resolvent_operand(const DenseMatrix<T>& a, const T& lambda) {
  DenseMatrix<T> shifted_a = shifted(a, lambda);
  if (exact_rank(shifted_a) != a.rows())
    throw Error(ErrorKind::singular, "singular resolvent: lambda " + scalar_traits<T>::to_string(lambda) +
                                         " is an eigenvalue");
  return shifted_a;
}

// sum_{j<=i} (-1)^{i-j} w_j / d^{i-j+1}, i one-based.
template <typename T>
DenseVector<T> resolvent_closed_form(const std::vector<DenseVector<T>>& chain, std::size_t i, const T& d) {
  DenseVector<T> out(chain.front().dim());
  T denom = d;
  for (std::size_t j = i; j >= 1; --j) {
    T coef = scalar_traits<T>::one() / denom;
    if ((i - j) % 2 == 1) coef = -coef;
    out += coef * chain[j - 1];
    denom *= d;
  }
  return out;
}

}  // namespace detail

/// (A - lambda I)^{-1} v_i, computed by an exact solve and cross-checked
/// against the chain expansion in powers of 1/(lambda0 - lambda).
template <typename T>
DenseVector<T> resolvent_apply_right(const DenseMatrix<T>& a, const T& lambda, const BasicChainPair<T>& chain,
                                     std::size_t i) {
  if (i == 0 || i > chain.right.size()) throw Error(ErrorKind::invalid_parameter, "chain index out of range");
  DenseVector<T> x = solve(detail::resolvent_operand(a, lambda), chain.right[i - 1]);
  DenseVector<T> closed = detail::resolvent_closed_form(chain.right, i, chain.lambda - lambda);
  if (!(x - closed).is_zero())
    throw Error(ErrorKind::invalid_chain, "resolvent of v_" + std::to_string(i) + " disagrees with the chain expansion");
  return x;
}

/// The vector w with w* = u_i* (A - lambda I)^{-1}, cross-checked the same way.
template <typename T>
DenseVector<T> resolvent_apply_left(const DenseMatrix<T>& a, const T& lambda, const BasicChainPair<T>& chain,
                                    std::size_t i) {
  if (i == 0 || i > chain.left.size()) throw Error(ErrorKind::invalid_parameter, "chain index out of range");
  DenseMatrix<T> op = detail::resolvent_operand(a, lambda).conj_transpose();
  DenseVector<T> w = solve(op, chain.left[i - 1]);
  DenseVector<T> closed =
      detail::resolvent_closed_form(chain.left, i, scalar_traits<T>::conj(chain.lambda - lambda));
  if (!(w - closed).is_zero())
    throw Error(ErrorKind::invalid_chain, "resolvent of u_" + std::to_string(i) + " disagrees with the chain expansion");
  return w;
}

/// u_i* (A - lambda I)^{-1} v_j = 0 for all i + j <= p.
template <typename T>
bool resolvent_orthogonality_check(const DenseMatrix<T>& a, const BasicChainPair<T>& chain, const T& lambda) {
  const std::size_t p = std::min(chain.left.size(), chain.right.size());
  if (p < 2) {
    detail::resolvent_operand(a, lambda);
    return true;
  }
  DenseMatrix<T> op = detail::resolvent_operand(a, lambda);
  for (std::size_t j = 1; j < p; ++j) {
    DenseVector<T> x = solve(op, chain.right[j - 1]);
    for (std::size_t i = 1; i + j <= p; ++i)
      if (!scalar_traits<T>::is_zero(inner(chain.left[i - 1], x))) return false;
  }
  return true;
}

}  // namespace eigshift
