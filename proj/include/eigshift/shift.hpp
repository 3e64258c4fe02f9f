#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "eigshift/error.hpp"
#include "eigshift/jordan.hpp"
#include "eigshift/linalg.hpp"

namespace eigshift {

/// Rank-one shift A + (lambda1 - lambda0) v r^T. Uses the plain transpose of r.
template <typename T>
DenseMatrix<T> brauer_shift(const DenseMatrix<T>& a, const DenseVector<T>& v, const DenseVector<T>& r,
                            const T& lambda0, const T& lambda1) {
  using tr = scalar_traits<T>;
  if (!a.is_square() || v.dim() != a.rows() || r.dim() != a.rows())
    throw Error(ErrorKind::dimension_mismatch, "brauer_shift shapes");
  if (v.is_zero() || !(a * v - lambda0 * v).is_zero())
    throw Error(ErrorKind::invalid_parameter, "v is not an eigenvector for lambda0");
  T rv = tr::zero();
  for (std::size_t i = 0; i < v.dim(); ++i) rv += r[i] * v[i];
  if (!tr::is_zero(rv - tr::one())) throw Error(ErrorKind::normalization, "r^T v must equal 1");
  DenseMatrix<T> update(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) update(i, j) = v[i] * r[j];
  return a + (lambda1 - lambda0) * update;
}

/// R with R* V = I_k. Without `free` this is V (V*V)^{-1}; a free n x k matrix F
/// adds (I - V (V*V)^{-1} V*) F, which covers every right inverse.
template <typename T>
DenseMatrix<T> make_right_inverse(const DenseMatrix<T>& v, const std::optional<DenseMatrix<T>>& free = std::nullopt) {
  const std::size_t n = v.rows(), k = v.cols();
  if (k == 0) return DenseMatrix<T>(n, 0);
  if (exact_rank(v) != k)
    throw Error(ErrorKind::precondition, "matrix is rank deficient (needs full column rank " + std::to_string(k) + ")");
  const DenseMatrix<T> vs = v.conj_transpose();
  const DenseMatrix<T> gram_inv = inverse(vs * v);
  DenseMatrix<T> r = v * gram_inv;
  if (free) {
    if (free->rows() != n || free->cols() != k)
      throw Error(ErrorKind::dimension_mismatch, "free part must be " + v.shape());
    r += *free - v * (gram_inv * (vs * *free));
  }
  return r;
}

/// L with U* L = I_k; same construction as make_right_inverse.
template <typename T>
DenseMatrix<T> make_left_inverse(const DenseMatrix<T>& u, const std::optional<DenseMatrix<T>>& free = std::nullopt) {
  return make_right_inverse(u, free);
}

template <typename T>
struct BasicShiftPlan {
  T lambda0;
  T lambda1;
  std::size_t k = 0;
  DenseMatrix<T> u;  // n x k, columns u_1..u_k
  DenseMatrix<T> v;  // n x k, columns v_1..v_k
  DenseMatrix<T> r;  // n x k, R* V = I_k
  DenseMatrix<T> l;  // n x k, U* L = I_k
  struct Middle {
    DenseVector<T> v_mid;  // v_{k+1}
    DenseVector<T> r;      // u_{k+1} / (v_{k+1}* u_{k+1})
  };
  std::optional<Middle> middle;  // present iff the multiplicity is odd
  BasicChainPair<T> chain;       // the full chain pair that was shifted

  std::size_t multiplicity() const { return 2 * k + (middle ? 1 : 0); }
};
using ShiftPlan = BasicShiftPlan<Scalar>;

template <typename T>
struct BasicShiftResult {
  DenseMatrix<T> a_hat;
  BasicShiftPlan<T> plan;
  DenseMatrix<T> r1;
  DenseMatrix<T> r2;
  DenseMatrix<T> a;  // the matrix before the shift
};
using ShiftResult = BasicShiftResult<Scalar>;

namespace detail {

template <typename T>
bool is_identity(const DenseMatrix<T>& m) {
  return (m - DenseMatrix<T>::identity(m.rows())).is_zero();
}

template <typename T>
std::size_t nullity(const DenseMatrix<T>& m) {
  return m.cols() - exact_rank(m);
}

// The shifted eigenvalue has to be carried by a single Jordan block of size
// m: one eigenvector, and the generalized eigenspace has dimension m.
template <typename T>
void require_single_block(const DenseMatrix<T>& a, const T& lambda0, std::size_t m) {
  const DenseMatrix<T> d = shifted(a, lambda0);
  if (nullity(d) != 1)
    throw Error(ErrorKind::precondition, "lambda0 must have geometric multiplicity 1 (found " +
                                             std::to_string(nullity(d)) + ")");
  const DenseMatrix<T> dm = power(d, m);
  if (nullity(dm) != m || nullity(dm * d) != m)
    throw Error(ErrorKind::precondition, "lambda0 must have algebraic multiplicity " + std::to_string(m) +
                                             " equal to the chain length");
}

template <typename T>
void require_chain(const DenseMatrix<T>& a, const BasicChainPair<T>& chain) {
  if (!a.is_square()) throw Error(ErrorKind::dimension_mismatch, "shift needs a square matrix");
  if (chain.left.size() != chain.right.size())
    throw Error(ErrorKind::invalid_chain, "left and right chains differ in length");
  if (auto bad = right_chain_violation(a, chain.lambda, chain.right))
    throw Error(ErrorKind::invalid_chain, "right chain recurrence fails at v_" + std::to_string(*bad + 1));
  if (auto bad = left_chain_violation(a, chain.lambda, chain.left))
    throw Error(ErrorKind::invalid_chain, "left chain recurrence fails at u_" + std::to_string(*bad + 1));
}

template <typename T>
DenseMatrix<T> leading_columns(const std::vector<DenseVector<T>>& vs, std::size_t k, std::size_t n) {
  DenseMatrix<T> m(n, k);
  for (std::size_t j = 0; j < k; ++j) m.set_col(j, vs[j]);
  return m;
}

template <typename T>
void require_inverses(const BasicShiftPlan<T>& plan) {
  const std::size_t n = plan.v.rows(), k = plan.k;
  if (plan.r.rows() != n || plan.r.cols() != k || plan.l.rows() != n || plan.l.cols() != k)
    throw Error(ErrorKind::dimension_mismatch, "R and L must be " + std::to_string(n) + "x" + std::to_string(k));
  if (k == 0) return;
  if (!is_identity(plan.r.conj_transpose() * plan.v))
    throw Error(ErrorKind::precondition, "R* V != I_k");
  if (!is_identity(plan.u.conj_transpose() * plan.l))
    throw Error(ErrorKind::precondition, "U* L != I_k");
}

template <typename T>
BasicShiftResult<T> assemble(const DenseMatrix<T>& a, BasicShiftPlan<T> plan) {
  DenseMatrix<T> r1 = hstack(plan.v, plan.middle ? as_column(plan.middle->v_mid) : DenseMatrix<T>(a.rows(), 0));
  r1 = hstack(r1, plan.l);
  DenseMatrix<T> r2 = hstack(plan.r, plan.middle ? as_column(plan.middle->r) : DenseMatrix<T>(a.rows(), 0));
  r2 = hstack(r2, plan.u);
  DenseMatrix<T> a_hat = a;
  if (r1.cols() > 0) a_hat += (plan.lambda1 - plan.lambda0) * (r1 * r2.conj_transpose());
  return BasicShiftResult<T>{std::move(a_hat), std::move(plan), std::move(r1), std::move(r2), a};
}

}  // namespace detail

/// Shift of an eigenvalue whose single Jordan block has even size 2k:
/// A + (lambda1 - lambda0) [V L][R U]*, with U, V the first k chain vectors.
template <typename T>
BasicShiftResult<T> shift_even(const DenseMatrix<T>& a, const BasicChainPair<T>& chain, const T& lambda1,
                               const DenseMatrix<T>& r, const DenseMatrix<T>& l) {
  detail::require_chain(a, chain);
  const std::size_t m = chain.right.size();
  if (m == 0 || m % 2 != 0) throw Error(ErrorKind::invalid_chain, "even shift needs a chain of even length");
  detail::require_single_block(a, chain.lambda, m);
  BasicShiftPlan<T> plan;
  plan.lambda0 = chain.lambda;
  plan.lambda1 = lambda1;
  plan.k = m / 2;
  plan.u = detail::leading_columns(chain.left, plan.k, a.rows());
  plan.v = detail::leading_columns(chain.right, plan.k, a.rows());
  plan.r = r;
  plan.l = l;
  plan.chain = chain;
  detail::require_inverses(plan);
  return detail::assemble(a, std::move(plan));
}

/// Shift of an eigenvalue whose single Jordan block has odd size 2k+1:
/// A + (lambda1 - lambda0) [V v_{k+1} L][R r U]*, r = u_{k+1}/(v_{k+1}* u_{k+1}).
template <typename T>
BasicShiftResult<T> shift_odd(const DenseMatrix<T>& a, const BasicChainPair<T>& chain, const T& lambda1,
                              const DenseMatrix<T>& r, const DenseMatrix<T>& l) {
  detail::require_chain(a, chain);
  const std::size_t m = chain.right.size();
  if (m % 2 != 1) throw Error(ErrorKind::invalid_chain, "odd shift needs a chain of odd length");
  detail::require_single_block(a, chain.lambda, m);
  BasicShiftPlan<T> plan;
  plan.lambda0 = chain.lambda;
  plan.lambda1 = lambda1;
  plan.k = m / 2;
  plan.u = detail::leading_columns(chain.left, plan.k, a.rows());
  plan.v = detail::leading_columns(chain.right, plan.k, a.rows());
  plan.r = r;
  plan.l = l;
  plan.chain = chain;
  const DenseVector<T>& v_mid = chain.right[plan.k];
  const DenseVector<T>& u_mid = chain.left[plan.k];
  const T norm = inner(v_mid, u_mid);
  if (scalar_traits<T>::is_zero(norm)) throw Error(ErrorKind::invalid_chain, "v_{k+1}* u_{k+1} vanishes");
  plan.middle = typename BasicShiftPlan<T>::Middle{v_mid, (scalar_traits<T>::one() / norm) * u_mid};
  detail::require_inverses(plan);
  return detail::assemble(a, std::move(plan));
}

/// Dispatches on the parity of the chain; R and L default to the minimal inverses.
template <typename T>
BasicShiftResult<T> shift_chain(const DenseMatrix<T>& a, const BasicChainPair<T>& chain, const T& lambda1,
                                const std::optional<DenseMatrix<T>>& r_free = std::nullopt,
                                const std::optional<DenseMatrix<T>>& l_free = std::nullopt) {
  const std::size_t k = chain.right.size() / 2;
  if (chain.left.size() != chain.right.size())
    throw Error(ErrorKind::invalid_chain, "left and right chains differ in length");
  const DenseMatrix<T> v = detail::leading_columns(chain.right, k, a.rows());
  const DenseMatrix<T> u = detail::leading_columns(chain.left, k, a.rows());
  const DenseMatrix<T> r = make_right_inverse(v, r_free);
  const DenseMatrix<T> l = make_left_inverse(u, l_free);
  if (chain.right.size() % 2 == 0) return shift_even(a, chain, lambda1, r, l);
  return shift_odd(a, chain, lambda1, r, l);
}

/// Â V = V J_k(lambda1) and U* Â = J_k(lambda1)^T U*.
template <typename T>
bool half_chain_invariance(const BasicShiftResult<T>& s) {
  const auto& p = s.plan;
  if (p.k == 0) return true;
  const DenseMatrix<T> jk = jordan_block(p.lambda1, p.k);
  const bool right = (s.a_hat * p.v - p.v * jk).is_zero();
  const DenseMatrix<T> us = p.u.conj_transpose();
  const bool left = (us * s.a_hat - jk.transpose() * us).is_zero();
  return right && left;
}

/// det(Â - t I)(lambda0 - t)^m == det(A - t I)(lambda1 - t)^m as polynomials in
/// t. Both sides have degree n + m, so agreement at n + m + 1 distinct points
/// is a complete identity test. Exact backend only.
inline bool charpoly_ratio_check(const Matrix& a, const Matrix& a_hat, const Scalar& lambda0, const Scalar& lambda1,
                                 std::size_t m) {
  if (!a.is_square() || a.rows() != a_hat.rows() || a.cols() != a_hat.cols())
    throw Error(ErrorKind::dimension_mismatch, "charpoly check on " + a.shape() + " and " + a_hat.shape());
  const std::size_t n = a.rows();
  for (std::size_t s = 0; s <= n + m; ++s) {
    const Scalar t(static_cast<long>(s));
    Scalar lhs = determinant(shifted(a_hat, t));
    Scalar rhs = determinant(shifted(a, t));
    const Scalar f0 = lambda0 - t, f1 = lambda1 - t;
    for (std::size_t e = 0; e < m; ++e) {
      lhs *= f0;
      rhs *= f1;
    }
    if (lhs != rhs) return false;
  }
  return true;
}

}  // namespace eigshift
