#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "eigshift/eigenstructure.hpp"
#include "eigshift/random.hpp"

namespace eigshift {

/// A synthesized matrix, the chain pair of its first block and a shift of it.
struct ShiftInstance {
  SegreCharacteristic segre;  // structure before the shift; block 0 is shifted
  SynthesizedMatrix syn;
  ChainPair chain;
  Scalar lambda1;
  ShiftResult shift;
  SegreCharacteristic untouched;
  std::vector<Scalar> eigenvalues_after;
};

struct InstanceOptions {
  std::size_t max_extra = 2;  // total size of the other blocks
  long basis_bound = 3;
  bool off_block_free = true;  // let R and L reach outside the shifted block
};

namespace detail {

inline Scalar fresh_eigenvalue(RandomSource& rng, const std::vector<Scalar>& avoid) {
  while (true) {
    Scalar s = rng.rational(4, 2);
    bool clash = false;
    for (const auto& a : avoid) clash = clash || a == s;
    if (!clash) return s;
  }
}

// Block 0 has size m at lambda0; the others carry one fresh eigenvalue.
inline ShiftInstance synthesize(RandomSource& rng, std::size_t m, const InstanceOptions& opt) {
  ShiftInstance inst;
  const Scalar l0 = fresh_eigenvalue(rng, {});
  inst.lambda1 = fresh_eigenvalue(rng, {l0});
  std::vector<SegreBlock> blocks{{l0, m}};
  const std::size_t extra = opt.max_extra ? rng.index(0, opt.max_extra) : 0;
  if (extra > 0) {
    const Scalar mu = fresh_eigenvalue(rng, {l0, inst.lambda1});
    std::size_t left = extra;
    while (left > 0) {
      const std::size_t s = rng.index(1, left);
      blocks.push_back({mu, s});
      left -= s;
    }
  }
  inst.segre = SegreCharacteristic(blocks);
  inst.syn = build_matrix(inst.segre, rng.unimodular(inst.segre.total_size(), opt.basis_bound));
  inst.chain = inst.syn.chains[0];
  std::vector<Scalar> h{rng.nonzero_rational(3, 2)};
  for (std::size_t i = 1; i < m; ++i) h.push_back(rng.rational(3, 2));
  inst.chain.left = left_chain_from_hankel(inst.syn.basis_inv, 0, h);
  inst.untouched = inst.segre.without(l0);
  inst.eigenvalues_after = {inst.lambda1};
  for (std::size_t b = 1; b < blocks.size(); ++b) inst.eigenvalues_after.push_back(blocks[b].eigenvalue);
  return inst;
}

// Free part for R or L: zero on the columns of other blocks unless allowed.
inline Matrix free_part(RandomSource& rng, const ShiftInstance& inst, std::size_t k, bool off_block) {
  const std::size_t n = inst.segre.total_size(), m = inst.chain.right.size();
  Matrix f = rng.rational_matrix(n, k, 2, 2);
  if (!off_block) {
    // keep only components inside the shifted block: f = P [f_block; 0]
    Matrix coords = inst.syn.basis_inv * f;
    for (std::size_t i = m; i < n; ++i)
      for (std::size_t j = 0; j < k; ++j) coords(i, j) = Scalar(0);
    f = inst.syn.basis * coords;
  }
  return f;
}

}  // namespace detail

/// Random shift of a block of size m with random free parts in R and L.
inline ShiftInstance random_shift_instance(RandomSource& rng, std::size_t m, const InstanceOptions& opt = {}) {
  ShiftInstance inst = detail::synthesize(rng, m, opt);
  const std::size_t k = m / 2;
  std::optional<Matrix> rf, lf;
  if (rng.coin(0.75)) rf = detail::free_part(rng, inst, k, opt.off_block_free && rng.coin());
  if (rng.coin(0.75)) lf = detail::free_part(rng, inst, k, opt.off_block_free && rng.coin());
  inst.shift = shift_chain(inst.syn.a, inst.chain, inst.lambda1, rf, lf);
  return inst;
}

namespace detail {

// Rows [from, from+count) of P* U: the Hankel factor Q in U = P^{-*} [0; Q].
inline Matrix hankel_factor(const ShiftInstance& inst, std::size_t k, std::size_t from) {
  Matrix u = leading_columns(inst.chain.left, k, inst.segre.total_size());
  return (inst.syn.basis.conj_transpose() * u).block(from, 0, k, k);
}

// R = P^{-*} [I_k; S1*; 0] and L = P [S2; Q^{-*}; 0] in block coordinates.
inline std::pair<Matrix, Matrix> inverses_from_parameters(const ShiftInstance& inst, const Matrix& s1,
                                                          const Matrix& s2, const Matrix& q) {
  const std::size_t n = inst.segre.total_size(), k = q.rows();
  Matrix rc(n, k), lc(n, k);
  rc.set_block(0, 0, Matrix::identity(k));
  rc.set_block(k, 0, s1.conj_transpose());
  lc.set_block(0, 0, s2);
  lc.set_block(s2.rows(), 0, inverse(q).conj_transpose());
  return {inst.syn.basis_inv.conj_transpose() * rc, inst.syn.basis * lc};
}

}  // namespace detail

/// Even shift whose canonical block has coupling exactly `c`: the free
/// parameters are solved from C = E_{k,1} + (lambda1 - lambda0)(S1 + S2 Q*).
inline ShiftInstance realize_even(RandomSource& rng, const Matrix& c, const InstanceOptions& opt = {}) {
  const std::size_t k = c.rows();
  ShiftInstance inst = detail::synthesize(rng, 2 * k, opt);
  const Scalar delta = inst.lambda1 - inst.chain.lambda;
  const Matrix q = detail::hankel_factor(inst, k, k);
  const Matrix s2 = rng.rational_matrix(k, k, 2, 2);
  Matrix e = c;
  e(k - 1, 0) -= Scalar(1);
  const Matrix s1 = (Scalar(1) / delta) * e - s2 * q.conj_transpose();
  auto [r, l] = detail::inverses_from_parameters(inst, s1, s2, q);
  inst.shift = shift_even(inst.syn.a, inst.chain, inst.lambda1, r, l);
  if (!(extract_even_canonical(inst.shift, inst.syn.basis).form.c == c))
    throw Error(ErrorKind::internal, "even realization missed its target coupling");
  return inst;
}

/// Odd shift whose canonical block is exactly (a, b, C). The map from
/// (S1, S2) to (a, b, C) is affine; its offset is read from the shift with
/// S1 = S2 = 0.
inline ShiftInstance realize_odd(RandomSource& rng, const OddCanonical& target, const InstanceOptions& opt = {}) {
  const std::size_t k = target.k;
  ShiftInstance inst = detail::synthesize(rng, 2 * k + 1, opt);
  const Scalar delta = inst.lambda1 - inst.chain.lambda;
  const Scalar inv = Scalar(1) / delta;
  const Matrix q = detail::hankel_factor(inst, k, k + 1);
  auto [r0, l0] = detail::inverses_from_parameters(inst, Matrix(k, k + 1), Matrix(k + 1, k), q);
  const OddCanonical base =
      extract_odd_canonical(shift_odd(inst.syn.a, inst.chain, inst.lambda1, r0, l0), inst.syn.basis).form;
  // b picks up the last row of S2 Q*, C the leading rows
  Matrix s2 = rng.rational_matrix(k + 1, k, 2, 2);
  Matrix db(1, k);
  for (std::size_t j = 0; j < k; ++j) db(0, j) = inv * (target.b[j] - base.b[j]);
  s2.set_block(k, 0, db * inverse(q.conj_transpose()));
  Matrix s1(k, k + 1);
  const Matrix rest = inv * (target.c - base.c) - s2.block(0, 0, k, k) * q.conj_transpose();
  for (std::size_t i = 0; i < k; ++i) {
    s1(i, 0) = inv * (target.a[i] - base.a[i]);
    for (std::size_t j = 0; j < k; ++j) s1(i, j + 1) = rest(i, j);
  }
  auto [r, l] = detail::inverses_from_parameters(inst, s1, s2, q);
  inst.shift = shift_odd(inst.syn.a, inst.chain, inst.lambda1, r, l);
  const OddCanonical got = extract_odd_canonical(inst.shift, inst.syn.basis).form;
  if (!(got.a == target.a) || !(got.b == target.b) || !(got.c == target.c))
    throw Error(ErrorKind::internal, "odd realization missed its target block");
  return inst;
}

/// Random coupling C of size k in the requested even case (Even2 needs k >= 2).
inline Matrix even_target(RandomSource& rng, CaseLabel label, std::size_t k) {
  Matrix c = rng.integer_matrix(k, k, 2);
  switch (label) {
    case CaseLabel::Even1:
      for (std::size_t i = 0; i < k; ++i) c(i, 0) = Scalar(0);
      break;
    case CaseLabel::Even2:
      if (k < 2) throw Error(ErrorKind::invalid_size, "Even2 needs k >= 2");
      c(k - 1, 0) = Scalar(0);
      if (c(0, 0).is_zero()) c(0, 0) = rng.nonzero_rational(2, 1);
      break;
    case CaseLabel::Even3:
      if (c(k - 1, 0).is_zero()) c(k - 1, 0) = rng.nonzero_rational(2, 1);
      break;
    default:
      throw Error(ErrorKind::invalid_parameter, "not an even case label");
  }
  return c;
}

/// Smallest k for which an odd case label can occur.
inline std::size_t odd_label_min_k(CaseLabel label) {
  switch (label) {
    case CaseLabel::Odd0: return 0;
    case CaseLabel::Odd2b:
    case CaseLabel::Odd4b: return 2;
    default: return 1;
  }
}

/// Random (a, b, C) of size k whose concentrated form falls in `label`: a_k
/// and b_1 are fixed first, then the last row of C is adjusted so that the
/// concentrated last row has the wanted leading zeros.
inline OddCanonical odd_target(RandomSource& rng, CaseLabel label, std::size_t k) {
  if (k < odd_label_min_k(label)) throw Error(ErrorKind::invalid_size, "k too small for this case");
  OddCanonical oc{k, Scalar(0), Vector(k), Vector(k), rng.integer_matrix(k, k, 2)};
  if (k == 0) return oc;
  for (std::size_t i = 0; i < k; ++i) {
    oc.a[i] = rng.small_integer(2);
    oc.b[i] = rng.small_integer(2);
  }
  bool b1 = false, ak = false;
  std::optional<std::size_t> lead;  // zero-based index of the first nonzero entry
  switch (label) {
    case CaseLabel::Odd1a: b1 = ak = true; lead = rng.index(0, k - 1); break;
    case CaseLabel::Odd1b: b1 = ak = true; break;
    case CaseLabel::Odd2a: ak = true; lead = k - 1; break;
    case CaseLabel::Odd2b: ak = true; lead = rng.index(0, k - 2); break;
    case CaseLabel::Odd2c: ak = true; break;
    case CaseLabel::Odd3a: b1 = true; lead = rng.index(0, k - 1); break;
    case CaseLabel::Odd3b: b1 = true; break;
    case CaseLabel::Odd4a: lead = 0; break;
    case CaseLabel::Odd4b: lead = rng.index(1, k - 1); break;
    case CaseLabel::Odd4c: break;
    default: throw Error(ErrorKind::invalid_parameter, "not an odd case label");
  }
  oc.a[k - 1] = ak ? rng.nonzero_rational(2, 1) : Scalar(0);
  oc.b[0] = b1 ? rng.nonzero_rational(2, 1) : Scalar(0);
  Vector want(k);
  if (lead) {
    want[*lead] = rng.nonzero_rational(2, 1);
    for (std::size_t j = *lead + 1; j < k; ++j) want[j] = rng.small_integer(2);
  }
  const ConcentratedForm cf = reduce_to_concentrated(oc);
  for (std::size_t j = 0; j < k; ++j) oc.c(k - 1, j) += want[j] - cf.last_row[j];
  return oc;
}

}  // namespace eigshift
