#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "eigshift/error.hpp"
#include "eigshift/jordan.hpp"
#include "eigshift/linalg.hpp"
#include "eigshift/oracle.hpp"
#include "eigshift/shift.hpp"

namespace eigshift {

using Cycle = std::vector<Vector>;

/// T = [[J_k(lambda), C], [0, J_k(lambda)]].
struct EvenCanonical {
  std::size_t k = 0;
  Scalar lambda;
  Matrix c;

  Matrix t() const {
    Matrix m(2 * k, 2 * k);
    m.set_block(0, 0, jordan_block(lambda, k));
    m.set_block(0, k, c);
    m.set_block(k, k, jordan_block(lambda, k));
    return m;
  }
};

/// S = [[J_k(lambda), a, C], [0, lambda, b^T], [0, 0, J_k(lambda)]].
struct OddCanonical {
  std::size_t k = 0;
  Scalar lambda;
  Vector a;
  Vector b;
  Matrix c;

  Matrix s() const {
    Matrix m(2 * k + 1, 2 * k + 1);
    if (k > 0) {
      m.set_block(0, 0, jordan_block(lambda, k));
      m.set_block(k + 1, k + 1, jordan_block(lambda, k));
      m.set_block(0, k + 1, c);
    }
    m(k, k) = lambda;
    for (std::size_t i = 0; i < k; ++i) {
      m(i, k) = a[i];
      m(k, k + 1 + i) = b[i];
    }
    return m;
  }
};

/// S~ = Y S Y^{-1} with a~ = a_k e_k, b~ = b_1 e_1 and C~ zero outside its last row.
struct ConcentratedForm {
  std::size_t k = 0;
  Scalar lambda;
  Scalar a_k;
  Scalar b_1;
  Vector last_row;  // c~_{k,1..k}
  Matrix transform;  // Y

  OddCanonical as_odd() const {
    OddCanonical oc{k, lambda, Vector(k), Vector(k), Matrix(k, k)};
    if (k > 0) {
      oc.a[k - 1] = a_k;
      oc.b[0] = b_1;
      for (std::size_t j = 0; j < k; ++j) oc.c(k - 1, j) = last_row[j];
    }
    return oc;
  }
  Matrix s_tilde() const { return as_odd().s(); }
};

enum class CaseLabel { Even1, Even2, Even3, Odd0, Odd1a, Odd1b, Odd2a, Odd2b, Odd2c, Odd3a, Odd3b, Odd4a, Odd4b, Odd4c };

inline const char* to_string(CaseLabel c) {
  switch (c) {
    case CaseLabel::Even1: return "Even1";
    case CaseLabel::Even2: return "Even2";
    case CaseLabel::Even3: return "Even3";
    case CaseLabel::Odd0: return "Odd0";
    case CaseLabel::Odd1a: return "Odd1a";
    case CaseLabel::Odd1b: return "Odd1b";
    case CaseLabel::Odd2a: return "Odd2a";
    case CaseLabel::Odd2b: return "Odd2b";
    case CaseLabel::Odd2c: return "Odd2c";
    case CaseLabel::Odd3a: return "Odd3a";
    case CaseLabel::Odd3b: return "Odd3b";
    case CaseLabel::Odd4a: return "Odd4a";
    case CaseLabel::Odd4b: return "Odd4b";
    case CaseLabel::Odd4c: return "Odd4c";
  }
  return "unknown";
}

/// Where the surfaced cycles came from.
enum class CycleSource { closed_form, corrected_closed_form, rank_fallback };

inline const char* to_string(CycleSource s) {
  switch (s) {
    case CycleSource::closed_form: return "closed-form";
    case CycleSource::corrected_closed_form: return "corrected-closed-form";
    case CycleSource::rank_fallback: return "rank-fallback";
  }
  return "unknown";
}

struct StructurePrediction {
  SegreCharacteristic segre;              // authoritative structure at lambda
  SegreCharacteristic closed_form_segre;  // what the case analysis alone says
  CaseLabel case_label = CaseLabel::Even1;
  Scalar lambda;
  Matrix canonical;  // the matrix the cycles are chains of
  std::vector<Cycle> cycles;
  CycleSource source = CycleSource::closed_form;
  std::vector<std::string> diagnostics;

  bool closed_form_agrees() const { return segre == closed_form_segre; }
};

/// Literal eigenspace basis from the case statement, next to an exact null
/// space of the canonical matrix.
struct EigenspaceReport {
  std::vector<Vector> literal;
  std::vector<Vector> exact;
  bool agrees = false;
};

namespace detail {

inline Vector unit_k(std::size_t k, long j) {
  Vector e(k);
  if (j >= 1 && static_cast<std::size_t>(j) <= k) e[static_cast<std::size_t>(j) - 1] = Scalar(1);
  return e;
}

// N_k with N_k^T = lambda I - J_k(lambda), i.e. N_k e_j = -e_{j+1}.
inline Matrix n_k(std::size_t k) {
  Matrix n(k, k);
  for (std::size_t j = 0; j + 1 < k; ++j) n(j + 1, j) = Scalar(-1);
  return n;
}

inline Vector stack(std::initializer_list<Vector> parts) {
  std::size_t dim = 0;
  for (const Vector& p : parts) dim += p.dim();
  Vector out(dim);
  std::size_t at = 0;
  for (const Vector& p : parts)
    for (std::size_t i = 0; i < p.dim(); ++i) out[at++] = p[i];
  return out;
}

inline Vector scalar_vec(const Scalar& s) {
  Vector v(1);
  v[0] = s;
  return v;
}

inline SegreCharacteristic sizes_segre(const Scalar& lambda, std::vector<std::size_t> sizes) {
  std::vector<SegreBlock> blocks;
  for (auto s : sizes)
    if (s > 0) blocks.push_back(SegreBlock{lambda, s});
  return SegreCharacteristic(std::move(blocks)).canonical();
}

inline std::string sizes_string(const SegreCharacteristic& s, const Scalar& lambda) {
  std::string out = "[";
  auto sizes = s.sizes_at(lambda);
  for (std::size_t i = 0; i < sizes.size(); ++i) out += (i ? "," : "") + std::to_string(sizes[i]);
  return out + "]";
}

inline SegreCharacteristic cycles_segre(const Scalar& lambda, const std::vector<Cycle>& cycles) {
  std::vector<std::size_t> sizes;
  for (const auto& c : cycles) sizes.push_back(c.size());
  return sizes_segre(lambda, sizes);
}

inline void sort_cycles(std::vector<Cycle>& cycles) {
  std::stable_sort(cycles.begin(), cycles.end(), [](const Cycle& a, const Cycle& b) { return a.size() > b.size(); });
}

// Accepts the first candidate family whose cycles are a full Jordan basis
// matching its claimed structure; otherwise falls back to rank sequences.
struct Candidate {
  CycleSource source;
  std::function<std::vector<Cycle>()> build;
};

inline void settle(StructurePrediction& p, const std::vector<Candidate>& candidates) {
  const std::size_t dim = p.canonical.rows();
  for (const auto& cand : candidates) {
    std::vector<Cycle> cycles;
    try {
      cycles = cand.build();
    } catch (const Error& e) {
      p.diagnostics.push_back(std::string(to_string(cand.source)) + " cycles could not be built: " + e.what());
      continue;
    }
    const CycleCheck check = verify_cycles(p.canonical, p.lambda, cycles);
    if (check.ok(dim) && cycles_segre(p.lambda, cycles) == p.closed_form_segre) {
      sort_cycles(cycles);
      p.cycles = std::move(cycles);
      p.segre = p.closed_form_segre;
      p.source = cand.source;
      return;
    }
    std::string why = check.detail;
    if (why.empty()) why = check.total == dim ? "cycle lengths do not match the claimed structure" : "too few vectors";
    p.diagnostics.push_back(std::string(to_string(cand.source)) + " cycles rejected (" + to_string(p.case_label) +
                            "): " + why);
  }
  const auto profile = weyr_profile(p.canonical, p.lambda);
  p.segre = sizes_segre(p.lambda, profile.block_sizes());
  p.cycles = jordan_cycles(p.canonical, p.lambda);
  p.source = CycleSource::rank_fallback;
  const CycleCheck check = verify_cycles(p.canonical, p.lambda, p.cycles);
  if (!check.ok(dim))
    throw Error(ErrorKind::classification_bug, "fallback cycles failed verification: " + check.detail);
  sort_cycles(p.cycles);
  if (!(p.segre == p.closed_form_segre))
    p.diagnostics.push_back("case " + std::string(to_string(p.case_label)) + " predicts " +
                            sizes_string(p.closed_form_segre, p.lambda) + " but rank sequences give " +
                            sizes_string(p.segre, p.lambda));
}

// Solves X Y - Y B = G for Y (p x q) through the Kronecker system.
inline Matrix solve_sylvester(const Matrix& x, const Matrix& b, const Matrix& g) {
  const std::size_t p = x.rows(), q = b.rows();
  Matrix k(p * q, p * q);
  Vector rhs(p * q);
  // unknown Y(i, j) sits at index j * p + i
  for (std::size_t j = 0; j < q; ++j)
    for (std::size_t i = 0; i < p; ++i) {
      const std::size_t row = j * p + i;
      rhs[row] = g(i, j);
      for (std::size_t l = 0; l < p; ++l) k(row, j * p + l) += x(i, l);
      for (std::size_t l = 0; l < q; ++l) k(row, l * p + i) -= b(l, j);
    }
  const Vector y = solve(k, rhs);
  Matrix out(p, q);
  for (std::size_t j = 0; j < q; ++j)
    for (std::size_t i = 0; i < p; ++i) out(i, j) = y[j * p + i];
  return out;
}

}  // namespace detail

/// The shifted block together with the columns that carry it:
/// Â basis = basis canonical, with basis an n x m matrix.
struct BlockExtraction {
  Matrix canonical;
  Matrix basis;
};

/// Basis whose first m columns are the right chain and whose remaining
/// columns span range((A - lambda0 I)^m), the invariant complement.
inline Matrix adapted_basis(const Matrix& a, const Scalar& lambda0, const std::vector<Vector>& right) {
  const std::size_t n = a.rows(), m = right.size();
  std::vector<Vector> cols = right;
  for (auto& c : column_space_basis(power(shifted(a, lambda0), m))) cols.push_back(std::move(c));
  if (cols.size() != n)
    throw Error(ErrorKind::precondition, "chain and invariant complement do not fill the space");
  Matrix p = Matrix::from_columns(std::span<const Vector>(cols), n);
  if (exact_rank(p) != n) throw Error(ErrorKind::precondition, "chain is not complementary to range((A-l0 I)^m)");
  return p;
}

/// True when lambda1 lands on an eigenvalue carried by the untouched part of A.
inline bool lambda1_collides(const ShiftResult& s) {
  const auto& p = s.plan;
  if (p.lambda1 == p.lambda0) return false;
  return exact_rank(shifted(s.a, p.lambda1)) != s.a.rows();
}

namespace detail {

// In the basis Q = [h1, mid, rest, h2], Q^{-1} Â Q is block upper triangular;
// Sylvester steps decouple the rest so that only the m x m shifted block remains.
inline BlockExtraction extract_block(const ShiftResult& s, const Matrix& basis, std::size_t offset) {
  const auto& plan = s.plan;
  const std::size_t n = s.a_hat.rows(), m = plan.multiplicity(), k = plan.k;
  const std::size_t p = m - k, o = n - m;
  if (!basis.is_square() || basis.rows() != n)
    throw Error(ErrorKind::dimension_mismatch, "basis " + basis.shape() + " for order " + std::to_string(n));
  if (offset + m > n) throw Error(ErrorKind::dimension_mismatch, "block offset out of range");
  std::vector<std::size_t> order;
  for (std::size_t j = 0; j < p; ++j) order.push_back(offset + j);
  for (std::size_t j = 0; j < n; ++j)
    if (j < offset || j >= offset + m) order.push_back(j);
  for (std::size_t j = p; j < m; ++j) order.push_back(offset + j);
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  const Matrix q = basis.select(all, order);
  const Matrix mq = inverse(q) * s.a_hat * q;

  if (!mq.block(p, 0, n - p, p).is_zero() || !mq.block(p + o, p, k, o).is_zero())
    throw Error(ErrorKind::extraction, "shifted matrix is not block triangular in the given basis");
  const Matrix x = mq.block(0, 0, p, p), e = mq.block(0, p, p, o), g = mq.block(0, p + o, p, k);
  const Matrix a22 = mq.block(p, p, o, o), f = mq.block(p, p + o, o, k), z = mq.block(p + o, p + o, k, k);

  Matrix t = Matrix::identity(n);
  Matrix g_eff = g;
  if (o > 0) {
    if (exact_rank(shifted(a22, plan.lambda1)) != o)
      throw Error(ErrorKind::precondition, "lambda1 coincides with an eigenvalue of the untouched part");
    const Matrix y1 = solve_sylvester(x, a22, -e);
    const Matrix y2 = solve_sylvester(a22, z, -f);
    g_eff = g - y1 * f;
    Matrix t1 = Matrix::identity(n), t2 = Matrix::identity(n);
    t1.set_block(0, p, y1);
    t2.set_block(p, p + o, y2);
    t = t1 * t2;
  }
  Matrix canonical(m, m);
  canonical.set_block(0, 0, x);
  canonical.set_block(0, p, g_eff);
  canonical.set_block(p, p, z);
  const Matrix qt = q * t;
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < p; ++j) keep.push_back(j);
  for (std::size_t j = p + o; j < n; ++j) keep.push_back(j);
  Matrix b = qt.select(all, keep);
  if (!(s.a_hat * b == b * canonical))
    throw Error(ErrorKind::extraction, "decoupled block does not represent the shifted matrix");
  return BlockExtraction{std::move(canonical), std::move(b)};
}

inline void require_jordan(const Matrix& m, const Scalar& lambda, const char* what) {
  if (!(m == jordan_block(lambda, m.rows()))) throw Error(ErrorKind::extraction, std::string(what) + " is not J_k(lambda1)");
}

}  // namespace detail

template <typename Form>
struct Extracted {
  Form form;
  Matrix basis;  // n x m; Â basis = basis (canonical matrix of form)
};

/// `basis` is a full change of basis whose columns offset..offset+2k-1 are the
/// right chain that was shifted.
inline Extracted<EvenCanonical> extract_even_canonical(const ShiftResult& s, const Matrix& basis, std::size_t offset = 0) {
  if (s.plan.middle) throw Error(ErrorKind::invalid_parameter, "odd shift passed to the even extractor");
  const std::size_t k = s.plan.k;
  auto blk = detail::extract_block(s, basis, offset);
  detail::require_jordan(blk.canonical.block(0, 0, k, k), s.plan.lambda1, "leading block");
  detail::require_jordan(blk.canonical.block(k, k, k, k), s.plan.lambda1, "trailing block");
  EvenCanonical ec{k, s.plan.lambda1, blk.canonical.block(0, k, k, k)};
  return {std::move(ec), std::move(blk.basis)};
}

inline Extracted<EvenCanonical> extract_even_canonical(const ShiftResult& s) {
  return extract_even_canonical(s, adapted_basis(s.a, s.plan.lambda0, s.plan.chain.right));
}

inline Extracted<OddCanonical> extract_odd_canonical(const ShiftResult& s, const Matrix& basis, std::size_t offset = 0) {
  if (!s.plan.middle) throw Error(ErrorKind::invalid_parameter, "even shift passed to the odd extractor");
  const std::size_t k = s.plan.k;
  auto blk = detail::extract_block(s, basis, offset);
  const Matrix& cm = blk.canonical;
  if (k > 0) {
    detail::require_jordan(cm.block(0, 0, k, k), s.plan.lambda1, "leading block");
    detail::require_jordan(cm.block(k + 1, k + 1, k, k), s.plan.lambda1, "trailing block");
    if (!cm.block(k, 0, 1, k).is_zero()) throw Error(ErrorKind::extraction, "middle row has entries left of the diagonal");
  }
  if (cm(k, k) != s.plan.lambda1) throw Error(ErrorKind::extraction, "middle diagonal entry is not lambda1");
  OddCanonical oc{k, s.plan.lambda1, Vector(k), Vector(k), cm.block(0, k + 1, k, k)};
  for (std::size_t i = 0; i < k; ++i) {
    oc.a[i] = cm(i, k);
    oc.b[i] = cm(k, k + 1 + i);
  }
  return {std::move(oc), std::move(blk.basis)};
}

inline Extracted<OddCanonical> extract_odd_canonical(const ShiftResult& s) {
  return extract_odd_canonical(s, adapted_basis(s.a, s.plan.lambda0, s.plan.chain.right));
}

inline EigenspaceReport eigenspace_even(const EvenCanonical& ec) {
  const std::size_t k = ec.k;
  if (k == 0) throw Error(ErrorKind::invalid_size, "k must be >= 1");
  EigenspaceReport out;
  const Vector zero(k), e1 = detail::unit_k(k, 1);
  const Vector ce1 = ec.c * e1;
  out.literal.push_back(detail::stack({e1, zero}));
  if (ec.c(k - 1, 0).is_zero()) {
    if (ce1.is_zero())
      out.literal.push_back(detail::stack({zero, e1}));
    else
      out.literal.push_back(detail::stack({detail::n_k(k) * ce1, e1}));
  }
  out.exact = null_space_basis(shifted(ec.t(), ec.lambda));
  out.agrees = same_span(out.literal, out.exact, 2 * k);
  return out;
}

inline EigenspaceReport eigenspace_odd(const OddCanonical& oc) {
  const std::size_t k = oc.k;
  EigenspaceReport out;
  out.exact = null_space_basis(shifted(oc.s(), oc.lambda));
  if (k == 0) {
    out.literal.push_back(detail::scalar_vec(Scalar(1)));
    out.agrees = same_span(out.literal, out.exact, 1);
    return out;
  }
  const Vector zero(k), e1 = detail::unit_k(k, 1);
  const Vector z1 = detail::scalar_vec(Scalar(0)), o1 = detail::scalar_vec(Scalar(1));
  const Matrix nk = detail::n_k(k);
  const Vector ce1 = oc.c * e1;
  const bool b1 = !oc.b[0].is_zero(), ak = !oc.a[k - 1].is_zero(), ck1 = !oc.c(k - 1, 0).is_zero();
  out.literal.push_back(detail::stack({e1, z1, zero}));
  if (!b1 && ak && !ck1) {
    out.literal.push_back(detail::stack({nk * ce1, z1, e1}));
  } else if (!b1 && ak && ck1) {
    const Scalar t = -oc.c(k - 1, 0) / oc.a[k - 1];
    out.literal.push_back(detail::stack({nk * (t * oc.a + ce1), detail::scalar_vec(t), e1}));
  } else if ((!b1 && !ak && ck1) || (b1 && !ak)) {
    out.literal.push_back(detail::stack({nk * oc.a, o1, zero}));
  } else if (!b1 && !ak && !ck1) {
    out.literal.push_back(detail::stack({nk * (oc.a + ce1), o1, e1}));
    out.literal.push_back(detail::stack({nk * ce1, z1, e1}));
  }
  out.agrees = same_span(out.literal, out.exact, 2 * k + 1);
  return out;
}

/// y, z, W with y_1 = z_k = 0 and w_{1,j} = 0; the result is checked against
/// Y S Y^{-1} exactly.
inline ConcentratedForm reduce_to_concentrated(const OddCanonical& oc) {
  const std::size_t k = oc.k;
  ConcentratedForm cf{k, oc.lambda, Scalar(0), Scalar(0), Vector(k), Matrix::identity(2 * k + 1)};
  if (k == 0) return cf;
  Vector y(k), z(k);
  for (std::size_t i = 1; i < k; ++i) {
    y[i] = oc.a[i - 1];
    z[i - 1] = -oc.b[i];
  }
  const Matrix nil = shifted(jordan_block(oc.lambda, k), oc.lambda);
  const Matrix d = oc.c + outer_star(y, oc.b.conj()) - outer_star(oc.a, z.conj()) + outer_star(nil * y, z.conj());
  Matrix w(k, k);
  for (std::size_t i = 1; i < k; ++i) {
    w(i, 0) = d(i - 1, 0);
    for (std::size_t j = 1; j < k; ++j) w(i, j) = w(i - 1, j - 1) + d(i - 1, j);
  }
  cf.a_k = oc.a[k - 1];
  cf.b_1 = oc.b[0];
  for (std::size_t j = 0; j < k; ++j) {
    Scalar s;
    for (std::size_t l = 0; l <= j; ++l) s += d(k - 1 - l, j - l);
    cf.last_row[j] = s;
  }
  Matrix yt = Matrix::identity(2 * k + 1);
  for (std::size_t i = 0; i < k; ++i) {
    yt(i, k) = y[i];
    yt(k, k + 1 + i) = z[i];
  }
  yt.set_block(0, k + 1, w);
  cf.transform = yt;
  if (!(yt * oc.s() == cf.s_tilde() * yt))
    throw Error(ErrorKind::internal, "Y S Y^{-1} is not the concentrated form");
  return cf;
}

namespace detail {

// Cycles of T for the three even cases. `signed_sums` selects the
// alternating-sign partial sums that make (T - lambda I) x_j = x_{j-1} hold;
// without it the sums are taken literally.
inline std::vector<Cycle> even_cycles(const EvenCanonical& ec, CaseLabel label, bool signed_sums) {
  const std::size_t k = ec.k;
  const Matrix nk = n_k(k);
  const Vector zero(k);
  auto partial = [&](std::size_t j, std::size_t from) {
    Vector x(k);
    for (std::size_t i = from; i <= j; ++i) {
      Vector term = ec.c * unit_k(k, static_cast<long>(i));
      for (std::size_t p = 0; p < j - i + 1; ++p) term = nk * term;
      if (signed_sums && (j - i) % 2 == 1) term = -term;
      x += term;
    }
    return x;
  };
  std::vector<Cycle> out;
  if (label == CaseLabel::Even3) {
    Cycle g;
    const Scalar c = ec.c(k - 1, 0);
    for (std::size_t j = 1; j <= k; ++j) g.push_back(stack({c * unit_k(k, static_cast<long>(j)), zero}));
    for (std::size_t j = 1; j <= k; ++j) g.push_back(stack({partial(j, 1), unit_k(k, static_cast<long>(j))}));
    out.push_back(std::move(g));
    return out;
  }
  Cycle g1, g2;
  for (std::size_t j = 1; j <= k; ++j) g1.push_back(stack({unit_k(k, static_cast<long>(j)), zero}));
  const std::size_t from = label == CaseLabel::Even1 ? 2 : 1;
  for (std::size_t j = 1; j <= k; ++j) g2.push_back(stack({partial(j, from), unit_k(k, static_cast<long>(j))}));
  out.push_back(std::move(g1));
  out.push_back(std::move(g2));
  return out;
}

}  // namespace detail

inline StructurePrediction classify_even(const EvenCanonical& ec) {
  const std::size_t k = ec.k;
  if (k == 0) throw Error(ErrorKind::invalid_size, "k must be >= 1");
  if (ec.c.rows() != k || ec.c.cols() != k) throw Error(ErrorKind::dimension_mismatch, "C must be k x k");
  StructurePrediction p;
  p.lambda = ec.lambda;
  p.canonical = ec.t();
  const bool ck1 = !ec.c(k - 1, 0).is_zero();
  const bool ce1 = !(ec.c * detail::unit_k(k, 1)).is_zero();
  if (ck1) {
    p.case_label = CaseLabel::Even3;
    p.closed_form_segre = detail::sizes_segre(ec.lambda, {2 * k});
  } else {
    p.case_label = ce1 ? CaseLabel::Even2 : CaseLabel::Even1;
    p.closed_form_segre = detail::sizes_segre(ec.lambda, {k, k});
  }
  const CaseLabel label = p.case_label;
  detail::settle(p, {{CycleSource::closed_form, [&] { return detail::even_cycles(ec, label, false); }},
                     {CycleSource::corrected_closed_form, [&] { return detail::even_cycles(ec, label, true); }}});
  return p;
}

namespace detail {

struct OddLayout {
  std::size_t k;
  Vector zero;
  Vector top(const Vector& x1) const { return stack({x1, scalar_vec(Scalar(0)), zero}); }
  Vector mid(const Scalar& x2) const { return stack({zero, scalar_vec(x2), zero}); }
  Vector bot(const Scalar& x2, const Vector& x3) const { return stack({zero, scalar_vec(x2), x3}); }
  Vector full(const Vector& x1, const Scalar& x2, const Vector& x3) const { return stack({x1, scalar_vec(x2), x3}); }
  Vector e(long j) const { return unit_k(k, j); }
};

// alpha_0 = 1, alpha_j = -(1/c~_{k,i+1}) sum_{s<j} alpha_s c~_{k, idx(i, j, s)}. The
// literal recurrence reads c~_{k,i+2+s}; the corrected one c~_{k,i+1+j-s}.
inline std::vector<Scalar> alphas(const Vector& row, std::size_t i, std::size_t count, bool corrected) {
  const std::size_t k = row.dim();
  std::vector<Scalar> al{Scalar(1)};
  auto c = [&](std::size_t idx) { return idx >= 1 && idx <= k ? row[idx - 1] : Scalar(0); };
  for (std::size_t j = 1; j <= count; ++j) {
    Scalar s;
    for (std::size_t t = 0; t < j; ++t) s += al[t] * c(corrected ? i + 1 + j - t : i + 2 + t);
    al.push_back(-s / row[i]);
  }
  return al;
}

// sum_{s=0}^{upto} alpha_s e_{base-s}; empty when upto < 0.
inline Vector alpha_sum(const OddLayout& l, const std::vector<Scalar>& al, long upto, long base) {
  Vector x(l.k);
  for (long s = 0; s <= upto; ++s) {
    const Scalar& a = static_cast<std::size_t>(s) < al.size() ? al[static_cast<std::size_t>(s)] : Scalar(0);
    x += a * l.e(base - s);
  }
  return x;
}

inline std::vector<Cycle> odd_cycles(const ConcentratedForm& cf, CaseLabel label, std::size_t i, bool corrected) {
  const std::size_t k = cf.k;
  const long kk = static_cast<long>(k), ii = static_cast<long>(i);
  const OddLayout l{k, Vector(k)};
  const Vector& row = cf.last_row;
  const Scalar& ak = cf.a_k;
  const Scalar& b1 = cf.b_1;
  auto ct = [&](std::size_t idx) { return row[idx - 1]; };  // c~_{k,idx}
  std::vector<Cycle> out;
  auto x1_run = [&](const Scalar& scale) {
    Cycle c;
    for (long j = 1; j <= kk; ++j) c.push_back(l.top(scale * l.e(j)));
    return c;
  };
  auto x3_run = [&](long upto) {
    Cycle c;
    for (long j = 1; j <= upto; ++j) c.push_back(l.bot(Scalar(0), l.e(j)));
    return c;
  };

  switch (label) {
    case CaseLabel::Odd0:
      out.push_back({l.mid(Scalar(1))});
      break;
    case CaseLabel::Odd1a:
    case CaseLabel::Odd1b: {
      Cycle g = x1_run(b1 * ak);
      g.push_back(l.mid(b1));
      if (label == CaseLabel::Odd1b) {
        for (auto& v : x3_run(kk)) g.push_back(v);
      } else {
        for (auto& v : x3_run(ii)) g.push_back(v);
        std::vector<Scalar> tau;
        for (long j = 1; j <= kk - ii; ++j) {
          Vector f = l.e(ii + j);
          for (long s = 1; s <= j - 1; ++s) f += (tau[static_cast<std::size_t>(s - 1)] / b1) * l.e(j - s);
          Scalar cf_j;
          for (std::size_t t = 0; t < k; ++t) cf_j += row[t] * f[t];
          tau.push_back(-cf_j / ak);
          g.push_back(l.bot(tau.back(), f));
        }
      }
      out.push_back(std::move(g));
      break;
    }
    case CaseLabel::Odd2a:
    case CaseLabel::Odd2c: {
      Cycle g1 = x1_run(ak);
      g1.push_back(l.mid(Scalar(1)));
      Cycle g2 = x3_run(kk);
      if (label == CaseLabel::Odd2a) g2.back() = l.bot(-ct(k) / ak, l.e(kk));
      out.push_back(std::move(g1));
      out.push_back(std::move(g2));
      break;
    }
    case CaseLabel::Odd2b: {
      const auto al = alphas(row, i, k - i - 1, corrected);
      Cycle g1;
      for (long j = 1; j <= 2 * kk - ii; ++j) {
        Vector m = j <= kk ? ct(i + 1) * l.e(j) : Vector(k);
        Scalar x2;
        Vector x3(k);
        if (j < kk - ii + 1) {
        } else if (j < 2 * kk - 2 * ii - 1) {
          x3 = alpha_sum(l, al, j - kk + ii - 1, j - kk + ii);
        } else if (j <= 2 * kk - ii - 1) {
          x3 = alpha_sum(l, al, kk - ii - 2, j - kk + ii);
        } else {
          for (long s = 0; s <= kk - ii - 2; ++s) x2 += al[static_cast<std::size_t>(s)] * ct(k - static_cast<std::size_t>(s));
          x2 = -x2 / ak;
          x3 = alpha_sum(l, al, kk - ii - 2, kk);
        }
        g1.push_back(l.full(m, x2, x3));
      }
      Cycle g2 = x3_run(ii);
      g2.push_back(l.bot(-ct(i + 1) / ak, l.e(ii + 1)));
      out.push_back(std::move(g1));
      out.push_back(std::move(g2));
      break;
    }
    case CaseLabel::Odd3a: {
      const auto al = alphas(row, i, k - i - 1, corrected);
      Cycle g1;
      for (long j = 1; j <= 2 * kk - ii; ++j) {
        Vector m = j <= kk ? ct(i + 1) * l.e(j) : Vector(k);
        Scalar x2;
        Vector x3(k);
        if (j < kk - ii) {
        } else if (j == kk - ii) {
          x2 = b1;
        } else if (j < 2 * kk - 2 * ii) {
          x2 = b1 * al[static_cast<std::size_t>(j - kk + ii)];
          x3 = alpha_sum(l, al, j - kk + ii - 1, j - kk + ii);
        } else {
          x3 = alpha_sum(l, al, kk - ii - 1, j - kk + ii);
        }
        g1.push_back(l.full(m, x2, x3));
      }
      Cycle g2{l.mid(b1)};
      for (auto& v : x3_run(ii)) g2.push_back(v);
      out.push_back(std::move(g1));
      out.push_back(std::move(g2));
      break;
    }
    case CaseLabel::Odd3b: {
      Cycle g1{l.mid(b1)};
      for (auto& v : x3_run(kk)) g1.push_back(v);
      out.push_back(std::move(g1));
      out.push_back(x1_run(Scalar(1)));
      break;
    }
    case CaseLabel::Odd4a: {
      Cycle g1 = x1_run(ct(1));
      std::vector<Scalar> psi{Scalar(1)};
      for (std::size_t j = 2; j <= k; ++j) {
        Scalar s;
        for (std::size_t t = 1; t <= j - 1; ++t) s += psi[t - 1] * ct(j - t + 1);
        psi.push_back(-s / ct(1));
      }
      for (long j = 1; j <= kk; ++j) {
        Vector x3(k);
        for (long s = 1; s <= j; ++s) x3 += psi[static_cast<std::size_t>(s - 1)] * l.e(j - s + 1);
        g1.push_back(l.bot(Scalar(0), x3));
      }
      out.push_back(std::move(g1));
      out.push_back({l.mid(Scalar(1))});
      break;
    }
    case CaseLabel::Odd4b: {
      const auto al = alphas(row, i, k - i - 1, corrected);
      Cycle g1;
      for (long j = 1; j <= 2 * kk - ii; ++j) {
        Vector m = j <= kk ? ct(i + 1) * l.e(j) : Vector(k);
        Vector x3(k);
        if (j < kk - ii + 1) {
        } else if (j < 2 * kk - 2 * ii) {
          x3 = alpha_sum(l, al, j - kk + ii - 1, j - kk + ii);
        } else {
          x3 = alpha_sum(l, al, kk - ii - 1, j - kk + ii);
        }
        g1.push_back(l.full(m, Scalar(0), x3));
      }
      out.push_back(std::move(g1));
      out.push_back(x3_run(ii));
      out.push_back({l.mid(Scalar(1))});
      break;
    }
    case CaseLabel::Odd4c:
      out.push_back(x3_run(kk));
      out.push_back(x1_run(Scalar(1)));
      out.push_back({l.mid(Scalar(1))});
      break;
    default:
      throw Error(ErrorKind::internal, "not an odd case label");
  }
  return out;
}

}  // namespace detail

/// Case analysis on (b_1, a_k, first nonzero entry of the last row), run on
/// the concentrated form S~; cycles are chains of S~.
inline StructurePrediction classify_odd(const ConcentratedForm& cf) {
  const std::size_t k = cf.k;
  if (cf.last_row.dim() != k) throw Error(ErrorKind::dimension_mismatch, "last row must have k entries");
  StructurePrediction p;
  p.lambda = cf.lambda;
  p.canonical = cf.s_tilde();
  std::size_t i = 0;
  while (i < k && cf.last_row[i].is_zero()) ++i;
  const bool row_zero = i == k;
  const bool b1 = !cf.b_1.is_zero(), ak = !cf.a_k.is_zero();
  std::vector<std::size_t> sizes;
  if (k == 0) {
    p.case_label = CaseLabel::Odd0;
    sizes = {1};
  } else if (b1 && ak) {
    p.case_label = row_zero ? CaseLabel::Odd1b : CaseLabel::Odd1a;
    sizes = {2 * k + 1};
  } else if (!b1 && ak) {
    if (row_zero) {
      p.case_label = CaseLabel::Odd2c;
      sizes = {k + 1, k};
    } else if (i == k - 1) {
      p.case_label = CaseLabel::Odd2a;
      sizes = {k + 1, k};
    } else {
      p.case_label = CaseLabel::Odd2b;
      sizes = {2 * k - i, i + 1};
    }
  } else if (b1 && !ak) {
    if (row_zero) {
      p.case_label = CaseLabel::Odd3b;
      sizes = {k + 1, k};
    } else {
      p.case_label = CaseLabel::Odd3a;
      sizes = {2 * k - i, i + 1};
    }
  } else {
    if (row_zero) {
      p.case_label = CaseLabel::Odd4c;
      sizes = {k, k, 1};
    } else if (i == 0) {
      p.case_label = CaseLabel::Odd4a;
      sizes = {2 * k, 1};
    } else {
      p.case_label = CaseLabel::Odd4b;
      sizes = {2 * k - i, i, 1};
    }
  }
  p.closed_form_segre = detail::sizes_segre(cf.lambda, sizes);
  const CaseLabel label = p.case_label;
  std::vector<detail::Candidate> cands{
      {CycleSource::closed_form, [&] { return detail::odd_cycles(cf, label, i, false); }}};
  if (label == CaseLabel::Odd2b || label == CaseLabel::Odd3a || label == CaseLabel::Odd4b)
    cands.push_back({CycleSource::corrected_closed_form, [&] { return detail::odd_cycles(cf, label, i, true); }});
  detail::settle(p, cands);
  return p;
}

/// End-to-end prediction for a shift: the shifted block's structure (from the
/// case analysis) joined with the blocks the shift did not touch.
struct ShiftPrediction {
  StructurePrediction local;
  SegreCharacteristic segre;   // full predicted structure of Â
  std::vector<Cycle> cycles;   // local cycles carried into Â's coordinates
  std::optional<EvenCanonical> even;
  std::optional<OddCanonical> odd;
  std::optional<ConcentratedForm> concentrated;
};

inline ShiftPrediction predict_structure(const ShiftResult& s, const SegreCharacteristic& untouched,
                                         const std::optional<Matrix>& basis = std::nullopt, std::size_t offset = 0) {
  ShiftPrediction out;
  Matrix lift;  // maps cycles of the canonical matrix into Â's coordinates
  if (!s.plan.middle) {
    auto ex = basis ? extract_even_canonical(s, *basis, offset) : extract_even_canonical(s);
    out.local = classify_even(ex.form);
    out.even = ex.form;
    lift = ex.basis;
  } else {
    auto ex = basis ? extract_odd_canonical(s, *basis, offset) : extract_odd_canonical(s);
    auto cf = reduce_to_concentrated(ex.form);
    out.local = classify_odd(cf);
    out.odd = ex.form;
    lift = ex.basis * inverse(cf.transform);
    out.concentrated = std::move(cf);
  }
  for (const auto& c : out.local.cycles) {
    Cycle lifted;
    for (const auto& v : c) lifted.push_back(lift * v);
    out.cycles.push_back(std::move(lifted));
  }
  const CycleCheck check = verify_cycles(s.a_hat, s.plan.lambda1, out.cycles);
  if (!check.recurrences || !check.independent)
    throw Error(ErrorKind::classification_bug, "cycles do not carry over to the shifted matrix: " + check.detail);
  out.segre = out.local.segre;
  out.segre.append(untouched);
  out.segre = out.segre.canonical();
  return out;
}

}  // namespace eigshift
