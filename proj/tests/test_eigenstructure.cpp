#include <gtest/gtest.h>

#include "eigshift/eigenstructure.hpp"
#include "eigshift/generators.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace eigshift;
using namespace testing_helpers;

namespace {

Matrix cols(std::initializer_list<Vector> vs) {
  std::vector<Vector> v(vs);
  return Matrix::from_columns(v);
}

Matrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  Matrix m(rows.size(), rows.begin()->size());
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (long x : r) m(i, j++) = q(x);
    ++i;
  }
  return m;
}

Vector vec(std::initializer_list<long> xs) {
  Vector v(xs.size());
  std::size_t i = 0;
  for (long x : xs) v[i++] = q(x);
  return v;
}

Vector concat(const Vector& a, const Vector& b) {
  Vector out(a.dim() + b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.dim(); ++i) out[a.dim() + i] = b[i];
  return out;
}

struct TwoBlocks {
  Matrix a = direct_sum(jordan_block(q(1), 4), jordan_block(q(3), 2));
  ChainPair chain{q(1), {e(6, 4), e(6, 3), e(6, 2), e(6, 1)}, {e(6, 1), e(6, 2), e(6, 3), e(6, 4)}};
};

std::vector<std::size_t> sizes(const StructurePrediction& p) { return p.segre.sizes_at(p.lambda); }

}  // namespace

TEST(EvenEigenspace, LiteralBasisMatchesTheNullSpace) {
  const EvenCanonical zero{2, q(0), Matrix(2, 2)};
  const auto r0 = eigenspace_even(zero);
  EXPECT_EQ(r0.literal.size(), 2u);
  EXPECT_TRUE(r0.agrees);

  const EvenCanonical corner{2, q(0), mat({{0, 0}, {1, 0}})};
  const auto r1 = eigenspace_even(corner);
  EXPECT_EQ(r1.literal.size(), 1u);
  EXPECT_TRUE(r1.agrees);
}

// C e_1 = e_1 with c_{k1} = 0: the second eigenvector is (-e_2, e_1); the
// unsigned (e_2, e_1) is not in the kernel.
TEST(EvenEigenspace, SecondVectorCarriesTheNilpotentSign) {
  const EvenCanonical ec{2, q(0), mat({{1, 0}, {0, 0}})};
  const auto r = eigenspace_even(ec);
  ASSERT_EQ(r.literal.size(), 2u);
  EXPECT_EQ(r.literal[1], concat(-e(2, 2), e(2, 1)));
  EXPECT_TRUE(r.agrees);
  const Matrix d = shifted(ec.t(), ec.lambda);
  EXPECT_TRUE((d * concat(-e(2, 2), e(2, 1))).is_zero());
  EXPECT_FALSE((d * concat(e(2, 2), e(2, 1))).is_zero());
}

TEST(EvenEigenspace, RandomCouplings) {
  RandomSource rng(61);
  for (int t = 0; t < 60; ++t) {
    const std::size_t k = rng.index(1, 4);
    const CaseLabel label = k >= 2 && rng.coin() ? CaseLabel::Even2 : (rng.coin() ? CaseLabel::Even1 : CaseLabel::Even3);
    const EvenCanonical ec{k, rng.rational(3, 2), even_target(rng, label, k)};
    const auto r = eigenspace_even(ec);
    EXPECT_TRUE(r.agrees);
    EXPECT_EQ(r.exact.size(), oracle::geometric_multiplicity(ec.t(), ec.lambda));
    EXPECT_LE(r.exact.size(), 2u);
  }
}

TEST(ClassifyEven, Examples) {
  const auto p0 = classify_even({2, q(5), Matrix(2, 2)});
  EXPECT_EQ(p0.case_label, CaseLabel::Even1);
  EXPECT_EQ(sizes(p0), (std::vector<std::size_t>{2, 2}));
  EXPECT_EQ(p0.source, CycleSource::closed_form);
  EXPECT_TRUE(p0.closed_form_agrees());

  const auto p3 = classify_even({2, q(5), mat({{0, 0}, {1, 0}})});
  EXPECT_EQ(p3.case_label, CaseLabel::Even3);
  EXPECT_EQ(sizes(p3), (std::vector<std::size_t>{4}));
  ASSERT_EQ(p3.cycles.size(), 1u);
  EXPECT_EQ(p3.cycles[0].size(), 4u);

  const auto p1 = classify_even({1, q(0), mat({{7}})});
  EXPECT_EQ(p1.case_label, CaseLabel::Even3);
  EXPECT_EQ(sizes(p1), (std::vector<std::size_t>{2}));
}

// The closed-form two-block families are not always right; the rank sequences
// are. These are frozen from the independent block-size oracle.
TEST(ClassifyEven, ClosedFormsThatMissAreReplacedByRankData) {
  struct Case {
    Matrix c;
    CaseLabel label;
    std::vector<std::size_t> truth;
  };
  const std::vector<Case> cases{{mat({{0, 1}, {0, 0}}), CaseLabel::Even1, {2, 2}},
                                {mat({{0, 0}, {0, 1}}), CaseLabel::Even1, {3, 1}},
                                {mat({{1, 0}, {0, 0}}), CaseLabel::Even2, {3, 1}}};
  for (const auto& c : cases) {
    const EvenCanonical ec{2, q(0), c.c};
    EXPECT_EQ(oracle::block_sizes(ec.t(), ec.lambda), c.truth);
    const auto p = classify_even(ec);
    EXPECT_EQ(p.case_label, c.label);
    EXPECT_EQ(sizes(p), c.truth);
    EXPECT_EQ(p.closed_form_segre.sizes_at(q(0)), (std::vector<std::size_t>{2, 2}));
    EXPECT_EQ(p.closed_form_agrees(), c.truth == std::vector<std::size_t>({2, 2}));
    if (!p.closed_form_agrees()) {
      EXPECT_EQ(p.source, CycleSource::rank_fallback);
      ASSERT_FALSE(p.diagnostics.empty());
      EXPECT_NE(p.diagnostics.back().find("rank sequences give [3,1]"), std::string::npos) << p.diagnostics.back();
    }
    EXPECT_TRUE(verify_cycles(p.canonical, p.lambda, p.cycles).ok(4));
  }
}

TEST(ClassifyEven, AuthoritativeStructureAlwaysMatchesTheOracle) {
  RandomSource rng(62);
  for (int t = 0; t < 80; ++t) {
    const std::size_t k = rng.index(1, 4);
    const CaseLabel label = k >= 2 && rng.coin() ? CaseLabel::Even2 : (rng.coin() ? CaseLabel::Even1 : CaseLabel::Even3);
    const EvenCanonical ec{k, rng.rational(2, 2), even_target(rng, label, k)};
    const auto p = classify_even(ec);
    EXPECT_EQ(p.case_label, label);
    EXPECT_EQ(sizes(p), oracle::block_sizes(ec.t(), ec.lambda));
    EXPECT_TRUE(verify_cycles(p.canonical, p.lambda, p.cycles).ok(2 * k));
    if (label == CaseLabel::Even3) { EXPECT_TRUE(p.closed_form_agrees()); }
  }
}

TEST(Extraction, MinimalShiftGivesTheCornerCoupling) {
  TwoBlocks tb;
  const ShiftResult s = shift_even(tb.a, tb.chain, q(2), cols({e(6, 1), e(6, 2)}), cols({e(6, 4), e(6, 3)}));
  const auto ex = extract_even_canonical(s);
  EXPECT_EQ(ex.form.lambda, q(2));
  EXPECT_EQ(ex.form.c, mat({{0, 0}, {1, 0}}));
  EXPECT_EQ(s.a_hat * ex.basis, ex.basis * ex.form.t());
  EXPECT_EQ(classify_even(ex.form).case_label, CaseLabel::Even3);
}

TEST(Extraction, SplitShiftClearsTheFirstColumn) {
  TwoBlocks tb;
  const ShiftResult s = shift_even(tb.a, tb.chain, q(2), cols({e(6, 1), e(6, 2) - e(6, 3)}), cols({e(6, 4), e(6, 3)}));
  const auto ex = extract_even_canonical(s);
  EXPECT_TRUE((ex.form.c * e(2, 1)).is_zero());
  EXPECT_EQ(s.a_hat * ex.basis, ex.basis * ex.form.t());
  const auto p = classify_even(ex.form);
  EXPECT_EQ(p.case_label, CaseLabel::Even1);
  EXPECT_EQ(sizes(p), (std::vector<std::size_t>{2, 2}));
}

TEST(Extraction, SmallestEvenBlock) {
  const ChainPair c{q(0), {e(2, 2), e(2, 1)}, {e(2, 1), e(2, 2)}};
  const ShiftResult s = shift_even(jordan_block(q(0), 2), c, q(1), cols({e(2, 1)}), cols({e(2, 2)}));
  const auto ex = extract_even_canonical(s);
  EXPECT_EQ(ex.form.c, mat({{1}}));
  EXPECT_EQ(sizes(classify_even(ex.form)), (std::vector<std::size_t>{2}));
}

TEST(Extraction, OddBlocksIntertwine) {
  RandomSource rng(63);
  for (int t = 0; t < 30; ++t) {
    const ShiftInstance inst = random_shift_instance(rng, 2 * rng.index(0, 2) + 1);
    const auto ex = extract_odd_canonical(inst.shift, inst.syn.basis);
    EXPECT_EQ(inst.shift.a_hat * ex.basis, ex.basis * ex.form.s());
    EXPECT_EQ(exact_rank(ex.basis), ex.basis.cols());
  }
}

TEST(Concentrated, SmallCases) {
  const OddCanonical k0{0, q(3), Vector(0), Vector(0), Matrix(0, 0)};
  const auto c0 = reduce_to_concentrated(k0);
  EXPECT_EQ(c0.transform, Matrix::identity(1));

  const OddCanonical k1{1, q(0), vec({2}), vec({3}), mat({{5}})};
  const auto c1 = reduce_to_concentrated(k1);
  EXPECT_EQ(c1.transform, Matrix::identity(3));
  EXPECT_EQ(c1.a_k, q(2));
  EXPECT_EQ(c1.b_1, q(3));
  EXPECT_EQ(c1.last_row, vec({5}));
}

TEST(Concentrated, TwoByTwoCoupling) {
  const OddCanonical oc{2, q(1), vec({1, 0}), vec({0, 1}), mat({{1, 1}, {1, 1}})};
  const auto cf = reduce_to_concentrated(oc);
  EXPECT_EQ(cf.a_k, q(0));
  EXPECT_EQ(cf.b_1, q(0));
  EXPECT_EQ(cf.transform * oc.s(), cf.s_tilde() * cf.transform);
  EXPECT_EQ(oracle::block_sizes(oc.s(), q(1)), oracle::block_sizes(cf.s_tilde(), q(1)));
}

TEST(Concentrated, RandomBlocksKeepTheirStructure) {
  RandomSource rng(64);
  for (int t = 0; t < 40; ++t) {
    const std::size_t k = rng.index(1, 3);
    OddCanonical oc{k, rng.rational(2, 1), Vector(k), Vector(k), rng.integer_matrix(k, k, 2)};
    for (std::size_t i = 0; i < k; ++i) oc.a[i] = rng.small_integer(2), oc.b[i] = rng.small_integer(2);
    const auto cf = reduce_to_concentrated(oc);
    EXPECT_EQ(cf.transform * oc.s(), cf.s_tilde() * cf.transform);
    EXPECT_EQ(oracle::block_sizes(oc.s(), oc.lambda), oracle::block_sizes(cf.s_tilde(), oc.lambda));
  }
}

TEST(ClassifyOdd, Examples) {
  struct Case {
    ConcentratedForm cf;
    CaseLabel label;
    std::vector<std::size_t> truth;
  };
  const std::vector<Case> cases{
      {{1, q(0), q(1), q(1), vec({0}), Matrix::identity(3)}, CaseLabel::Odd1b, {3}},
      {{2, q(0), q(0), q(0), vec({0, 0}), Matrix::identity(5)}, CaseLabel::Odd4c, {2, 2, 1}},
      {{2, q(0), q(1), q(0), vec({0, 1}), Matrix::identity(5)}, CaseLabel::Odd2a, {3, 2}},
      {{2, q(0), q(0), q(0), vec({1, 0}), Matrix::identity(5)}, CaseLabel::Odd4a, {4, 1}},
      {{0, q(0), q(0), q(0), Vector(0), Matrix::identity(1)}, CaseLabel::Odd0, {1}}};
  for (const auto& c : cases) {
    EXPECT_EQ(oracle::block_sizes(c.cf.s_tilde(), q(0)), c.truth);
    const auto p = classify_odd(c.cf);
    EXPECT_EQ(p.case_label, c.label) << to_string(p.case_label);
    EXPECT_EQ(sizes(p), c.truth);
    EXPECT_TRUE(p.closed_form_agrees());
    EXPECT_NE(p.source, CycleSource::rank_fallback);
  }
}

TEST(ClassifyOdd, TargetedLabels) {
  RandomSource rng(65);
  const CaseLabel labels[] = {CaseLabel::Odd1a, CaseLabel::Odd1b, CaseLabel::Odd2a, CaseLabel::Odd2b,
                              CaseLabel::Odd2c, CaseLabel::Odd3a, CaseLabel::Odd3b, CaseLabel::Odd4a,
                              CaseLabel::Odd4b, CaseLabel::Odd4c};
  for (CaseLabel label : labels) {
    for (int t = 0; t < 6; ++t) {
      const std::size_t k = rng.index(std::max<std::size_t>(odd_label_min_k(label), 1), 4);
      OddCanonical oc = odd_target(rng, label, k);
      oc.lambda = rng.rational(2, 1);
      const auto cf = reduce_to_concentrated(oc);
      const auto p = classify_odd(cf);
      EXPECT_EQ(p.case_label, label);
      EXPECT_EQ(sizes(p), oracle::block_sizes(oc.s(), oc.lambda)) << to_string(label) << " k=" << k;
      EXPECT_TRUE(verify_cycles(p.canonical, p.lambda, p.cycles).ok(2 * k + 1));
      EXPECT_LE(oracle::geometric_multiplicity(oc.s(), oc.lambda), 3u);
    }
  }
}

TEST(OddEigenspace, LiteralBasisMatchesTheNullSpace) {
  RandomSource rng(66);
  for (CaseLabel label : {CaseLabel::Odd1a, CaseLabel::Odd2a, CaseLabel::Odd2c, CaseLabel::Odd3b, CaseLabel::Odd4c}) {
    for (int t = 0; t < 4; ++t) {
      const OddCanonical oc = odd_target(rng, label, rng.index(1, 3));
      EXPECT_TRUE(eigenspace_odd(oc).agrees) << to_string(label);
    }
  }
}

TEST(Predict, GoldenShifts) {
  TwoBlocks tb;
  const SegreCharacteristic rest = segre({{q(3), 2}});
  const auto a = predict_structure(shift_even(tb.a, tb.chain, q(2), cols({e(6, 1), e(6, 2)}), cols({e(6, 4), e(6, 3)})), rest);
  EXPECT_EQ(a.segre.to_string(), "[(2,4),(3,2)]");
  const auto b = predict_structure(
      shift_even(tb.a, tb.chain, q(2), cols({e(6, 1), e(6, 2) - e(6, 3)}), cols({e(6, 4), e(6, 3)})), rest);
  EXPECT_EQ(b.segre.to_string(), "[(2,2),(2,2),(3,2)]");
  EXPECT_EQ(b.local.case_label, CaseLabel::Even1);
}

// J4(0) moved to 1: the shifted block splits as [3,1], outside both {[2,2], [4]}.
TEST(Predict, MinimalShiftCanSplitUnevenly) {
  const ChainPair c{q(0), {e(4, 4), e(4, 3), e(4, 2), e(4, 1)}, {e(4, 1), e(4, 2), e(4, 3), e(4, 4)}};
  Matrix rf(4, 2);
  rf(2, 1) = q(-1);
  rf(3, 1) = q(1);
  const ShiftResult s = shift_chain(Matrix(jordan_block(q(0), 4)), c, q(1), std::optional<Matrix>(rf));
  EXPECT_EQ(oracle::block_sizes(s.a_hat, q(1)), (std::vector<std::size_t>{3, 1}));
  const auto p = predict_structure(s, SegreCharacteristic{});
  EXPECT_EQ(p.segre.sizes_at(q(1)), (std::vector<std::size_t>{3, 1}));
  EXPECT_FALSE(p.local.closed_form_agrees());
  EXPECT_EQ(p.local.source, CycleSource::rank_fallback);
  EXPECT_TRUE(verify_cycles(s.a_hat, q(1), p.cycles).ok(4));
}

TEST(Predict, RandomShiftsMatchTheOracle) {
  RandomSource rng(67);
  for (int t = 0; t < 60; ++t) {
    const ShiftInstance inst = random_shift_instance(rng, rng.index(1, 6));
    const auto p = predict_structure(inst.shift, inst.untouched, inst.syn.basis);
    EXPECT_EQ(p.segre, oracle_segre(inst.shift.a_hat, inst.eigenvalues_after));
  }
}

TEST(Predict, RealizedTargets) {
  RandomSource rng(68);
  for (CaseLabel label : {CaseLabel::Even1, CaseLabel::Even2, CaseLabel::Even3}) {
    for (int t = 0; t < 5; ++t) {
      const Matrix c = even_target(rng, label, 2);
      const ShiftInstance inst = realize_even(rng, c);
      const auto p = predict_structure(inst.shift, inst.untouched, inst.syn.basis);
      EXPECT_EQ(p.local.case_label, label);
      EXPECT_EQ(p.segre, oracle_segre(inst.shift.a_hat, inst.eigenvalues_after));
    }
  }
  for (CaseLabel label : {CaseLabel::Odd2b, CaseLabel::Odd3a, CaseLabel::Odd4b}) {
    for (int t = 0; t < 3; ++t) {
      const ShiftInstance inst = realize_odd(rng, odd_target(rng, label, 3));
      const auto p = predict_structure(inst.shift, inst.untouched, inst.syn.basis);
      EXPECT_EQ(p.local.case_label, label);
      EXPECT_EQ(p.segre, oracle_segre(inst.shift.a_hat, inst.eigenvalues_after));
    }
  }
}
