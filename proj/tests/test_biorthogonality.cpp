#include <gtest/gtest.h>

#include "eigshift/biorthogonality.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace eigshift;
using namespace testing_helpers;

namespace {

// (M)^{-1} by the adjugate formula, from permutation-expansion determinants.
Matrix adjugate_inverse(const Matrix& m) {
  const std::size_t n = m.rows();
  const Scalar det = oracle::leibniz_det(m);
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Matrix minor(n - 1, n - 1);
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == j) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c) {
          if (c == i) continue;
          minor(rr, cc++) = m(r, c);
        }
        ++rr;
      }
      const Scalar cof = oracle::leibniz_det(minor);
      inv(i, j) = ((i + j) % 2 ? -cof : cof) / det;
    }
  return inv;
}

SynthesizedMatrix random_synth(RandomSource& rng, const SegreCharacteristic& s) {
  return build_matrix(s, rng.unimodular(s.total_size(), 3, rng.coin()));
}

}  // namespace

TEST(GramTable, Examples) {
  const std::vector<Scalar> ones(4, q(1));
  const ChainPair c = generate_parametric_chains_single(q(1), 4, ones, ones);
  const GramTable t = gram_table(c.left, c.right);
  for (std::size_t i = 1; i <= 2; ++i)
    for (std::size_t j = 1; j <= 2; ++j) EXPECT_TRUE(t.at(i, j).is_zero());
  const GramTable single = gram_table(std::vector<Vector>{e(2, 2)}, std::vector<Vector>{e(2, 1)});
  EXPECT_EQ(single.x, Matrix({{q(0)}}));
  EXPECT_THROW(gram_table(std::vector<Vector>{e(2, 1)}, std::vector<Vector>{e(3, 1)}), Error);
}

TEST(GramTable, IsConjugateLinearOnTheLeft) {
  const Scalar i = Scalar::imag_unit();
  const GramTable t = gram_table(std::vector<Vector>{i * e(1, 1)}, std::vector<Vector>{e(1, 1)});
  EXPECT_EQ(t.at(1, 1), -i);
}

TEST(Hankel, Examples) {
  EXPECT_TRUE(check_hankel(GramTable{Matrix(3, 3)}));
  const PatternCheck bad = check_hankel(GramTable{Matrix({{q(0), q(1)}, {q(2), q(0)}})});
  ASSERT_FALSE(bad.ok);
  EXPECT_EQ(bad.violation->i, 2u);
  EXPECT_EQ(bad.violation->j, 1u);
  const PatternCheck leading = check_hankel(GramTable{Matrix({{q(1), q(0)}, {q(0), q(0)}})});
  ASSERT_FALSE(leading.ok);
  EXPECT_EQ(leading.violation->i, 1u);
}

TEST(Biorthogonality, DistinctEigenvaluesGiveZeroTables) {
  RandomSource rng(31);
  for (int t = 0; t < 60; ++t) {
    const std::size_t p = rng.index(1, 5), r = rng.index(1, 5);
    const auto s = segre({{q(1), p}, {Scalar(Rational(-1), Rational(1)), r}});
    const SynthesizedMatrix syn = random_synth(rng, s);
    const auto& a = syn.chains[0];
    const auto& b = syn.chains[1];
    EXPECT_TRUE(check_all_zero(gram_table(a.left, b.right)));
    EXPECT_TRUE(check_all_zero(gram_table(b.left, a.right)));
  }
}

TEST(Biorthogonality, SameEigenvalueTablesAreLowerHankel) {
  RandomSource rng(32);
  for (int t = 0; t < 60; ++t) {
    const std::size_t p = rng.index(1, 5), r = rng.index(1, 5);
    const Scalar l = rng.gaussian_rational(3, 2);
    const SynthesizedMatrix syn = random_synth(rng, segre({{l, p}, {l, r}}));
    // any left chain against any right chain for the same eigenvalue
    std::vector<Scalar> h{rng.nonzero_rational(3, 2)};
    for (std::size_t i = 1; i < p; ++i) h.push_back(rng.rational(3, 2));
    const auto left = left_chain_from_hankel(syn.basis_inv, 0, h);
    for (const auto& [lf, rt] : {std::pair{&left, &syn.chains[0].right}, std::pair{&left, &syn.chains[1].right},
                                 std::pair{&syn.chains[1].left, &syn.chains[0].right}}) {
      const GramTable g = gram_table(*lf, *rt);
      EXPECT_TRUE(check_hankel(g));
      if (auto pv = check_parity_vanishing(g)) { EXPECT_TRUE(*pv); }
    }
  }
}

TEST(Biorthogonality, ParityPatternsOnSingleBlocks) {
  RandomSource rng(33);
  for (int t = 0; t < 50; ++t) {
    const std::size_t p = rng.index(1, 6);
    const SynthesizedMatrix syn = random_synth(rng, segre({{q(2), p}}));
    const GramTable g = gram_table(syn.chains[0].left, syn.chains[0].right);
    auto pv = check_parity_vanishing(g);
    ASSERT_TRUE(pv.has_value());
    EXPECT_TRUE(*pv);
    if (p % 2 == 1) { EXPECT_FALSE(middle_product_nonzero(syn.chains[0].left, syn.chains[0].right).is_zero()); }
  }
  // mixed parity: no statement
  EXPECT_FALSE(check_parity_vanishing(GramTable{Matrix(2, 3)}).has_value());
  // an odd table with a nonzero middle-row entry inside the range is rejected
  Matrix m(3, 3);
  m(1, 0) = q(1);
  EXPECT_FALSE(check_parity_vanishing(GramTable{m})->ok);
}

TEST(MiddleProduct, Examples) {
  const std::vector<Vector> u{e(3, 3), e(3, 2), e(3, 1)}, v{e(3, 1), e(3, 2), e(3, 3)};
  EXPECT_EQ(middle_product_nonzero(u, v), q(1));
  std::vector<Vector> v2;
  for (const auto& x : v) v2.push_back(q(2) * x);
  EXPECT_EQ(middle_product_nonzero(u, v2), q(2));
  try {
    middle_product_nonzero(std::vector<Vector>{e(3, 3), e(3, 1), e(3, 1)}, v);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_chain);
  }
  EXPECT_THROW(middle_product_nonzero(std::vector<Vector>{e(2, 1), e(2, 2)}, std::vector<Vector>{e(2, 1), e(2, 2)}),
               Error);
}

TEST(Resolvent, SmallExamples) {
  const Matrix j2 = jordan_block(q(1), 2);
  const ChainPair c{q(1), {e(2, 2), e(2, 1)}, {e(2, 1), e(2, 2)}};
  EXPECT_EQ(resolvent_apply_right(j2, q(0), c, 1), e(2, 1));
  // (J_2(1))^{-1} e2 by the adjugate oracle
  EXPECT_EQ(adjugate_inverse(j2) * e(2, 2), e(2, 2) - e(2, 1));
  EXPECT_EQ(resolvent_apply_right(j2, q(0), c, 2), e(2, 2) - e(2, 1));

  const Matrix j3 = jordan_block(q(2), 3);
  const ChainPair c3{q(2), {e(3, 3), e(3, 2), e(3, 1)}, {e(3, 1), e(3, 2), e(3, 3)}};
  EXPECT_EQ(resolvent_apply_right(j3, q(1), c3, 3), adjugate_inverse(oracle::shifted_by(j3, q(1))) * e(3, 3));
  EXPECT_EQ(resolvent_apply_right(j3, q(1), c3, 3), e(3, 3) - e(3, 2) + e(3, 1));
  try {
    resolvent_apply_right(j3, q(2), c3, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::singular);
  }
}

TEST(Resolvent, RandomChainsRoundTrip) {
  RandomSource rng(34);
  for (int t = 0; t < 50; ++t) {
    const auto s = random_segre(rng, 5, 6);
    const SynthesizedMatrix syn = random_synth(rng, s);
    Scalar lambda = rng.rational(4, 3);
    bool hit = false;
    for (const auto& b : s.blocks()) hit = hit || b.eigenvalue == lambda;
    if (hit) continue;
    const Matrix shifted_a = oracle::shifted_by(syn.a, lambda);
    for (const auto& c : syn.chains) {
      for (std::size_t i = 1; i <= c.right.size(); ++i) {
        EXPECT_EQ(shifted_a * resolvent_apply_right(syn.a, lambda, c, i), c.right[i - 1]);
        EXPECT_EQ(shifted_a.conj_transpose() * resolvent_apply_left(syn.a, lambda, c, i), c.left[i - 1]);
      }
      EXPECT_TRUE(resolvent_orthogonality_check(syn.a, c, lambda));
    }
  }
}

TEST(Resolvent, OrthogonalityExamples) {
  RandomSource rng(35);
  const SynthesizedMatrix syn = random_synth(rng, segre({{q(1, 2), 4}}));
  EXPECT_TRUE(resolvent_orthogonality_check(syn.a, syn.chains[0], q(-1)));
  const SynthesizedMatrix two = random_synth(rng, segre({{q(3), 2}}));
  const Vector x = solve(oracle::shifted_by(two.a, q(0)), two.chains[0].right[0]);
  EXPECT_TRUE(inner(two.chains[0].left[0], x).is_zero());
  EXPECT_TRUE(resolvent_orthogonality_check(two.a, two.chains[0], q(0)));
  const SynthesizedMatrix one = random_synth(rng, segre({{q(3), 1}}));
  EXPECT_TRUE(resolvent_orthogonality_check(one.a, one.chains[0], q(0)));
  EXPECT_THROW(resolvent_orthogonality_check(one.a, one.chains[0], q(3)), Error);
}

TEST(Resolvent, CorruptedChainIsDetected) {
  const Matrix j3 = jordan_block(q(2), 3);
  const ChainPair bad{q(2), {e(3, 3), e(3, 2), e(3, 1)}, {e(3, 1), e(3, 2) + e(3, 3), e(3, 3)}};
  try {
    resolvent_apply_right(j3, q(0), bad, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_chain);
  }
}
