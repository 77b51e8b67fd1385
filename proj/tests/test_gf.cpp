#include <gtest/gtest.h>

#include "sharbly/field.hpp"
#include "sharbly/subspace.hpp"

using namespace sharbly;

TEST(PrimeField, RejectsComposites) {
  EXPECT_NO_THROW(PrimeField(2));
  EXPECT_NO_THROW(PrimeField(1000003));
  EXPECT_THROW(PrimeField(1), std::invalid_argument);
  EXPECT_THROW(PrimeField(4), std::invalid_argument);
  EXPECT_THROW(PrimeField(91), std::invalid_argument);
}

TEST(PrimeField, Arithmetic) {
  PrimeField F(7);
  EXPECT_EQ(F.add(5, 4), 2u);
  EXPECT_EQ(F.sub(2, 5), 4u);
  EXPECT_EQ(F.mul(3, 5), 1u);
  EXPECT_EQ(F.inv(3), 5u);
  EXPECT_EQ(F.reduce(-1), 6u);
  for (uint32_t a = 1; a < 7; ++a) EXPECT_EQ(F.mul(a, F.inv(a)), 1u);
}

TEST(Rref, DuplicateRowCollapses) {
  PrimeField F(2);
  Subspace w = rref({{1, 0}, {1, 0}}, 2, F);
  EXPECT_EQ(w.dim(), 1u);
  EXPECT_EQ(w.basis()[0], FVector({1, 0}));
}

TEST(Rref, EliminationNormalizesPivots) {
  PrimeField F(2);
  Subspace w = rref({{1, 1}, {0, 1}}, 2, F);
  EXPECT_EQ(w.dim(), 2u);
  EXPECT_EQ(w.basis()[0], FVector({1, 0}));
  EXPECT_EQ(w.basis()[1], FVector({0, 1}));
}

TEST(Rref, EmptySpan) {
  PrimeField F(3);
  Subspace w = rref({}, 4, F);
  EXPECT_EQ(w.dim(), 0u);
}

TEST(Rref, CanonicalAcrossSpanningSets) {
  // random row sets with equal span reduce to identical bases
  PrimeField F(3);
  SplitMix64 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    uint32_t dim = 2 + rng.below(4);
    uint32_t k = 1 + rng.below(dim);
    Matrix rows;
    for (uint32_t i = 0; i < k; ++i) {
      FVector v(dim);
      for (auto& x : v) x = rng.below(3);
      rows.push_back(v);
    }
    Subspace w1 = rref(rows, dim, F);
    // second generating set: random invertible combinations plus noise rows
    Matrix rows2;
    for (uint32_t i = 0; i < k + 2; ++i) {
      FVector v(dim, 0);
      for (uint32_t j = 0; j < k; ++j) {
        uint32_t c = rng.below(3);
        for (uint32_t t = 0; t < dim; ++t) v[t] = F.add(v[t], F.mul(c, rows[j][t]));
      }
      rows2.push_back(v);
    }
    rows2.insert(rows2.end(), rows.begin(), rows.end());
    Subspace w2 = rref(rows2, dim, F);
    EXPECT_EQ(w1, w2);
  }
}

TEST(Membership, Basics) {
  PrimeField F(2);
  Subspace w = rref({{1, 0, 0, 0}, {0, 1, 0, 0}}, 4, F);
  EXPECT_TRUE(membership({1, 0, 0, 0}, w));
  EXPECT_TRUE(membership({0, 0, 0, 0}, w));
  EXPECT_FALSE(membership({1, 0, 1, 0}, w));
  Subspace e1 = rref({{1, 0}}, 2, F);
  EXPECT_FALSE(membership({1, 1}, e1));
  EXPECT_THROW(membership({1, 0, 0}, e1), std::invalid_argument);
}

TEST(Membership, AgreesWithBruteForceSpan) {
  for (uint32_t p : {2u, 3u}) {
    PrimeField F(p);
    SplitMix64 rng(7 * p);
    for (int trial = 0; trial < 50; ++trial) {
      uint32_t dim = 2 + rng.below(2);
      uint32_t k = 1 + rng.below(3);
      Matrix rows;
      for (uint32_t i = 0; i < k; ++i) {
        FVector v(dim);
        for (auto& x : v) x = rng.below(p);
        rows.push_back(v);
      }
      Subspace w = rref(rows, dim, F);
      // enumerate the span explicitly
      std::set<FVector> span;
      std::vector<uint32_t> coeff(w.dim(), 0);
      for (;;) {
        FVector v(dim, 0);
        for (uint32_t i = 0; i < w.dim(); ++i)
          for (uint32_t j = 0; j < dim; ++j)
            v[j] = F.add(v[j], F.mul(coeff[i], w.basis()[i][j]));
        span.insert(v);
        uint32_t i = 0;
        while (i < w.dim() && ++coeff[i] == p) coeff[i++] = 0;
        if (i == w.dim()) break;
      }
      // all vectors of the ambient space
      FVector v(dim, 0);
      for (;;) {
        EXPECT_EQ(membership(v, w), span.count(v) == 1);
        uint32_t i = 0;
        while (i < dim && ++v[i] == p) v[i++] = 0;
        if (i == dim) break;
      }
    }
  }
}

TEST(Lines, Counts) {
  EXPECT_EQ(enumerate_lines(2, PrimeField(2)).size(), 3u);
  EXPECT_EQ(enumerate_lines(4, PrimeField(2)).size(), 15u);
  EXPECT_EQ(enumerate_lines(4, PrimeField(3)).size(), 40u);
}

TEST(Lines, OrderIsTotalAndStable) {
  auto lines = enumerate_lines(4, PrimeField(3));
  auto sorted = lines;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(lines.size(), sorted.size());
  for (size_t i = 0; i < lines.size(); ++i) EXPECT_EQ(lines[i].rep, sorted[i].rep);
  auto twice = sorted;
  std::sort(twice.begin(), twice.end());
  EXPECT_EQ(twice.size(), sorted.size());
  for (size_t i = 0; i < twice.size(); ++i) EXPECT_EQ(twice[i].rep, sorted[i].rep);
}

TEST(Lines, CanonicalRepsAreDeduplicated) {
  PrimeField F(3);
  LineTable t(2, F);
  // (1,2) and (2,1)=2*(1,2) are the same line
  EXPECT_EQ(t.line_of({1, 2}), t.line_of({2, 1}));
  EXPECT_NE(t.line_of({1, 2}), t.line_of({1, 1}));
  EXPECT_EQ(t.size(), 4u);
}

TEST(Lines, BudgetGuard) {
  EXPECT_THROW(LineTable(30, PrimeField(5)), budget_error);
}

TEST(Subspaces, EnumerationCountsGaussian) {
  // Gaussian binomial [4 choose 2]_2 = 35, [4 choose 1]_3 = 40
  EXPECT_EQ(enumerate_subspaces(4, 2, PrimeField(2)).size(), 35u);
  EXPECT_EQ(enumerate_subspaces(4, 1, PrimeField(3)).size(), 40u);
  EXPECT_EQ(enumerate_subspaces(3, 2, PrimeField(2)).size(), 7u);
}

TEST(Subspaces, Dim1OrderMatchesLineOrder) {
  PrimeField F(3);
  LineTable t(4, F);
  auto subs = enumerate_subspaces(4, 1, F);
  ASSERT_EQ(subs.size(), t.size());
  for (size_t i = 0; i < subs.size(); ++i) EXPECT_EQ(subs[i].basis()[0], t.rep(static_cast<int32_t>(i)));
}
