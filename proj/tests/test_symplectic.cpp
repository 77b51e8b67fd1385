#include <gtest/gtest.h>

#include <set>

#include "sharbly/symplectic.hpp"

using namespace sharbly;

namespace {
FVector e(uint32_t i, uint32_t dim) {
  FVector v(dim, 0);
  v[i] = 1;
  return v;
}
FVector add(const FVector& a, const FVector& b, const PrimeField& F) {
  FVector r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] = F.add(r[i], b[i]);
  return r;
}
}  // namespace

// basis order is e1, e1bar, e2, e2bar, ...
TEST(Omega, PairingTable) {
  SymplecticSpace S(2, PrimeField(5));
  EXPECT_EQ(S.omega(e(0, 4), e(1, 4)), 1u);   // omega(e1, e1bar) = 1
  EXPECT_EQ(S.omega(e(1, 4), e(0, 4)), 4u);   // antisymmetric
  EXPECT_EQ(S.omega(e(0, 4), e(3, 4)), 0u);   // omega(e1, e2bar) = 0
  EXPECT_EQ(S.omega(e(0, 4), e(2, 4)), 0u);
  SplitMix64 rng(3);
  for (int i = 0; i < 20; ++i) {
    FVector v(4);
    for (auto& x : v) x = rng.below(5);
    EXPECT_EQ(S.omega(v, v), 0u);  // alternating
  }
  EXPECT_THROW(S.omega({1, 0}, e(0, 4)), std::invalid_argument);
}

TEST(Radical, WorkedExample) {
  // span{e1+e2, e1bar, e2bar}: radical is the line of e1bar - e2bar
  for (uint32_t p : {2u, 3u}) {
    SymplecticSpace S(2, PrimeField(p));
    PrimeField F(p);
    Subspace w = rref({add(e(0, 4), e(2, 4), F), e(1, 4), e(3, 4)}, 4, F);
    Subspace r = radical(w, S);
    EXPECT_EQ(r.dim(), 1u);
    FVector diff = add(e(1, 4), {0, 0, 0, F.neg(1)}, F);
    EXPECT_TRUE(r.contains(diff));
  }
}

TEST(Radical, NondegenerateAndIsotropicCases) {
  SymplecticSpace S(2, PrimeField(2));
  PrimeField F(2);
  Subspace h = rref({e(0, 4), e(1, 4)}, 4, F);
  EXPECT_EQ(radical(h, S).dim(), 0u);
  Subspace iso = rref({e(0, 4), e(2, 4)}, 4, F);
  EXPECT_EQ(radical(iso, S), iso);
}

TEST(Genus, Basics) {
  SymplecticSpace S(2, PrimeField(2));
  PrimeField F(2);
  EXPECT_EQ(genus(rref({e(0, 4), e(1, 4)}, 4, F), S), 1u);
  EXPECT_EQ(genus(rref({e(0, 4), e(2, 4)}, 4, F), S), 0u);
  EXPECT_EQ(genus(S.whole(), S), 2u);
}

TEST(Genus, DimensionLaw) {
  // dim W = 2 genus(W) + dim rad(W) on random subspaces, n <= 3, p <= 3
  for (uint32_t p : {2u, 3u}) {
    for (uint32_t n : {1u, 2u, 3u}) {
      SymplecticSpace S(n, PrimeField(p));
      PrimeField F(p);
      SplitMix64 rng(n * 100 + p);
      for (int trial = 0; trial < 90; ++trial) {
        uint32_t k = 1 + rng.below(2 * n);
        Matrix rows;
        for (uint32_t i = 0; i < k; ++i) {
          FVector v(2 * n);
          for (auto& x : v) x = rng.below(p);
          rows.push_back(v);
        }
        Subspace w = rref(rows, 2 * n, F);
        EXPECT_EQ(w.dim(), 2 * genus(w, S) + radical(w, S).dim());
      }
    }
  }
}

TEST(Perp, Examples) {
  SymplecticSpace S(2, PrimeField(2));
  PrimeField F(2);
  Subspace h1 = rref({e(0, 4), e(1, 4)}, 4, F);
  EXPECT_EQ(perp(h1, S), rref({e(2, 4), e(3, 4)}, 4, F));
  EXPECT_EQ(perp(S.whole(), S).dim(), 0u);
  Subspace l = rref({e(0, 4)}, 4, F);
  EXPECT_EQ(perp(l, S), rref({e(0, 4), e(2, 4), e(3, 4)}, 4, F));
}

TEST(Perp, InvolutionAndSymplecticCriterion) {
  SymplecticSpace S(2, PrimeField(2));
  PrimeField F(2);
  // brute force over all subspaces of F_2^4
  for (uint32_t k = 0; k <= 4; ++k)
    for (const auto& w : enumerate_subspaces(4, k, F)) {
      EXPECT_EQ(perp(perp(w, S), S), w);
      EXPECT_EQ(perp(w, S).dim(), 4 - w.dim());
      bool symp = is_symplectic(w, S);
      bool rad0 = radical(w, S).dim() == 0;
      Subspace meet_zero = [&] {
        // W cap perp(W) = rad(W)
        return radical(w, S);
      }();
      EXPECT_EQ(symp, rad0);
      EXPECT_EQ(symp, meet_zero.dim() == 0);
    }
}

TEST(ProjectPerp, Examples) {
  {
    SymplecticSpace S(2, PrimeField(2));
    PrimeField F(2);
    Subspace X = rref({e(0, 4), e(1, 4)}, 4, F);
    EXPECT_EQ(S.lines().rep(project_perp(add(e(0, 4), e(2, 4), F), X, S)), e(2, 4));
    EXPECT_EQ(S.lines().rep(project_perp(e(3, 4), X, S)), e(3, 4));
    EXPECT_THROW(project_perp(e(0, 4), X, S), std::invalid_argument);
  }
  {
    SymplecticSpace S(2, PrimeField(3));
    PrimeField F(3);
    Subspace X = rref({e(2, 4), e(3, 4)}, 4, F);
    FVector v = add(add(e(0, 4), e(2, 4), F), e(3, 4), F);
    EXPECT_EQ(S.lines().rep(project_perp(v, X, S)), e(0, 4));
  }
}

TEST(ProjectPerp, PerpendicularityProperty) {
  SymplecticSpace S(2, PrimeField(3));
  PrimeField F(3);
  SplitMix64 rng(11);
  auto symps = enum_symplectic_subspaces(S, 1);
  for (int trial = 0; trial < 100; ++trial) {
    const Subspace& X = symps[rng.below(symps.size())];
    FVector v(4);
    for (auto& x : v) x = rng.below(3);
    if (X.contains(v)) continue;
    FVector pv = S.lines().rep(project_perp(v, X, S));
    for (const auto& b : X.basis()) EXPECT_EQ(S.omega(pv, b), 0u);
  }
}

TEST(CompleteHyperbolic, Examples) {
  SymplecticSpace S(2, PrimeField(2));
  PrimeField F(2);
  auto hb = complete_hyperbolic(rref({e(0, 4), e(1, 4)}, 4, F), S);
  ASSERT_EQ(hb.size(), 2u);
  EXPECT_EQ(hb[0], e(0, 4));
  EXPECT_EQ(hb[1], e(1, 4));
  auto hb4 = complete_hyperbolic(S.whole(), S);
  ASSERT_EQ(hb4.size(), 4u);
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = i + 1; j < 4; ++j) {
      uint32_t expect = (j == i + 1 && i % 2 == 0) ? 1 : 0;
      EXPECT_EQ(S.omega(hb4[i], hb4[j]), expect);
    }
  EXPECT_THROW(complete_hyperbolic(rref({e(0, 4), e(2, 4)}, 4, F), S), std::invalid_argument);
}

TEST(EnumSymplectic, Counts) {
  EXPECT_EQ(enum_symplectic_subspaces(SymplecticSpace(2, PrimeField(2)), 1).size(), 20u);
  EXPECT_EQ(enum_symplectic_subspaces(SymplecticSpace(2, PrimeField(3)), 1).size(), 90u);
  EXPECT_EQ(enum_symplectic_subspaces(SymplecticSpace(1, PrimeField(2)), 1).size(), 1u);
}

TEST(EnumSymplectic, BruteForceCrossCheck) {
  // ordered hyperbolic pairs / per-plane count
  SymplecticSpace S(2, PrimeField(2));
  std::set<std::string> planes;
  PrimeField F(2);
  for (uint32_t a = 1; a < 16; ++a)
    for (uint32_t b = 1; b < 16; ++b) {
      FVector u = {a & 1u, (a >> 1) & 1u, (a >> 2) & 1u, (a >> 3) & 1u};
      FVector v = {b & 1u, (b >> 1) & 1u, (b >> 2) & 1u, (b >> 3) & 1u};
      if (S.omega(u, v) != 1) continue;
      planes.insert(rref({u, v}, 4, F).key());
    }
  EXPECT_EQ(planes.size(), 20u);
}

TEST(Decompositions, CountsAndInvariants) {
  SymplecticSpace S(2, PrimeField(2));
  auto decs = enum_decompositions(S, {1, 1});
  EXPECT_EQ(decs.size(), 20u);
  for (const auto& d : decs) {
    ASSERT_EQ(d.factors.size(), 2u);
    uint32_t total = 0;
    for (const auto& w : d.factors) {
      EXPECT_TRUE(is_symplectic(w, S));
      total += w.dim();
    }
    EXPECT_EQ(total, 4u);
    for (const auto& b0 : d.factors[0].basis())
      for (const auto& b1 : d.factors[1].basis()) EXPECT_EQ(S.omega(b0, b1), 0u);
    EXPECT_EQ(span_union(d.factors[0], d.factors[1], S.field()).dim(), 4u);
  }
  EXPECT_EQ(enum_decompositions(S, {2}).size(), 1u);
  EXPECT_THROW(enum_decompositions(S, {1, 1, 1}), std::invalid_argument);
}

TEST(RandomSymplectic, DeterministicAndFormPreserving) {
  SymplecticSpace S(2, PrimeField(3));
  Matrix a = random_symplectic(S, 99);
  Matrix b = random_symplectic(S, 99);
  EXPECT_EQ(a, b);
  Matrix c = random_symplectic(S, 100);
  EXPECT_NE(a, c);  // overwhelmingly likely distinct
}

TEST(RandomSymplectic, LandsInSp2F2) {
  // Sp_2(F_2) = GL_2(F_2) has 6 elements
  SymplecticSpace S(1, PrimeField(2));
  std::set<Matrix> group;
  for (uint32_t a = 0; a < 2; ++a)
    for (uint32_t b = 0; b < 2; ++b)
      for (uint32_t c = 0; c < 2; ++c)
        for (uint32_t d = 0; d < 2; ++d)
          if ((a * d + b * c) % 2 == 1) group.insert({{a, b}, {c, d}});
  ASSERT_EQ(group.size(), 6u);
  for (uint64_t seed = 0; seed < 20; ++seed)
    EXPECT_TRUE(group.count(random_symplectic(S, seed)));
}
