#include <gtest/gtest.h>

#include "sharbly/homology.hpp"
#include "sharbly/simplicial.hpp"

using namespace sharbly;

namespace {
FVector e(uint32_t i, uint32_t dim) {
  FVector v(dim, 0);
  v[i] = 1;
  return v;
}
}  // namespace

TEST(Tits, SmallCases) {
  // T(F_2^2): 3 isolated vertices
  Building t22 = build_tits(2, PrimeField(2));
  EXPECT_EQ(t22.cx.count(0), 3);
  EXPECT_EQ(t22.cx.count(1), 0);
  // T(F_2^3): bipartite incidence graph on 7 lines + 7 planes with 21 edges
  Building t32 = build_tits(3, PrimeField(2));
  EXPECT_EQ(t32.cx.count(0), 14);
  EXPECT_EQ(t32.cx.count(1), 21);
  EXPECT_EQ(t32.cx.count(2), 0);
}

TEST(Tits, F24EulerCharacteristic) {
  Building b = build_tits(4, PrimeField(2));
  EXPECT_EQ(b.cx.count(0), 65);
  EXPECT_EQ(b.cx.count(1), 315);
  EXPECT_EQ(b.cx.count(2), 315);
  EXPECT_EQ(b.cx.count(3), 0);
  // reduced Euler characteristic matches a single Betti number in degree 2
  int64_t chi = -1 + 65 - 315 + 315;
  EXPECT_EQ(chi, 64);
}

TEST(SymplecticTits, SmallCases) {
  Building t1 = build_symplectic_tits(SymplecticSpace(1, PrimeField(2)));
  EXPECT_EQ(t1.cx.count(0), 3);
  EXPECT_EQ(t1.cx.count(1), 0);
  Building t13 = build_symplectic_tits(SymplecticSpace(1, PrimeField(3)));
  EXPECT_EQ(t13.cx.count(0), 4);
  Building t2 = build_symplectic_tits(SymplecticSpace(2, PrimeField(2)));
  EXPECT_EQ(t2.cx.count(0), 30);  // 15 isotropic lines + 15 lagrangian planes
  EXPECT_EQ(t2.cx.count(1), 45);  // 3 lines in each lagrangian
}

TEST(LineComplex, IsotropicExamples) {
  // I^0 of a genus-1 space: distinct lines never pair to zero
  LineComplex i0 = build_line_complex(SymplecticSpace(1, PrimeField(2)), LineComplexKind::I, 0, 1);
  EXPECT_EQ(i0.cx.count(0), 3);
  EXPECT_EQ(i0.cx.count(1), 0);
  // I^0(F_2^4): edges are perpendicular pairs of distinct lines
  SymplecticSpace S(2, PrimeField(2));
  LineComplex i04 = build_line_complex(S, LineComplexKind::I, 0, 2);
  EXPECT_EQ(i04.cx.count(0), 15);
  EXPECT_EQ(i04.cx.count(1), 45);
  EXPECT_EQ(i04.cx.count(2), 15);  // one triangle per lagrangian
  int64_t perp_pairs = 0;
  for (int32_t a = 0; a < 15; ++a)
    for (int32_t b = a + 1; b < 15; ++b)
      if (S.omega(S.lines().rep(a), S.lines().rep(b)) == 0) ++perp_pairs;
  EXPECT_EQ(i04.cx.count(1), perp_pairs);
}

TEST(LineComplex, LEqualsI0InGenusOne) {
  SymplecticSpace S(1, PrimeField(2));
  LineComplex l = build_line_complex(S, LineComplexKind::L, 0, 2);
  LineComplex i0 = build_line_complex(S, LineComplexKind::I, 0, 2);
  for (int d = 0; d <= 2; ++d) EXPECT_EQ(l.cx.count(d), i0.cx.count(d));
}

TEST(LineComplex, DownwardClosureSample) {
  SymplecticSpace S(2, PrimeField(3));
  LineComplex i1 = build_line_complex(S, LineComplexKind::I, 1, 3);
  SplitMix64 rng(5);
  int checked = 0;
  for (int d = 1; d <= 3 && checked < 1000; ++d) {
    for (int64_t i = 0; i < i1.cx.count(d) && checked < 1000; i += 1 + rng.below(7)) {
      const Simplex& s = i1.cx.simplices(d)[i];
      for (size_t drop = 0; drop < s.size(); ++drop) {
        Simplex f = s;
        f.erase(f.begin() + drop);
        EXPECT_TRUE(i1.cx.has(f));
      }
      ++checked;
    }
  }
}

TEST(ChainComplex, EdgeBoundary) {
  SymplecticSpace S(1, PrimeField(2));
  LineComplex k = build_line_complex(S, LineComplexKind::K, 0, 1);
  ChainComplex C = chain_complex(k.cx, false);
  // boundary of [v0, v1] is [v1] - [v0]
  const Simplex& edge = k.cx.simplices(1)[0];
  IntSum b = simplex_boundary(edge, k.cx);
  EXPECT_EQ(b.coeff(edge[0]), -1);
  EXPECT_EQ(b.coeff(edge[1]), 1);
  EXPECT_EQ(C.boundary(1).rows, 3);
}

TEST(ChainComplex, BoundarySquared) {
  Building t = build_symplectic_tits(SymplecticSpace(2, PrimeField(2)));
  ChainComplex C = chain_complex(t.cx, true);
  for (int k = C.lo + 2; k <= C.hi(); ++k) {
    SparseMat prod = C.boundary(k - 1).multiply(C.boundary(k));
    EXPECT_TRUE(prod.is_zero()) << "d d != 0 at degree " << k;
  }
}

TEST(ChainComplex, RelativeKLGenusOne) {
  // (K, L) for a genus-1 space: all vertices lie in L, the 3 edges and the
  // triangle survive
  SymplecticSpace S(1, PrimeField(2));
  LineComplex k = build_line_complex(S, LineComplexKind::K, 0, 2);
  LineComplex l = build_line_complex(S, LineComplexKind::L, 0, 2);
  RelativeComplex rel = relative_chain_complex(k.cx, l.cx);
  EXPECT_EQ(rel.cc.dim(0), 0);
  EXPECT_EQ(rel.cc.dim(1), 3);
  EXPECT_EQ(rel.cc.dim(2), 1);
}

TEST(ChainComplex, RelativeRejectsNonSubcomplex) {
  SymplecticSpace S(1, PrimeField(3));
  LineComplex k = build_line_complex(S, LineComplexKind::K, 0, 1);
  SimplicialComplex other(2);
  other.add({0, 1});
  SimplicialComplex bigger(5);
  bigger.add({0, 4});
  EXPECT_THROW(relative_chain_complex(k.cx, bigger), std::invalid_argument);
}

TEST(Apartment, TwoTermCase) {
  PrimeField F(3);
  Building b = build_tits(2, F);
  IntSum a = apartment_cycle(b, {{1, 0}, {0, 1}}, F);
  EXPECT_EQ(a.size(), 2u);
  EXPECT_EQ(a.coeff(b.vertex(rref({{1, 0}}, 2, F))), 1);
  EXPECT_EQ(a.coeff(b.vertex(rref({{0, 1}}, 2, F))), -1);
}

TEST(Apartment, SixFlagsWithZeroBoundary) {
  PrimeField F(2);
  Building b = build_tits(3, F);
  IntSum a = apartment_cycle(b, {e(0, 3), e(1, 3), e(2, 3)}, F);
  EXPECT_EQ(a.size(), 6u);
  EXPECT_TRUE(boundary_of_chain(a, 1, b.cx).is_zero());
}

TEST(Apartment, RejectsNonBasis) {
  PrimeField F(2);
  Building b = build_tits(3, F);
  EXPECT_THROW(apartment_cycle(b, {e(0, 3), e(0, 3), e(1, 3)}, F), std::invalid_argument);
}

TEST(SymplecticApartment, BaseCase) {
  SymplecticSpace S(1, PrimeField(3));
  LineComplex i0 = build_line_complex(S, LineComplexKind::I, 0, 1);
  IntSum c = symplectic_apartment_cycle(i0, S, {e(0, 2), e(1, 2)});
  EXPECT_EQ(c.coeff(i0.vertex(S.lines().line_of(e(0, 2)))), 1);
  EXPECT_EQ(c.coeff(i0.vertex(S.lines().line_of(e(1, 2)))), -1);
}

TEST(SymplecticApartment, GenusTwoJoinOfEdges) {
  SymplecticSpace S(2, PrimeField(2));
  LineComplex i0 = build_line_complex(S, LineComplexKind::I, 0, 2);
  IntSum c = symplectic_apartment_cycle(i0, S, {e(0, 4), e(1, 4), e(2, 4), e(3, 4)});
  EXPECT_EQ(c.size(), 4u);
  EXPECT_TRUE(boundary_of_chain(c, 1, i0.cx).is_zero());
}

TEST(SymplecticApartment, RejectsBadPairingTable) {
  SymplecticSpace S(2, PrimeField(2));
  LineComplex i0 = build_line_complex(S, LineComplexKind::I, 0, 2);
  EXPECT_THROW(symplectic_apartment_cycle(i0, S, {e(0, 4), e(2, 4), e(1, 4), e(3, 4)}),
               std::invalid_argument);
}

TEST(Join, BilinearityAndErrors) {
  SymplecticSpace S(2, PrimeField(2));
  LineComplex i0 = build_line_complex(S, LineComplexKind::I, 0, 2);
  PrimeField F(2);
  int32_t a = i0.vertex(S.lines().line_of(e(0, 4)));
  int32_t b = i0.vertex(S.lines().line_of(e(2, 4)));
  FVector sum = e(0, 4);
  sum[2] = 1;  // e1 + e2 spans the same isotropic plane
  int32_t c = i0.vertex(S.lines().line_of(sum));
  // [v] * [w] is the edge [v, w]
  IntSum va = IntSum::single(a, 1);
  IntSum vb = IntSum::single(b, 1);
  IntSum edge = join(va, 0, vb, 0, i0.cx);
  EXPECT_EQ(edge.size(), 1u);
  // ([a]-[b]) * [c] = [a,c] - [b,c]
  IntSum diff = va - vb;
  IntSum two = join(diff, 0, IntSum::single(c, 1), 0, i0.cx);
  EXPECT_EQ(two.size(), 2u);
  // joining chains sharing a vertex fails
  EXPECT_THROW(join(va, 0, va, 0, i0.cx), std::invalid_argument);
  // non-perpendicular pair is not a simplex of I^0
  int32_t abar = i0.vertex(S.lines().line_of(e(1, 4)));
  EXPECT_THROW(join(va, 0, IntSum::single(abar, 1), 0, i0.cx), std::invalid_argument);
}

TEST(Join, LeibnizSign) {
  // d(c1 * c2) = (d c1) * c2 + (-1)^{k+1} c1 * (d c2), with the augmented
  // convention d[v] = [] and [] * c = c.
  SymplecticSpace S(2, PrimeField(3));
  LineComplex i0 = build_line_complex(S, LineComplexKind::I, 0, 3);
  SplitMix64 rng(17);
  auto augment = [](const IntSum& c) {
    int64_t t = 0;
    for (auto& [i, x] : c.terms()) t += x;
    return t;
  };
  int done = 0;
  for (int64_t i = 0; i < i0.cx.count(1) && done < 30; ++i) {
    for (int64_t j = 0; j < i0.cx.count(0) && done < 30; ++j) {
      IntSum c1 = IntSum::single(static_cast<int32_t>(i), 1 + static_cast<int64_t>(rng.below(3)));
      IntSum c2 = IntSum::single(static_cast<int32_t>(j), 1);
      IntSum joined;
      try {
        joined = join(c1, 1, c2, 0, i0.cx);
      } catch (const std::invalid_argument&) {
        continue;
      }
      // degree-1 c1: d(c1*c2) = (d c1)*c2 + (+1) * aug(c2) * c1
      IntSum lhs = boundary_of_chain(joined, 2, i0.cx);
      IntSum rhs = join(boundary_of_chain(c1, 1, i0.cx), 0, c2, 0, i0.cx) + c1 * augment(c2);
      EXPECT_EQ(lhs, rhs);
      ++done;
    }
  }
  EXPECT_GT(done, 0);
}

TEST(Equivariance, ApartmentsUnderRandomSymplectic) {
  SymplecticSpace S(2, PrimeField(2));
  LineComplex i0 = build_line_complex(S, LineComplexKind::I, 0, 2);
  PrimeField F(2);
  std::vector<FVector> basis = {e(0, 4), e(1, 4), e(2, 4), e(3, 4)};
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    Matrix a = random_symplectic(S, seed);
    std::vector<FVector> moved;
    for (const auto& v : basis) moved.push_back(apply_matrix(a, v, F));
    IntSum lhs = symplectic_apartment_cycle(i0, S, moved);
    IntSum rhs = map_chain(symplectic_apartment_cycle(i0, S, basis), 1, i0.cx,
                           line_vertex_map(i0, S, a));
    EXPECT_EQ(lhs, rhs);
  }
}
