#pragma once

#include <array>
#include <numeric>

#include "sharbly/standard_sharbly.hpp"

namespace sharbly {

// Columns of an integer matrix forming a symplectic basis of Z^{2n} with the
// standard interleaved form: A^T J A = J exactly.
struct IntegralBasis {
  std::vector<std::vector<int64_t>> cols;  // 2n columns of length 2n

  uint32_t dim() const { return static_cast<uint32_t>(cols.size()); }
  int64_t height() const {
    int64_t h = 0;
    for (const auto& c : cols)
      for (int64_t x : c) h = std::max(h, std::abs(x));
    return h;
  }
};

// Standard integral symplectic form on interleaved coordinates.
inline int64_t int_omega(const std::vector<int64_t>& u, const std::vector<int64_t>& v) {
  int64_t acc = 0;
  for (size_t i = 0; i + 1 < u.size(); i += 2) acc += u[i] * v[i + 1] - u[i + 1] * v[i];
  return acc;
}

inline bool is_integral_symplectic(const IntegralBasis& b) {
  uint32_t d = b.dim();
  for (uint32_t i = 0; i < d; ++i)
    for (uint32_t j = 0; j < d; ++j) {
      int64_t expect = (j == i + 1 && i % 2 == 0) ? 1 : (i == j + 1 && j % 2 == 0) ? -1 : 0;
      if (int_omega(b.cols[i], b.cols[j]) != expect) return false;
    }
  return true;
}

// Identity times 5..20 seeded integral symplectic transvections,
// rejection-sampled to the height bound.
inline IntegralBasis random_integral_basis(uint32_t n, int64_t height_bound, uint64_t seed,
                                           int max_tries = 10000) {
  SplitMix64 rng(seed);
  uint32_t d = 2 * n;
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    IntegralBasis b;
    b.cols.assign(d, std::vector<int64_t>(d, 0));
    for (uint32_t i = 0; i < d; ++i) b.cols[i][i] = 1;
    uint32_t count = 5 + static_cast<uint32_t>(rng.below(16));
    bool ok = true;
    for (uint32_t t = 0; t < count && ok; ++t) {
      std::vector<int64_t> u(d, 0);
      bool nz = false;
      for (auto& x : u) {
        x = static_cast<int64_t>(rng.below(3)) - 1;
        if (x) nz = true;
      }
      if (!nz) u[rng.below(d)] = 1;
      int64_t c = static_cast<int64_t>(rng.below(2)) * 2 - 1;  // +-1
      for (auto& col : b.cols) {
        int64_t w = c * int_omega(col, u);
        for (uint32_t r = 0; r < d; ++r) col[r] += w * u[r];
      }
      if (b.height() > height_bound) ok = false;
    }
    if (!ok) continue;
    if (!is_integral_symplectic(b)) throw std::logic_error("transvection product broke the form");
    return b;
  }
  throw std::runtime_error("sampling failed; try a larger height bound");
}

// Reduce columns mod p, pair them, and emit the genus-one tensor generator
// with the sign of sorting each pair.
inline std::pair<TensorGen, int> mod_p_reduce(const IntegralBasis& b, const SymplecticSpace& S) {
  uint32_t p = S.field().p();
  uint32_t d = b.dim();
  if (d != S.dim()) throw std::invalid_argument("dimension mismatch");
  std::vector<FVector> red(d, FVector(d, 0));
  for (uint32_t i = 0; i < d; ++i)
    for (uint32_t j = 0; j < d; ++j) red[i][j] = S.field().reduce(b.cols[i][j]);
  // a symplectic Z-basis reduces to a symplectic F_p basis
  for (uint32_t i = 0; i < d; ++i)
    for (uint32_t j = i + 1; j < d; ++j) {
      uint32_t expect = (j == i + 1 && i % 2 == 0) ? 1 : 0;
      if (S.omega(red[i], red[j]) != expect)
        throw std::logic_error("mod-p reduction is not a symplectic basis");
    }
  std::vector<Subspace> spaces;
  std::vector<std::vector<int32_t>> tuples;
  for (uint32_t i = 0; i < d; i += 2) {
    spaces.push_back(Subspace({red[i], red[i + 1]}, d, S.field()));
    tuples.push_back({S.lines().line_of(red[i]), S.lines().line_of(red[i + 1])});
  }
  return make_tensor_gen(std::move(spaces), std::move(tuples));
}

enum class RelKind { Perm, Byk1, Byk2 };

struct IntegralTerm {
  IntegralBasis basis;
  int64_t coeff = 0;
};

// Signed permutation of the 2n slots preserving the pair blocks.
inline bool is_signed_permutation(const std::vector<uint32_t>& sigma) {
  uint32_t d = static_cast<uint32_t>(sigma.size());
  if (d % 2 != 0) return false;
  std::vector<char> seen(d, 0);
  for (uint32_t v : sigma) {
    if (v >= d || seen[v]) return false;
    seen[v] = 1;
  }
  for (uint32_t i = 0; i < d; i += 2)
    if (sigma[i] / 2 != sigma[i + 1] / 2) return false;
  return true;
}

inline int permutation_parity(const std::vector<uint32_t>& sigma) {
  int sign = 1;
  for (size_t i = 0; i < sigma.size(); ++i)
    for (size_t j = i + 1; j < sigma.size(); ++j)
      if (sigma[i] > sigma[j]) sign = -sign;
  return sign;
}

// The left-minus-right formal sum of the cited relation over integral bases.
inline std::vector<IntegralTerm> relation_instance(RelKind kind, const IntegralBasis& b,
                                                   const std::vector<uint32_t>& sigma,
                                                   int64_t a = 1, int64_t bb = 1) {
  std::vector<IntegralTerm> out;
  uint32_t d = b.dim();
  switch (kind) {
    case RelKind::Perm: {
      if (!is_signed_permutation(sigma) || sigma.size() != d)
        throw std::invalid_argument("not a signed permutation of the slots");
      IntegralBasis permuted;
      permuted.cols.resize(d);
      for (uint32_t i = 0; i < d; ++i) permuted.cols[i] = b.cols[sigma[i]];
      out.push_back({b, 1});
      out.push_back({std::move(permuted), -permutation_parity(sigma)});
      break;
    }
    case RelKind::Byk1: {
      if (a != 1 && a != -1) throw std::invalid_argument("a must be a unit of Z");
      if (bb != 1 && bb != -1) throw std::invalid_argument("b must be a unit of Z");
      std::vector<int64_t> mix(d);
      for (uint32_t r = 0; r < d; ++r) mix[r] = a * b.cols[0][r] + bb * b.cols[1][r];
      IntegralBasis t2 = b, t3 = b;
      t2.cols[1] = mix;
      t3.cols[0] = mix;
      out.push_back({b, 1});
      out.push_back({std::move(t2), -1});
      out.push_back({std::move(t3), -1});
      break;
    }
    case RelKind::Byk2: {
      if (d < 4) throw std::invalid_argument("the two-pair relation needs genus >= 2");
      if (a != 1 && a != -1) throw std::invalid_argument("a must be a unit of Z");
      std::vector<int64_t> v1 = b.cols[0], v1b = b.cols[1], v2 = b.cols[2], v2b = b.cols[3];
      std::vector<int64_t> v1b_m(d), v2_p(d);
      for (uint32_t r = 0; r < d; ++r) {
        v1b_m[r] = v1b[r] - a * v2b[r];
        v2_p[r] = v2[r] + a * v1[r];
      }
      IntegralBasis t2 = b, t3 = b;
      t2.cols[1] = v1b_m;
      t2.cols[2] = v2_p;
      t3.cols[0] = v1b_m;
      t3.cols[1] = v2;
      t3.cols[2] = v2_p;
      t3.cols[3] = v1b;
      out.push_back({b, 1});
      out.push_back({std::move(t2), -1});
      out.push_back({std::move(t3), -1});
      break;
    }
  }
  return out;
}

// True iff units of Z surject onto the units of F_p.
inline bool unit_surjectivity(uint32_t p) { return p <= 3; }

// x a + y b = g >= 0.
inline int64_t ext_gcd(int64_t a, int64_t b, int64_t& x, int64_t& y) {
  if (b == 0) {
    x = a >= 0 ? 1 : -1;
    y = 0;
    return std::abs(a);
  }
  int64_t x1, y1;
  int64_t g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

struct LiftCheck {
  bool in_img = false;
  std::vector<Rat> reduced;  // coordinates over V0
};

// Reduce an instance mod p termwise and test membership in im(d1).
inline LiftCheck check_relation_lifts(const std::vector<IntegralTerm>& instance,
                                      const SymplecticSpace& S, PresentationData& P,
                                      RankConfig cfg = {}) {
  LiftCheck out;
  out.reduced.assign(P.v0.gens.size(), Rat(0));
  for (const auto& term : instance) {
    auto [gen, sign] = mod_p_reduce(term.basis, S);
    out.reduced[P.v0.of(gen)] += Rat(static_cast<long>(term.coeff * sign));
  }
  out.in_img = presentation_in_image(P, S, out.reduced, cfg);
  return out;
}

// Exact integral symplectic lift of a V0 generator: lift the factor pairs
// columnwise, then repair pairings without moving anything mod p. Every
// correction is a multiple of p, so the reduction is untouched.
inline IntegralBasis lift_v0_generator(const TensorGen& g, const SymplecticSpace& S) {
  const PrimeField& F = S.field();
  uint32_t p = F.p();
  uint32_t d = S.dim();
  IntegralBasis b;
  for (size_t i = 0; i < g.factors.size(); ++i) {
    if (g.factors[i].size() != 2) throw std::invalid_argument("not a V0 generator");
    FVector l0 = S.lines().rep(g.factors[i][0]);
    FVector l1 = S.lines().rep(g.factors[i][1]);
    // scale the partner so the pair pairs to 1 mod p
    uint32_t u = S.omega(l0, l1);
    if (u == 0) throw std::invalid_argument("factor pair does not span a symplectic plane");
    uint32_t s = F.inv(u);
    for (auto& x : l1) x = F.mul(x, s);
    std::vector<int64_t> c0(l0.begin(), l0.end()), c1(l1.begin(), l1.end());
    b.cols.push_back(std::move(c0));
    b.cols.push_back(std::move(c1));
  }
  // self-adjoint projection away from the exact hyperbolic pairs fixed so far
  auto project_prev = [&](std::vector<int64_t> x, size_t pairs) {
    for (size_t q = 0; q < pairs; ++q) {
      int64_t al = int_omega(x, b.cols[2 * q + 1]);
      int64_t be = int_omega(x, b.cols[2 * q]);
      for (uint32_t r = 0; r < d; ++r) x[r] += -al * b.cols[2 * q][r] + be * b.cols[2 * q + 1][r];
    }
    return x;
  };
  for (size_t q = 0; q < b.cols.size() / 2; ++q) {
    // perpendicularity to previous pairs is exact after projection; the
    // corrections are divisible by p because the mod-p pairings vanish
    b.cols[2 * q] = project_prev(b.cols[2 * q], q);
    b.cols[2 * q + 1] = project_prev(b.cols[2 * q + 1], q);
    // make the first column primitive (content is prime to p)
    int64_t content = 0;
    for (int64_t x : b.cols[2 * q]) content = std::gcd(content, std::abs(x));
    if (content > 1)
      for (auto& x : b.cols[2 * q]) x /= content;
    // rescale the partner mod p so the pairing is 1 mod p again
    {
      int64_t u = int_omega(b.cols[2 * q], b.cols[2 * q + 1]);
      uint32_t um = F.reduce(u);
      if (um == 0) throw std::logic_error("pairing vanished mod p during the lift");
      uint32_t fix = F.inv(um);
      if (fix != 1)
        for (auto& x : b.cols[2 * q + 1]) x *= static_cast<int64_t>(fix);
    }
    // correct the pairing to exactly 1 by a multiple of p inside the
    // perpendicular sublattice
    int64_t u = int_omega(b.cols[2 * q], b.cols[2 * q + 1]);
    if ((u - 1) % p != 0) throw std::logic_error("pairing not 1 mod p");
    int64_t t = (1 - u) / static_cast<int64_t>(p);
    if (t != 0) {
      // solve int_omega(c_{2q}, z) = t by extended gcd over the coefficient row
      std::vector<int64_t> coeff(d);  // omega(c, e_r)
      for (uint32_t r = 0; r < d; ++r) {
        std::vector<int64_t> e(d, 0);
        e[r] = 1;
        coeff[r] = int_omega(b.cols[2 * q], e);
      }
      // Bezout combination with sum coeff[r] bez[r] = 1 (content is 1)
      std::vector<int64_t> bez(d, 0);
      int64_t g0 = 0;
      for (uint32_t r = 0; r < d; ++r) {
        if (coeff[r] == 0) continue;
        if (g0 == 0) {
          g0 = std::abs(coeff[r]);
          bez[r] = coeff[r] > 0 ? 1 : -1;
          continue;
        }
        int64_t x, y;
        int64_t g1 = ext_gcd(g0, coeff[r], x, y);
        for (auto& v : bez) v *= x;
        bez[r] += y;
        g0 = g1;
        if (g0 == 1) break;
      }
      if (g0 != 1) throw std::logic_error("column is not primitive");
      std::vector<int64_t> z(d, 0);
      for (uint32_t r = 0; r < d; ++r) z[r] = bez[r] * t;
      // keep the correction inside the perpendicular sublattice
      z = project_prev(std::move(z), q);
      for (uint32_t r = 0; r < d; ++r)
        b.cols[2 * q + 1][r] += static_cast<int64_t>(p) * z[r];
    }
    if (int_omega(b.cols[2 * q], b.cols[2 * q + 1]) != 1)
      throw std::logic_error("hyperbolic pairing repair failed");
  }
  if (!is_integral_symplectic(b)) throw std::logic_error("lift is not symplectic");
  return b;
}

}  // namespace sharbly
