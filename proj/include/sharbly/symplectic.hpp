#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <vector>

#include "sharbly/subspace.hpp"

namespace sharbly {

// F_p^{2n} with the standard alternating form in the interleaved basis
// e_1, ebar_1, ..., e_n, ebar_n: omega(e_i, ebar_i) = 1, all other basis
// pairings 0. Owns the global line table for its ambient space.
class SymplecticSpace {
 public:
  SymplecticSpace(uint32_t n, const PrimeField& F, uint64_t budget = 10000000)
      : n_(n), F_(F), lines_(std::make_shared<LineTable>(2 * n, F, budget)) {
    gram_.assign(2 * n, FVector(2 * n, 0));
    for (uint32_t i = 0; i < n; ++i) {
      gram_[2 * i][2 * i + 1] = 1;
      gram_[2 * i + 1][2 * i] = F.neg(1);
    }
  }

  uint32_t n() const { return n_; }
  uint32_t dim() const { return 2 * n_; }
  const PrimeField& field() const { return F_; }
  const Matrix& gram() const { return gram_; }
  const LineTable& lines() const { return *lines_; }

  FVector basis_vector(uint32_t i) const {
    FVector v(dim(), 0);
    v[i] = 1;
    return v;
  }

  uint32_t omega(const FVector& u, const FVector& v) const {
    if (u.size() != dim() || v.size() != dim()) throw std::invalid_argument("length mismatch");
    uint32_t acc = 0;
    for (uint32_t i = 0; i < n_; ++i) {
      // u_i v_ibar - u_ibar v_i per hyperbolic pair
      uint32_t a = F_.mul(u[2 * i], v[2 * i + 1]);
      uint32_t b = F_.mul(u[2 * i + 1], v[2 * i]);
      acc = F_.add(acc, F_.sub(a, b));
    }
    return acc;
  }

  Subspace whole() const {
    Matrix rows;
    for (uint32_t i = 0; i < dim(); ++i) rows.push_back(basis_vector(i));
    return Subspace(rows, dim(), F_);
  }

 private:
  uint32_t n_;
  PrimeField F_;
  Matrix gram_;
  std::shared_ptr<LineTable> lines_;
};

inline uint32_t omega(const FVector& u, const FVector& v, const SymplecticSpace& S) {
  return S.omega(u, v);
}

// Gram matrix of the restricted form on W's basis rows.
inline Matrix restricted_gram(const Subspace& w, const SymplecticSpace& S) {
  const Matrix& b = w.basis();
  Matrix g(b.size(), FVector(b.size(), 0));
  for (size_t i = 0; i < b.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) g[i][j] = S.omega(b[i], b[j]);
  return g;
}

inline uint32_t genus(const Subspace& w, const SymplecticSpace& S) {
  Matrix g = restricted_gram(w, S);
  uint32_t r = static_cast<uint32_t>(rref_in_place(g, S.field()).size());
  return r / 2;
}

// {v in W : omega(v, w) = 0 for all w in W}.
inline Subspace radical(const Subspace& w, const SymplecticSpace& S) {
  Matrix g = restricted_gram(w, S);
  Subspace coords = kernel(g, w.dim(), S.field());
  Matrix rows;
  for (const auto& x : coords.basis()) {
    FVector v(w.ambient(), 0);
    for (size_t i = 0; i < w.basis().size(); ++i)
      for (size_t j = 0; j < w.ambient(); ++j)
        v[j] = S.field().add(v[j], S.field().mul(x[i], w.basis()[i][j]));
    rows.push_back(std::move(v));
  }
  return Subspace(rows, w.ambient(), S.field());
}

inline bool is_symplectic(const Subspace& w, const SymplecticSpace& S) {
  return radical(w, S).dim() == 0;
}

inline bool is_isotropic(const Subspace& w, const SymplecticSpace& S) {
  return genus(w, S) == 0;
}

// {v : omega(v, w) = 0 for all w in W}, taken in the ambient space.
inline Subspace perp(const Subspace& w, const SymplecticSpace& S) {
  Matrix m;  // rows omega(b_i, .)
  for (const auto& b : w.basis()) {
    FVector row(S.dim(), 0);
    for (uint32_t j = 0; j < S.dim(); ++j) row[j] = S.omega(b, S.basis_vector(j));
    m.push_back(std::move(row));
  }
  return kernel(m, S.dim(), S.field());
}

// Ordered hyperbolic basis w_1, wbar_1, ..., w_g, wbar_g of a symplectic W,
// greedy over the global line order.
inline std::vector<FVector> complete_hyperbolic(const Subspace& w, const SymplecticSpace& S) {
  if (!is_symplectic(w, S)) throw std::invalid_argument("subspace is not symplectic");
  std::vector<FVector> out;
  std::vector<int32_t> avail = S.lines().lines_in(w);
  std::vector<char> used(S.lines().size(), 0);
  auto orthogonal_to_all = [&](const FVector& v) {
    for (const auto& u : out)
      if (S.omega(v, u) != 0) return false;
    return true;
  };
  uint32_t g = w.dim() / 2;
  for (uint32_t step = 0; step < g; ++step) {
    int32_t first = -1;
    for (int32_t l : avail) {
      if (used[l]) continue;
      if (orthogonal_to_all(S.lines().rep(l))) {
        first = l;
        break;
      }
    }
    if (first < 0) throw std::invalid_argument("hyperbolic completion failed");
    FVector e = S.lines().rep(first);
    int32_t partner = -1;
    for (int32_t l : avail) {
      if (used[l] || l == first) continue;
      const FVector& cand = S.lines().rep(l);
      if (S.omega(e, cand) != 0 && orthogonal_to_all(cand)) {
        partner = l;
        break;
      }
    }
    if (partner < 0) throw std::invalid_argument("hyperbolic completion failed");
    FVector f = S.lines().rep(partner);
    uint32_t c = S.field().inv(S.omega(e, f));
    for (auto& x : f) x = S.field().mul(x, c);
    used[first] = 1;
    used[S.lines().line_of(f)] = 1;
    out.push_back(std::move(e));
    out.push_back(std::move(f));
  }
  return out;
}

// Projection of v onto X^perp along the symplectic X (possibly zero), using
// a hyperbolic basis of X. The result does not depend on the basis chosen.
inline FVector project_perp_vector(const FVector& v, const std::vector<FVector>& hyperbolic,
                                   const SymplecticSpace& S) {
  FVector r = v;
  const PrimeField& F = S.field();
  for (size_t i = 0; i + 1 < hyperbolic.size(); i += 2) {
    uint32_t a = S.omega(r, hyperbolic[i + 1]);  // coefficient on e_i
    uint32_t b = S.omega(r, hyperbolic[i]);      // gives -coefficient on f_i
    for (uint32_t j = 0; j < S.dim(); ++j) {
      r[j] = F.sub(r[j], F.mul(a, hyperbolic[i][j]));
      r[j] = F.add(r[j], F.mul(b, hyperbolic[i + 1][j]));
    }
  }
  return r;
}

// Line of the projection of v onto X^perp along the symplectic X.
inline int32_t project_perp(const FVector& v, const Subspace& x, const SymplecticSpace& S) {
  FVector r = project_perp_vector(v, complete_hyperbolic(x, S), S);
  bool zero = true;
  for (auto c : r)
    if (c != 0) zero = false;
  if (zero) throw std::invalid_argument("vector lies in X; projection is zero");
  return S.lines().line_of(r);
}

// All genus-g symplectic subspaces, canonical order.
inline std::vector<Subspace> enum_symplectic_subspaces(const SymplecticSpace& S, uint32_t g,
                                                       uint64_t budget = 10000000) {
  if (g < 1 || g > S.n()) throw std::invalid_argument("genus out of range");
  std::vector<Subspace> out;
  for (auto& w : enumerate_subspaces(S.dim(), 2 * g, S.field(), budget))
    if (is_symplectic(w, S)) out.push_back(std::move(w));
  return out;
}

struct Decomposition {
  std::vector<Subspace> factors;
  bool operator==(const Decomposition& o) const { return factors == o.factors; }
};

// Ordered perpendicular decompositions V = W_1 + ... + W_m with the given
// factor genera.
inline std::vector<Decomposition> enum_decompositions(const SymplecticSpace& S,
                                                      const std::vector<uint32_t>& signature,
                                                      uint64_t budget = 10000000) {
  uint32_t total = 0;
  for (uint32_t g : signature) {
    if (g < 1) throw std::invalid_argument("signature entries must be >= 1");
    total += g;
  }
  if (total != S.n()) throw std::invalid_argument("signature must sum to the genus");
  // Cache per-genus global lists; restrict by containment at each level.
  std::vector<std::vector<Subspace>> by_genus(S.n() + 1);
  for (uint32_t g : signature)
    if (by_genus[g].empty()) by_genus[g] = enum_symplectic_subspaces(S, g, budget);
  std::vector<Decomposition> out;
  std::vector<Subspace> cur;
  auto rec = [&](auto&& self, const Subspace& remaining, size_t idx) -> void {
    if (idx == signature.size()) {
      out.push_back(Decomposition{cur});
      return;
    }
    uint32_t g = signature[idx];
    if (remaining.dim() == 2 * g) {
      // last factor forced
      if (genus(remaining, S) == g) {
        cur.push_back(remaining);
        self(self, Subspace::zero(S.dim(), S.field()), idx + 1);
        cur.pop_back();
      }
      return;
    }
    for (const auto& w : by_genus[g]) {
      if (!remaining.contains(w)) continue;
      // complement of w inside remaining
      Subspace comp = [&] {
        Subspace pw = perp(w, S);
        Matrix m;
        for (const auto& r : pw.basis()) m.push_back(r);
        // intersect perp(w) with remaining: solve via kernel of stacked constraints
        // remaining cap perp(w): vectors of remaining orthogonal to w
        Matrix constraints;
        for (const auto& b : w.basis()) {
          FVector row(remaining.dim(), 0);
          for (uint32_t j = 0; j < remaining.dim(); ++j)
            row[j] = S.omega(b, remaining.basis()[j]);
          constraints.push_back(std::move(row));
        }
        Subspace coords = kernel(constraints, remaining.dim(), S.field());
        Matrix rows;
        for (const auto& x : coords.basis()) {
          FVector v(S.dim(), 0);
          for (size_t i = 0; i < remaining.basis().size(); ++i)
            for (uint32_t j = 0; j < S.dim(); ++j)
              v[j] = S.field().add(v[j], S.field().mul(x[i], remaining.basis()[i][j]));
          rows.push_back(std::move(v));
        }
        return Subspace(rows, S.dim(), S.field());
      }();
      cur.push_back(w);
      self(self, comp, idx + 1);
      cur.pop_back();
    }
  };
  rec(rec, S.whole(), 0);
  return out;
}

// Seeded product of 5..30 symplectic transvections x -> x + c omega(x,u) u.
// Output A satisfies A^T G A = G exactly.
inline Matrix random_symplectic(const SymplecticSpace& S, uint64_t seed) {
  SplitMix64 rng(seed);
  const PrimeField& F = S.field();
  uint32_t d = S.dim();
  Matrix a(d, FVector(d, 0));
  for (uint32_t i = 0; i < d; ++i) a[i][i] = 1;
  uint32_t count = 5 + static_cast<uint32_t>(rng.below(26));
  for (uint32_t t = 0; t < count; ++t) {
    FVector u(d, 0);
    bool nz = false;
    while (!nz) {
      for (auto& x : u) {
        x = static_cast<uint32_t>(rng.below(F.p()));
        if (x) nz = true;
      }
    }
    uint32_t c = 1 + static_cast<uint32_t>(rng.below(F.p() - 1));
    // apply transvection to each column of a
    for (uint32_t col = 0; col < d; ++col) {
      FVector x(d);
      for (uint32_t rr = 0; rr < d; ++rr) x[rr] = a[rr][col];
      uint32_t w = F.mul(c, S.omega(x, u));
      for (uint32_t rr = 0; rr < d; ++rr) a[rr][col] = F.add(a[rr][col], F.mul(w, u[rr]));
    }
  }
  // construction invariant
  for (uint32_t i = 0; i < d; ++i)
    for (uint32_t j = 0; j < d; ++j) {
      FVector ci(d), cj(d);
      for (uint32_t rr = 0; rr < d; ++rr) ci[rr] = a[rr][i], cj[rr] = a[rr][j];
      if (S.omega(ci, cj) != S.gram()[i][j]) throw std::logic_error("transvection product broke the form");
    }
  return a;
}

inline FVector apply_matrix(const Matrix& a, const FVector& v, const PrimeField& F) {
  FVector out(a.size(), 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j) out[i] = F.add(out[i], F.mul(a[i][j], v[j]));
  return out;
}

inline Subspace apply_matrix(const Matrix& a, const Subspace& w, const PrimeField& F) {
  Matrix rows;
  for (const auto& r : w.basis()) rows.push_back(apply_matrix(a, r, F));
  return Subspace(rows, w.ambient(), F);
}

}  // namespace sharbly
