#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sharbly/formal_sum.hpp"
#include "sharbly/sparse.hpp"
#include "sharbly/subspace.hpp"
#include "sharbly/symplectic.hpp"

namespace sharbly {

using Simplex = std::vector<int32_t>;  // strictly increasing vertex indices

inline std::string simplex_key(const Simplex& s) {
  std::string k;
  k.reserve(s.size() * 4);
  for (int32_t v : s) k.append(reinterpret_cast<const char*>(&v), 4);
  return k;
}

// Sorts a vertex tuple; returns +1/-1 for the permutation parity, 0 if a
// vertex repeats.
inline int sort_with_parity(Simplex& s) {
  int sign = 1;
  for (size_t i = 1; i < s.size(); ++i)
    for (size_t j = i; j > 0 && s[j - 1] >= s[j]; --j) {
      if (s[j - 1] == s[j]) return 0;
      std::swap(s[j - 1], s[j]);
      sign = -sign;
    }
  return sign;
}

// Simplices stored per dimension as sorted index tuples, downward closed
// within the materialized window [0, max_dim].
class SimplicialComplex {
 public:
  SimplicialComplex() = default;
  explicit SimplicialComplex(int32_t vertex_count) : vertex_count_(vertex_count) {
    simplices_.resize(1);
    index_.resize(1);
    for (int32_t v = 0; v < vertex_count; ++v) add(Simplex{v});
  }

  int32_t vertex_count() const { return vertex_count_; }
  int max_dim() const { return static_cast<int>(simplices_.size()) - 1; }

  void add(const Simplex& s) {
    int d = static_cast<int>(s.size()) - 1;
    while (max_dim() < d) {
      simplices_.emplace_back();
      index_.emplace_back();
    }
    auto key = simplex_key(s);
    if (index_[d].count(key)) return;
    index_[d][key] = static_cast<int32_t>(simplices_[d].size());
    simplices_[d].push_back(s);
  }

  const std::vector<Simplex>& simplices(int d) const {
    static const std::vector<Simplex> empty;
    return d >= 0 && d <= max_dim() ? simplices_[d] : empty;
  }
  int64_t count(int d) const { return static_cast<int64_t>(simplices(d).size()); }

  int32_t find(const Simplex& s) const {
    int d = static_cast<int>(s.size()) - 1;
    if (d < 0 || d > max_dim()) return -1;
    auto it = index_[d].find(simplex_key(s));
    return it == index_[d].end() ? -1 : it->second;
  }
  bool has(const Simplex& s) const { return find(s) >= 0; }

  // sort tuples within each dimension for canonical generator order
  void canonicalize() {
    for (size_t d = 0; d < simplices_.size(); ++d) {
      std::sort(simplices_[d].begin(), simplices_[d].end());
      index_[d].clear();
      for (size_t i = 0; i < simplices_[d].size(); ++i)
        index_[d][simplex_key(simplices_[d][i])] = static_cast<int32_t>(i);
    }
  }

 private:
  int32_t vertex_count_ = 0;
  std::vector<std::vector<Simplex>> simplices_;
  std::vector<std::unordered_map<std::string, int32_t>> index_;
};

// Order complex of a poset of subspaces under inclusion. Vertices sorted by
// the canonical subspace order, so flags are increasing index tuples.
struct Building {
  SimplicialComplex cx;
  std::vector<Subspace> labels;
  std::unordered_map<std::string, int32_t> vertex_of;

  int32_t vertex(const Subspace& w) const {
    auto it = vertex_of.find(w.key());
    return it == vertex_of.end() ? -1 : it->second;
  }
};

inline Building order_complex(std::vector<Subspace> verts) {
  std::sort(verts.begin(), verts.end());
  Building b;
  b.labels = std::move(verts);
  b.cx = SimplicialComplex(static_cast<int32_t>(b.labels.size()));
  for (size_t i = 0; i < b.labels.size(); ++i)
    b.vertex_of[b.labels[i].key()] = static_cast<int32_t>(i);
  // flags by DFS; inclusion is only possible from lower to strictly higher dim
  std::vector<std::vector<int32_t>> above(b.labels.size());
  for (size_t i = 0; i < b.labels.size(); ++i)
    for (size_t j = i + 1; j < b.labels.size(); ++j)
      if (b.labels[j].dim() > b.labels[i].dim() && b.labels[j].contains(b.labels[i]))
        above[i].push_back(static_cast<int32_t>(j));
  Simplex cur;
  auto dfs = [&](auto&& self, int32_t v) -> void {
    cur.push_back(v);
    if (cur.size() >= 2) b.cx.add(cur);
    for (int32_t w : above[v]) self(self, w);
    cur.pop_back();
  };
  for (size_t i = 0; i < b.labels.size(); ++i) dfs(dfs, static_cast<int32_t>(i));
  b.cx.canonicalize();
  return b;
}

// Tits building of F_p^dim: proper nonzero subspaces ordered by inclusion.
inline Building build_tits(uint32_t dim, const PrimeField& F, uint64_t budget = 10000000) {
  if (dim < 2) throw std::invalid_argument("ambient dimension must be >= 2");
  std::vector<Subspace> verts;
  for (uint32_t k = 1; k < dim; ++k)
    for (auto& w : enumerate_subspaces(dim, k, F, budget)) verts.push_back(std::move(w));
  return order_complex(std::move(verts));
}

// Tits building of a subspace W: proper nonzero subspaces of W, expressed in
// the ambient coordinates.
inline Building build_tits_of(const Subspace& w, const PrimeField& F, uint64_t budget = 10000000) {
  if (w.dim() < 2) throw std::invalid_argument("subspace dimension must be >= 2");
  std::vector<Subspace> verts;
  for (uint32_t k = 1; k < w.dim(); ++k)
    for (const auto& local : enumerate_subspaces(w.dim(), k, F, budget)) {
      Matrix rows;
      for (const auto& x : local.basis()) {
        FVector v(w.ambient(), 0);
        for (size_t i = 0; i < w.basis().size(); ++i)
          for (size_t j = 0; j < w.ambient(); ++j)
            v[j] = F.add(v[j], F.mul(x[i], w.basis()[i][j]));
        rows.push_back(std::move(v));
      }
      verts.push_back(Subspace(std::move(rows), w.ambient(), F));
    }
  return order_complex(std::move(verts));
}

// Symplectic Tits building: nonzero isotropic subspaces ordered by inclusion.
inline Building build_symplectic_tits(const SymplecticSpace& S, uint64_t budget = 10000000) {
  std::vector<Subspace> verts;
  for (uint32_t k = 1; k <= S.n(); ++k)
    for (auto& w : enumerate_subspaces(S.dim(), k, S.field(), budget))
      if (is_isotropic(w, S)) verts.push_back(std::move(w));
  return order_complex(std::move(verts));
}

enum class LineComplexKind { K, L, I };

// Complex on the lines of a subspace X (in the global line order), with a
// span predicate per kind. K is the full simplex and is only ever
// materialized up to the requested dimension.
struct LineComplex {
  SimplicialComplex cx;
  std::vector<int32_t> global_lines;  // vertex v <-> global line id
  std::unordered_map<int32_t, int32_t> vertex_of_line;
  LineComplexKind kind = LineComplexKind::K;
  uint32_t genus_bound = 0;
  int materialized_dim = -1;

  int32_t vertex(int32_t global_line) const {
    auto it = vertex_of_line.find(global_line);
    return it == vertex_of_line.end() ? -1 : it->second;
  }
};

inline LineComplex build_line_complex(const SymplecticSpace& S, const Subspace& X,
                                      LineComplexKind kind, uint32_t genus_bound, int max_dim,
                                      uint64_t budget = 10000000) {
  LineComplex L;
  L.kind = kind;
  L.genus_bound = genus_bound;
  L.materialized_dim = max_dim;
  L.global_lines = S.lines().lines_in(X);
  for (size_t i = 0; i < L.global_lines.size(); ++i)
    L.vertex_of_line[L.global_lines[i]] = static_cast<int32_t>(i);
  L.cx = SimplicialComplex(static_cast<int32_t>(L.global_lines.size()));
  uint64_t produced = 0;
  auto admissible = [&](const Matrix& span_rows) {
    if (kind == LineComplexKind::K) return true;
    Subspace span(span_rows, S.dim(), S.field());
    if (kind == LineComplexKind::L) return span.dim() < X.dim();
    return genus(span, S) <= genus_bound;
  };
  Simplex cur;
  Matrix span_rows;
  auto dfs = [&](auto&& self, int32_t from) -> void {
    if (static_cast<int>(cur.size()) - 1 >= max_dim) return;
    for (int32_t v = from; v < static_cast<int32_t>(L.global_lines.size()); ++v) {
      span_rows.push_back(S.lines().rep(L.global_lines[v]));
      if (admissible(span_rows)) {
        cur.push_back(v);
        if (cur.size() >= 2) {
          if (++produced > budget) throw budget_error("line complex budget exceeded");
          L.cx.add(cur);
        }
        self(self, v + 1);
        cur.pop_back();
      }
      span_rows.pop_back();
    }
  };
  dfs(dfs, 0);
  L.cx.canonicalize();
  return L;
}

inline LineComplex build_line_complex(const SymplecticSpace& S, LineComplexKind kind,
                                      uint32_t genus_bound, int max_dim,
                                      uint64_t budget = 10000000) {
  return build_line_complex(S, S.whole(), kind, genus_bound, max_dim, budget);
}

// ---------------------------------------------------------------------------
// Chain complexes

// Boundaries bnd[i] map degree (lo + i + 1) to degree (lo + i). The reduced
// convention adds the augmentation in degree -1, so the homology of the empty
// complex is the coefficient ring in degree -1.
struct ChainComplex {
  int lo = 0;
  std::vector<int64_t> dims;       // dims[k - lo]
  std::vector<SparseMat> bnd;      // bnd[k - lo - 1] : C_k -> C_{k-1}
  int hi() const { return lo + static_cast<int>(dims.size()) - 1; }
  int64_t dim(int k) const { return k < lo || k > hi() ? 0 : dims[k - lo]; }
  const SparseMat& boundary(int k) const {  // C_k -> C_{k-1}
    static const SparseMat empty;
    if (k <= lo || k > hi()) return empty;
    return bnd[k - lo - 1];
  }
};

inline IntSum simplex_boundary(const Simplex& s, const SimplicialComplex& X) {
  IntSum out;
  if (s.size() == 1) return out;
  Simplex face;
  for (size_t i = 0; i < s.size(); ++i) {
    face = s;
    face.erase(face.begin() + i);
    int32_t idx = X.find(face);
    if (idx < 0) throw std::logic_error("complex not downward closed");
    out.add_term(idx, (i % 2 == 0) ? 1 : -1);
  }
  return out;
}

inline ChainComplex chain_complex(const SimplicialComplex& X, bool reduced, int max_deg = -1) {
  ChainComplex C;
  int top = max_deg < 0 ? X.max_dim() : std::min(max_deg, X.max_dim());
  C.lo = reduced ? -1 : 0;
  for (int k = C.lo; k <= top; ++k) C.dims.push_back(k == -1 ? 1 : X.count(k));
  for (int k = C.lo + 1; k <= top; ++k) {
    SparseMat d = SparseMat::zero(C.dim(k - 1), C.dim(k));
    if (k == 0) {
      for (int64_t v = 0; v < C.dim(0); ++v) d.set(0, static_cast<int32_t>(v), Rat(1));
    } else {
      for (int64_t i = 0; i < C.dim(k); ++i) {
        IntSum b = simplex_boundary(X.simplices(k)[i], X);
        for (auto& [f, c] : b.terms())
          d.set(f, static_cast<int32_t>(i), Rat(static_cast<long>(c)));
      }
    }
    d.sort_entries();
    C.bnd.push_back(std::move(d));
  }
  return C;
}

// Relative chains of a pair Y <= X: generators are the simplices of X not in
// Y, with boundary terms landing in Y dropped.
struct RelativeComplex {
  ChainComplex cc;
  std::vector<std::vector<int32_t>> gens;  // per degree, X-simplex positions
  std::vector<std::unordered_map<int32_t, int32_t>> rel_index;

  int32_t rel_of_abs(int k, int32_t abs) const {
    auto it = rel_index[k].find(abs);
    return it == rel_index[k].end() ? -1 : it->second;
  }
};

inline RelativeComplex relative_chain_complex(const SimplicialComplex& X,
                                              const SimplicialComplex& Y, int max_deg = -1) {
  int top = max_deg < 0 ? X.max_dim() : std::min(max_deg, X.max_dim());
  RelativeComplex R;
  R.gens.resize(top + 1);
  R.rel_index.resize(top + 1);
  for (int k = 0; k <= top; ++k) {
    for (int64_t i = 0; i < X.count(k); ++i) {
      const Simplex& s = X.simplices(k)[i];
      if (Y.has(s)) continue;
      R.rel_index[k][static_cast<int32_t>(i)] = static_cast<int32_t>(R.gens[k].size());
      R.gens[k].push_back(static_cast<int32_t>(i));
    }
  }
  // subcomplex check on Y
  for (int k = 0; k <= std::min(top, Y.max_dim()); ++k)
    for (const auto& s : Y.simplices(k))
      if (!X.has(s)) throw std::invalid_argument("Y is not a subcomplex of X");
  R.cc.lo = 0;
  for (int k = 0; k <= top; ++k) R.cc.dims.push_back(static_cast<int64_t>(R.gens[k].size()));
  for (int k = 1; k <= top; ++k) {
    SparseMat d = SparseMat::zero(R.cc.dim(k - 1), R.cc.dim(k));
    for (size_t i = 0; i < R.gens[k].size(); ++i) {
      const Simplex& s = X.simplices(k)[R.gens[k][i]];
      IntSum b = simplex_boundary(s, X);
      for (auto& [f, c] : b.terms()) {
        int32_t rel = R.rel_of_abs(k - 1, f);
        if (rel >= 0) d.set(rel, static_cast<int32_t>(i), Rat(static_cast<long>(c)));
      }
    }
    d.sort_entries();
    R.cc.bnd.push_back(std::move(d));
  }
  return R;
}

// ---------------------------------------------------------------------------
// Chain algebra

inline IntSum boundary_of_chain(const IntSum& chain, int k, const SimplicialComplex& X) {
  IntSum out;
  for (auto& [i, c] : chain.terms()) {
    IntSum b = simplex_boundary(X.simplices(k)[i], X);
    for (auto& [f, s] : b.terms()) out.add_term(f, c * s);
  }
  return out;
}

// Bilinear join of chains of degrees k and l, degree k+l+1. Every simplex
// pair must join to a simplex of X.
inline IntSum join(const IntSum& c1, int k, const IntSum& c2, int l, const SimplicialComplex& X) {
  IntSum out;
  for (auto& [i, a] : c1.terms())
    for (auto& [j, b] : c2.terms()) {
      const Simplex& s = X.simplices(k)[i];
      const Simplex& t = X.simplices(l)[j];
      Simplex u = s;
      u.insert(u.end(), t.begin(), t.end());
      int sign = sort_with_parity(u);
      if (sign == 0)
        throw std::invalid_argument("join of simplices sharing a vertex");
      int32_t idx = X.find(u);
      if (idx < 0) {
        std::string msg = "join is not a simplex:";
        for (auto v : u) msg += " " + std::to_string(v);
        throw std::invalid_argument(msg);
      }
      out.add_term(idx, a * b * sign);
    }
  return out;
}

// Signed sum over all orderings of the flags spanned by an ordered basis:
// a (n-2)-cycle of the building.
inline IntSum apartment_cycle(const Building& B, const std::vector<FVector>& basis,
                              const PrimeField& F) {
  size_t n = basis.size();
  if (n < 1) throw std::invalid_argument("empty basis");
  {
    Matrix rows = basis;
    if (rref_in_place(rows, F).size() != n)
      throw std::invalid_argument("vectors do not form a basis");
  }
  IntSum out;
  std::vector<size_t> perm(n);
  for (size_t i = 0; i < n; ++i) perm[i] = i;
  do {
    int sign = 1;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) sign = -sign;
    Simplex flag;
    Matrix rows;
    uint32_t ambient = static_cast<uint32_t>(basis[0].size());
    for (size_t i = 0; i + 1 < n; ++i) {
      rows.push_back(basis[perm[i]]);
      Subspace w(rows, ambient, F);
      int32_t v = B.vertex(w);
      if (v < 0) throw std::logic_error("flag subspace missing from building");
      flag.push_back(v);
    }
    if (flag.empty()) {
      // genus-zero degeneration has no flags; callers special-case it
      throw std::invalid_argument("basis of size 1 spans no proper flag");
    }
    int32_t idx = B.cx.find(flag);
    if (idx < 0) throw std::logic_error("flag simplex missing from building");
    out.add_term(idx, sign);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// The recursive join chain of an interleaved symplectic basis
// w_1, wbar_1, ..., w_g, wbar_g, a (g-1)-cycle of the isotropic line complex.
inline IntSum symplectic_apartment_cycle(const LineComplex& L, const SymplecticSpace& S,
                                         const std::vector<FVector>& basis) {
  if (basis.size() < 2 || basis.size() % 2 != 0)
    throw std::invalid_argument("need an interleaved symplectic basis");
  uint32_t g = static_cast<uint32_t>(basis.size() / 2);
  // pairing table check
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = i + 1; j < basis.size(); ++j) {
      uint32_t expect = (j == i + 1 && i % 2 == 0) ? 1 : 0;
      if (S.omega(basis[i], basis[j]) != expect)
        throw std::invalid_argument("not a symplectic basis in interleaved order");
    }
  auto pair_chain = [&](size_t i) {
    int32_t a = L.vertex(S.lines().line_of(basis[2 * i]));
    int32_t b = L.vertex(S.lines().line_of(basis[2 * i + 1]));
    IntSum c = IntSum::single(a, 1);
    c += IntSum::single(b, -1);
    return c;
  };
  IntSum chain = pair_chain(g - 1);
  int deg = 0;
  for (int i = static_cast<int>(g) - 2; i >= 0; --i) {
    chain = join(pair_chain(i), 0, chain, deg, L.cx);
    ++deg;
  }
  return chain;
}

// Chain image under a vertex relabeling (e.g. induced by a symplectic map).
inline IntSum map_chain(const IntSum& chain, int k, const SimplicialComplex& X,
                        const std::vector<int32_t>& vertex_map) {
  IntSum out;
  for (auto& [i, c] : chain.terms()) {
    Simplex s = X.simplices(k)[i];
    for (auto& v : s) v = vertex_map[v];
    int sign = sort_with_parity(s);
    if (sign == 0) throw std::logic_error("vertex map is not injective on a simplex");
    int32_t idx = X.find(s);
    if (idx < 0) throw std::logic_error("mapped simplex missing from complex");
    out.add_term(idx, c * sign);
  }
  return out;
}

// Vertex permutation of a line complex induced by an invertible matrix.
inline std::vector<int32_t> line_vertex_map(const LineComplex& L, const SymplecticSpace& S,
                                            const Matrix& a) {
  std::vector<int32_t> out(L.global_lines.size());
  for (size_t v = 0; v < L.global_lines.size(); ++v) {
    FVector img = apply_matrix(a, S.lines().rep(L.global_lines[v]), S.field());
    out[v] = L.vertex(S.lines().line_of(img));
    if (out[v] < 0) throw std::logic_error("matrix does not preserve the line set");
  }
  return out;
}

}  // namespace sharbly
