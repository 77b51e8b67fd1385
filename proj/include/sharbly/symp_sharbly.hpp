#pragma once

#include <deque>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "sharbly/sharbly.hpp"

namespace sharbly {

// Basis element of the symplectic Sharbly resolution: an ordered
// perpendicular symplectic decomposition W_1 + ... + W_m of the ambient
// space, with one sorted spanning line tuple per factor. The degree is
// sum(k_i) + n - m with k_i = |lines_i| - dim W_i.
struct TensorGen {
  std::vector<Subspace> decomp;
  std::vector<std::vector<int32_t>> factors;

  int degree(uint32_t n) const {
    int d = static_cast<int>(n) - static_cast<int>(decomp.size());
    for (size_t i = 0; i < factors.size(); ++i)
      d += static_cast<int>(factors[i].size()) - static_cast<int>(decomp[i].dim());
    return d;
  }

  // factor tuples determine the decomposition, so they are the whole key
  std::string key() const {
    std::string k;
    k.push_back(static_cast<char>(factors.size()));
    for (const auto& f : factors) {
      k.push_back(static_cast<char>(f.size()));
      for (int32_t l : f) k.append(reinterpret_cast<const char*>(&l), 4);
    }
    return k;
  }
};

// Canonicalizes factor tuples (sorting each, parity absorbed); returns the
// generator and the sign, or sign 0 when some factor repeats a line.
inline std::pair<TensorGen, int> make_tensor_gen(std::vector<Subspace> spaces,
                                                 std::vector<std::vector<int32_t>> tuples) {
  int sign = 1;
  for (auto& f : tuples) {
    Simplex s(f.begin(), f.end());
    int s2 = sort_with_parity(s);
    if (s2 == 0) return {TensorGen{}, 0};
    sign *= s2;
    f.assign(s.begin(), s.end());
  }
  return {TensorGen{std::move(spaces), std::move(tuples)}, sign};
}

struct CensusRow {
  std::vector<uint32_t> signature;
  std::vector<uint32_t> kvec;
  int64_t count = 0;
};

struct GradedModule {
  int degree = 0;
  std::vector<TensorGen> gens;
  std::unordered_map<std::string, int32_t> index;
  std::vector<CensusRow> census;

  int32_t of(const TensorGen& g) const {
    auto it = index.find(g.key());
    if (it == index.end()) throw std::logic_error("generator missing from graded module");
    return it->second;
  }
};

namespace detail {

inline std::vector<std::vector<uint32_t>> compositions(uint32_t total, uint32_t parts,
                                                       uint32_t min_part) {
  std::vector<std::vector<uint32_t>> out;
  std::vector<uint32_t> cur(parts);
  auto rec = [&](auto&& self, uint32_t idx, uint32_t left) -> void {
    if (idx == parts) {
      if (left == 0) out.push_back(cur);
      return;
    }
    for (uint32_t v = min_part; v + min_part * (parts - idx - 1) <= left; ++v) {
      cur[idx] = v;
      self(self, idx + 1, left - v);
    }
  };
  if (parts == 0) {
    if (total == 0) out.push_back({});
    return out;
  }
  rec(rec, 0, total);
  return out;
}

}  // namespace detail

// Streams every degree-d generator in canonical order: m descending,
// signatures ascending, k-vectors ascending, decompositions in enumeration
// order, factor tuples with the last factor varying fastest. Returns census
// rows. At n = 1 this reproduces the Sharbly basis order exactly.
inline std::vector<CensusRow> enum_degree_terms_stream(
    const SymplecticSpace& S, int d, const std::function<void(TensorGen&&)>& emit,
    uint64_t budget = 10000000) {
  if (d < 0) throw std::invalid_argument("negative degree");
  std::vector<CensusRow> census;
  uint64_t produced = 0;
  std::unordered_map<std::string, std::shared_ptr<std::vector<std::vector<int32_t>>>> sh_cache;
  auto factor_tuples = [&](const Subspace& w, uint32_t k) {
    std::string ck = w.key() + std::string(1, static_cast<char>(k));
    auto it = sh_cache.find(ck);
    if (it != sh_cache.end()) return it->second;
    auto vec = std::make_shared<std::vector<std::vector<int32_t>>>();
    for (auto& g : sh_basis(w, k, S.lines(), S.field(), budget)) vec->push_back(g.lines);
    sh_cache[ck] = vec;
    return vec;
  };
  for (uint32_t m = S.n(); m >= 1; --m) {
    int klen = d - static_cast<int>(S.n()) + static_cast<int>(m);
    if (klen < 0) continue;
    for (const auto& sig : detail::compositions(S.n(), m, 1)) {
      auto decs = enum_decompositions(S, sig, budget);
      for (const auto& kvec : detail::compositions(static_cast<uint32_t>(klen), m, 0)) {
        CensusRow row{sig, kvec, 0};
        for (const auto& dec : decs) {
          std::vector<std::shared_ptr<std::vector<std::vector<int32_t>>>> bases;
          bool empty = false;
          for (uint32_t i = 0; i < m; ++i) {
            bases.push_back(factor_tuples(dec.factors[i], kvec[i]));
            if (bases.back()->empty()) empty = true;
          }
          if (empty) continue;
          std::vector<size_t> pos(m, 0);
          for (;;) {
            std::vector<std::vector<int32_t>> tuples;
            for (uint32_t i = 0; i < m; ++i) tuples.push_back((*bases[i])[pos[i]]);
            if (++produced > budget) throw budget_error("graded module budget exceeded");
            ++row.count;
            emit(TensorGen{dec.factors, std::move(tuples)});
            int64_t i = static_cast<int64_t>(m) - 1;
            while (i >= 0 && ++pos[i] == bases[i]->size()) pos[i--] = 0;
            if (i < 0) break;
          }
        }
        census.push_back(std::move(row));
      }
    }
    if (m == 1) break;
  }
  return census;
}

inline GradedModule enum_degree_terms(const SymplecticSpace& S, int d,
                                      uint64_t budget = 10000000) {
  GradedModule mod;
  mod.degree = d;
  mod.census = enum_degree_terms_stream(
      S, d,
      [&](TensorGen&& g) {
        mod.index[g.key()] = static_cast<int32_t>(mod.gens.size());
        mod.gens.push_back(std::move(g));
      },
      budget);
  return mod;
}

// One term of a differential image, tagged with the genus drop of the first
// factor (the bidegree bookkeeping of the glued resolution).
struct GenTerm {
  TensorGen gen;
  int64_t coeff = 0;
  int genus_drop = 0;
};

// Omit-terms on explicit factor tuples (any order); emitted generators are
// canonical with parities absorbed.
inline std::vector<GenTerm> omit_terms(const SymplecticSpace& S,
                                       const std::vector<Subspace>& spaces,
                                       const std::vector<std::vector<int32_t>>& tuples) {
  std::vector<GenTerm> out;
  const PrimeField& F = S.field();
  int prefix = 0;  // sum of (d_t - 1) over earlier factors, mod 2
  for (size_t j = 0; j < tuples.size(); ++j) {
    for (size_t i = 0; i < tuples[j].size(); ++i) {
      std::vector<int32_t> rest = tuples[j];
      rest.erase(rest.begin() + i);
      Matrix rows;
      for (int32_t l : rest) rows.push_back(S.lines().rep(l));
      if (rref_in_place(rows, F).size() != spaces[j].dim()) continue;
      std::vector<std::vector<int32_t>> nt = tuples;
      nt[j] = std::move(rest);
      auto [gen, s] = make_tensor_gen(spaces, std::move(nt));
      if (s == 0) continue;
      int64_t coeff = ((prefix + static_cast<int>(i)) % 2 == 0) ? 1 : -1;
      out.push_back({std::move(gen), coeff * s, 0});
    }
    prefix += static_cast<int>(tuples[j].size()) - 1 - 1;  // d_j - 1
  }
  return out;
}

// Split-terms: pull a proper nonzero symplectic span X out of a factor and
// insert the projections of the removed lines onto X^perp right after it.
// Terms with a zero or repeated projected line are zero and skipped.
inline std::vector<GenTerm> split_terms(const SymplecticSpace& S,
                                        const std::vector<Subspace>& spaces,
                                        const std::vector<std::vector<int32_t>>& tuples) {
  std::vector<GenTerm> out;
  const PrimeField& F = S.field();
  std::vector<int> dvals;
  for (const auto& t : tuples) dvals.push_back(static_cast<int>(t.size()) - 1);
  for (size_t j = 0; j < tuples.size(); ++j) {
    size_t len = tuples[j].size();
    if (spaces[j].dim() < 4) continue;  // no proper nonzero symplectic subspace
    int prefix = 0, suffix = 0;
    for (size_t t = 0; t < j; ++t) prefix += dvals[t] - 1;
    for (size_t t = j + 1; t < tuples.size(); ++t) suffix += dvals[t];
    for (uint32_t mask = 1; mask + 1 < (1u << len); ++mask) {
      // mask marks removed positions
      std::vector<int32_t> removed_pos, kept;
      for (uint32_t i = 0; i < len; ++i) {
        if (mask & (1u << i))
          removed_pos.push_back(static_cast<int32_t>(i));
        else
          kept.push_back(tuples[j][i]);
      }
      if (kept.size() < 2) continue;
      Matrix rows;
      for (int32_t l : kept) rows.push_back(S.lines().rep(l));
      Subspace x(rows, S.dim(), F);
      if (x.dim() == 0 || x.dim() >= spaces[j].dim()) continue;
      if (!is_symplectic(x, S)) continue;
      auto hyper = complete_hyperbolic(x, S);
      std::vector<int32_t> projected;
      Matrix proj_rows;
      bool zero_term = false;
      for (int32_t pos : removed_pos) {
        FVector pv = project_perp_vector(S.lines().rep(tuples[j][pos]), hyper, S);
        bool z = true;
        for (auto c : pv)
          if (c != 0) z = false;
        if (z) {
          zero_term = true;
          break;
        }
        projected.push_back(S.lines().line_of(pv));
        proj_rows.push_back(std::move(pv));
      }
      if (zero_term) continue;
      Subspace xperp_in_w(proj_rows, S.dim(), F);
      if (xperp_in_w.dim() != spaces[j].dim() - x.dim()) continue;  // projections degenerate
      int p = static_cast<int>(removed_pos.size()) - 1;
      int shuffle = 0;
      for (size_t q = 0; q < removed_pos.size(); ++q) shuffle += removed_pos[q] - static_cast<int>(q);
      int nu = prefix + p * dvals[j] + shuffle + suffix;
      std::vector<Subspace> nspaces;
      std::vector<std::vector<int32_t>> ntuples;
      for (size_t t = 0; t < tuples.size(); ++t) {
        if (t == j) {
          nspaces.push_back(x);
          ntuples.push_back(kept);
          nspaces.push_back(xperp_in_w);
          ntuples.push_back(projected);
        } else {
          nspaces.push_back(spaces[t]);
          ntuples.push_back(tuples[t]);
        }
      }
      auto [gen, s] = make_tensor_gen(std::move(nspaces), std::move(ntuples));
      if (s == 0) continue;
      int drop = 0;
      if (j == 0) drop = static_cast<int>(genus(spaces[0], S)) - static_cast<int>(x.dim() / 2);
      out.push_back({std::move(gen), ((nu % 2 == 0) ? 1 : -1) * s, drop});
    }
  }
  return out;
}

inline std::vector<GenTerm> diff_terms(const SymplecticSpace& S, const TensorGen& g) {
  std::vector<GenTerm> out = omit_terms(S, g.decomp, g.factors);
  std::vector<GenTerm> sp = split_terms(S, g.decomp, g.factors);
  out.insert(out.end(), std::make_move_iterator(sp.begin()), std::make_move_iterator(sp.end()));
  return out;
}

// Matrix of the differential between materialized graded modules. Every
// emitted term must land in the target module (degree checked by lookup).
inline SparseMat differential(const SymplecticSpace& S, const GradedModule& from,
                              const GradedModule& to) {
  SparseMat m = SparseMat::zero(static_cast<int64_t>(to.gens.size()),
                                static_cast<int64_t>(from.gens.size()));
  std::unordered_map<int64_t, Rat> acc;
  for (size_t c = 0; c < from.gens.size(); ++c) {
    std::unordered_map<int32_t, int64_t> col;
    for (auto& t : diff_terms(S, from.gens[c])) col[to.of(t.gen)] += t.coeff;
    for (auto& [r, v] : col)
      if (v != 0) m.set(r, static_cast<int32_t>(c), Rat(static_cast<long>(v)));
  }
  m.sort_entries();
  return m;
}

struct D2Report {
  bool passed = true;
  int64_t sources_checked = 0;
  int64_t composite_terms = 0;
  std::vector<std::string> failures;
};

// dd = 0 streamed over all degree-d sources for 2 <= d <= d_max, including
// the per-t bucket identities: for each source and each total first-factor
// genus drop t, the signed two-step terms cancel on their own.
inline D2Report check_d2(const SymplecticSpace& S, int d_max, uint64_t budget = 50000000,
                         int64_t max_failures = 5) {
  D2Report rep;
  for (int d = 2; d <= d_max; ++d) {
    enum_degree_terms_stream(
        S, d,
        [&](TensorGen&& g) {
          ++rep.sources_checked;
          std::unordered_map<int, std::unordered_map<std::string, int64_t>> buckets;
          for (auto& t1 : diff_terms(S, g))
            for (auto& t2 : diff_terms(S, t1.gen)) {
              buckets[t1.genus_drop + t2.genus_drop][t2.gen.key()] += t1.coeff * t2.coeff;
              ++rep.composite_terms;
            }
          for (auto& [t, bucket] : buckets)
            for (auto& [key, v] : bucket)
              if (v != 0 && static_cast<int64_t>(rep.failures.size()) < max_failures) {
                rep.passed = false;
                rep.failures.push_back("degree " + std::to_string(d) + " bucket t=" +
                                       std::to_string(t) + " witness " + g.key());
              }
        },
        budget);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// The presentation V2 -> V12 + V11 -> V0 -> St^omega(V)

// Degree-1 generators split into the all-genus-one block (V11, one factor of
// Sharbly degree 1) and the block with a single genus-2 factor (V12); the
// enumeration order puts V11 first. V2 holds the genus-2 factors of Sharbly
// degree 1 inside otherwise genus-one decompositions.
struct PresentationData {
  uint32_t n = 0, p = 0;
  GradedModule v0;
  GradedModule deg1;
  int64_t v11_count = 0;
  int64_t v12_count = 0;
  SparseMat d1;  // |V0| x |deg1|
  std::shared_ptr<SteinbergOmegaSpace> stw;
  SparseMat v0_map;  // dim St^omega(V) x |V0|
  // optional degree-2 data
  GradedModule v2;
  SparseMat d2;  // |deg1| x |V2|
  bool with_d2 = false;
  // exactness facts, filled by check_presentation_exact
  int64_t rank_v0 = -1;
  int64_t rank_d1 = -1;
  bool im_equals_ker = false;
};

inline bool is_v11_gen(const SymplecticSpace& S, const TensorGen& g) {
  return g.decomp.size() == S.n();
}

// Coordinates in St^omega(V) of the join of the genus-one factor chains.
inline std::vector<Rat> v0_to_steinberg(const TensorGen& g, const SteinbergOmegaSpace& stw) {
  const LineComplex& cx = stw.complex();
  IntSum chain;
  int deg = -1;
  for (size_t i = 0; i < g.factors.size(); ++i) {
    if (g.factors[i].size() != 2) throw std::invalid_argument("not a V0 generator");
    IntSum pair = IntSum::single(cx.vertex(g.factors[i][0]), 1) -
                  IntSum::single(cx.vertex(g.factors[i][1]), 1);
    chain = (i == 0) ? pair : join(chain, deg, pair, 0, cx.cx);
    ++deg;
  }
  return stw.project_chain(chain);
}

// Streams the V2 generators (one genus-2 factor with an extra line).
inline void enum_v2_stream(const SymplecticSpace& S, const std::function<void(TensorGen&&)>& emit,
                           uint64_t budget = 10000000) {
  if (S.n() < 2) return;  // V2 is empty in genus one
  enum_degree_terms_stream(
      S, 2,
      [&](TensorGen&& g) {
        if (g.decomp.size() != S.n() - 1) return;
        // the genus-2 factor must carry the Sharbly degree
        for (size_t i = 0; i < g.decomp.size(); ++i)
          if (g.decomp[i].dim() == 4 && g.factors[i].size() == 5) {
            emit(std::move(g));
            return;
          }
      },
      budget);
}

inline PresentationData build_presentation(const SymplecticSpace& S, RankConfig cfg = {},
                                           bool with_d2 = false, uint64_t budget = 50000000) {
  PresentationData P;
  P.n = S.n();
  P.p = S.field().p();
  P.v0 = enum_degree_terms(S, 0, budget);
  P.deg1 = enum_degree_terms(S, 1, budget);
  for (const auto& g : P.deg1.gens)
    if (is_v11_gen(S, g))
      ++P.v11_count;
    else
      ++P.v12_count;
  P.d1 = differential(S, P.deg1, P.v0);
  P.stw = std::make_shared<SteinbergOmegaSpace>(S, S.whole(), cfg);
  P.v0_map = SparseMat::zero(P.stw->dim(), static_cast<int64_t>(P.v0.gens.size()));
  for (size_t c = 0; c < P.v0.gens.size(); ++c) {
    std::vector<Rat> coords = v0_to_steinberg(P.v0.gens[c], *P.stw);
    for (size_t r = 0; r < coords.size(); ++r)
      if (coords[r] != 0) P.v0_map.set(static_cast<int32_t>(r), static_cast<int32_t>(c), coords[r]);
  }
  P.v0_map.sort_entries();
  if (with_d2) {
    P.with_d2 = true;
    P.v2.degree = 2;
    enum_v2_stream(S, [&](TensorGen&& g) {
      P.v2.index[g.key()] = static_cast<int32_t>(P.v2.gens.size());
      P.v2.gens.push_back(std::move(g));
    }, budget);
    P.d2 = differential(S, P.v2, P.deg1);
  }
  return P;
}

struct PresentationReport {
  bool passed = true;
  int64_t dim_v0 = 0, dim_v11 = 0, dim_v12 = 0, steinberg_dim = 0;
  int64_t rank_v0 = 0, rank_d1 = 0, coker_rank = 0;
  bool composite_zero = false, surjective = false, kernel_is_image = false;
  std::string rank_method;
};

// Exactness at V0: coker(d1) has the Steinberg dimension and im(d1) is
// exactly the kernel of the augmentation. The d1 rank is sandwiched between
// a modular lower bound and the exact upper bound dim V0 - rank(v0_map)
// implied by the vanishing composite, so the conclusion is exact even when
// elimination runs modularly.
inline PresentationReport check_presentation_exact(PresentationData& P, const SymplecticSpace& S,
                                                   RankConfig cfg = {}) {
  PresentationReport rep;
  rep.dim_v0 = static_cast<int64_t>(P.v0.gens.size());
  rep.dim_v11 = P.v11_count;
  rep.dim_v12 = P.v12_count;
  rep.steinberg_dim = P.stw->dim();
  SparseMat comp = P.v0_map.multiply(P.d1);
  rep.composite_zero = comp.is_zero();
  rep.rank_v0 = rank_exact(P.v0_map);
  rep.surjective = rep.rank_v0 == rep.steinberg_dim;
  int64_t upper = rep.dim_v0 - rep.rank_v0;
  if (P.d1.cols <= cfg.exact_col_threshold) {
    rep.rank_d1 = rank_exact(P.d1);
    rep.rank_method = "exact";
  } else {
    RankConfig mod = cfg;
    mod.mode = RankMode::Modular;
    mod.stop_at = upper;
    rep.rank_d1 = rank(P.d1, mod);
    rep.rank_method = "modular lower bound + exact composite upper bound";
  }
  rep.coker_rank = rep.dim_v0 - rep.rank_d1;
  rep.kernel_is_image = rep.composite_zero && rep.rank_d1 == upper;
  rep.passed = rep.composite_zero && rep.surjective && rep.kernel_is_image &&
               rep.coker_rank == rep.steinberg_dim;
  P.rank_v0 = rep.rank_v0;
  P.rank_d1 = rep.rank_d1;
  P.im_equals_ker = rep.kernel_is_image;
  return rep;
}

// Membership in im(d1) over Q. Once exactness at V0 is certified, membership
// is equivalent to vanishing under the augmentation, which stays exact at
// sizes where direct elimination is infeasible.
inline bool presentation_in_image(PresentationData& P, const SymplecticSpace& S,
                                  const std::vector<Rat>& v, RankConfig cfg = {}) {
  if (P.d1.cols <= cfg.exact_col_threshold) return in_image(P.d1, v);
  if (!P.im_equals_ker) {
    check_presentation_exact(P, S, cfg);
    if (!P.im_equals_ker) throw std::logic_error("presentation exactness not established");
  }
  std::vector<Rat> y = P.v0_map.apply(v);
  for (auto& x : y)
    if (x != 0) return false;
  return true;
}

}  // namespace sharbly
