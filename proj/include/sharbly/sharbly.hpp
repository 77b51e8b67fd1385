#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "sharbly/steinberg.hpp"

namespace sharbly {

// Degree-k generator of the Sharbly resolution of St(W): a spanning set of
// dim W + k distinct lines of W, stored sorted in the global line order. A
// permuted input tuple contributes its parity to the referencing coefficient.
struct SharblyGen {
  Subspace space;
  std::vector<int32_t> lines;  // strictly increasing global line ids

  int degree() const { return static_cast<int>(lines.size()) - static_cast<int>(space.dim()); }

  std::string key() const {
    std::string k;
    k.reserve(lines.size() * 4);
    for (int32_t l : lines) k.append(reinterpret_cast<const char*>(&l), 4);
    return k;
  }
  bool operator==(const SharblyGen& o) const { return lines == o.lines; }
};

// Sorts the tuple, absorbing the permutation parity; throws on a repeated
// line or a non-spanning set.
inline std::pair<SharblyGen, int> make_sharbly(const LineTable& table, const PrimeField& F,
                                               std::vector<int32_t> tuple) {
  Simplex s(tuple.begin(), tuple.end());
  int sign = sort_with_parity(s);
  if (sign == 0) throw std::invalid_argument("repeated line in a Sharbly tuple");
  Matrix rows;
  for (int32_t l : s) rows.push_back(table.rep(l));
  Subspace w(rows, table.dim(), F);
  if (w.dim() + 0u > s.size()) throw std::logic_error("span larger than line count");
  SharblyGen g{std::move(w), std::vector<int32_t>(s.begin(), s.end())};
  return {std::move(g), sign};
}

// All degree-k generators for W, ordered by the line-tuple combination order.
inline std::vector<SharblyGen> sh_basis(const Subspace& w, uint32_t k, const LineTable& table,
                                        const PrimeField& F, uint64_t budget = 10000000) {
  std::vector<int32_t> in_w = table.lines_in(w);
  uint32_t size = w.dim() + k;
  std::vector<SharblyGen> out;
  if (size > in_w.size()) return out;
  std::vector<uint32_t> comb(size);
  for (uint32_t i = 0; i < size; ++i) comb[i] = i;
  uint64_t produced = 0;
  for (;;) {
    Matrix rows;
    for (uint32_t i : comb) rows.push_back(table.rep(in_w[i]));
    if (rref_in_place(rows, F).size() == w.dim()) {
      if (++produced > budget) throw budget_error("Sharbly basis budget exceeded");
      std::vector<int32_t> lines;
      for (uint32_t i : comb) lines.push_back(in_w[i]);
      out.push_back(SharblyGen{w, std::move(lines)});
    }
    int64_t i = static_cast<int64_t>(size) - 1;
    while (i >= 0 && comb[i] == in_w.size() - size + i) --i;
    if (i < 0) break;
    ++comb[i];
    for (uint32_t j = i + 1; j < size; ++j) comb[j] = comb[j - 1] + 1;
  }
  return out;
}

// Omit one line at a time with alternating signs, dropping terms whose
// remaining lines no longer span the space.
inline std::vector<std::pair<SharblyGen, int64_t>> sh_boundary(const SharblyGen& g,
                                                               const LineTable& table,
                                                               const PrimeField& F) {
  if (g.degree() < 1) throw std::invalid_argument("degree-0 generators map to apartment classes");
  std::vector<std::pair<SharblyGen, int64_t>> out;
  for (size_t i = 0; i < g.lines.size(); ++i) {
    std::vector<int32_t> rest = g.lines;
    rest.erase(rest.begin() + i);
    Matrix rows;
    for (int32_t l : rest) rows.push_back(table.rep(l));
    if (rref_in_place(rows, F).size() != g.space.dim()) continue;
    out.push_back({SharblyGen{g.space, std::move(rest)}, (i % 2 == 0) ? 1 : -1});
  }
  return out;
}

struct ShBasisIndex {
  std::vector<SharblyGen> gens;
  std::unordered_map<std::string, int32_t> index;

  explicit ShBasisIndex(std::vector<SharblyGen> g) : gens(std::move(g)) {
    for (size_t i = 0; i < gens.size(); ++i) index[gens[i].key()] = static_cast<int32_t>(i);
  }
  int32_t of(const SharblyGen& g) const {
    auto it = index.find(g.key());
    if (it == index.end()) throw std::logic_error("generator missing from basis");
    return it->second;
  }
};

inline SparseMat sh_boundary_matrix(const ShBasisIndex& from, const ShBasisIndex& to,
                                    const LineTable& table, const PrimeField& F) {
  SparseMat m = SparseMat::zero(static_cast<int64_t>(to.gens.size()),
                                static_cast<int64_t>(from.gens.size()));
  for (size_t c = 0; c < from.gens.size(); ++c)
    for (auto& [g, coeff] : sh_boundary(from.gens[c], table, F))
      m.set(to.of(g), static_cast<int32_t>(c), Rat(static_cast<long>(coeff)));
  m.sort_entries();
  return m;
}

// Apartment class of a degree-0 generator in the coordinates of St(W).
inline std::vector<Rat> sh_to_steinberg(const SharblyGen& g, const SteinbergSpace& st,
                                        const LineTable& table) {
  std::vector<FVector> basis;
  for (int32_t l : g.lines) basis.push_back(table.rep(l));
  return st.classof(basis);
}

inline SparseMat sh_augmentation_matrix(const ShBasisIndex& sh0, const SteinbergSpace& st,
                                        const LineTable& table) {
  SparseMat m = SparseMat::zero(st.dim(), static_cast<int64_t>(sh0.gens.size()));
  for (size_t c = 0; c < sh0.gens.size(); ++c) {
    std::vector<Rat> coords = sh_to_steinberg(sh0.gens[c], st, table);
    for (size_t r = 0; r < coords.size(); ++r)
      if (coords[r] != 0) m.set(static_cast<int32_t>(r), static_cast<int32_t>(c), coords[r]);
  }
  m.sort_entries();
  return m;
}

struct SharblyExactnessReport {
  bool passed = true;
  int64_t steinberg_dim = 0;
  std::vector<int64_t> sh_dims;    // degrees 0..k_max
  std::vector<int64_t> ranks;      // ranks[k] = rank of d_k (d_0 = augmentation)
  std::vector<std::string> failures;
};

// Rank arithmetic for exactness of Sh_{k_max} -> ... -> Sh_0 -> St(W) -> 0 at
// every spot that has both neighbors materialized.
inline SharblyExactnessReport check_sharbly_exactness(const Subspace& w, uint32_t k_max,
                                                      const LineTable& table, const PrimeField& F,
                                                      RankConfig cfg = {},
                                                      uint64_t budget = 10000000) {
  SharblyExactnessReport rep;
  SteinbergSpace st(w, F, cfg);
  rep.steinberg_dim = st.dim();
  std::vector<ShBasisIndex> bases;
  for (uint32_t k = 0; k <= k_max; ++k) bases.push_back(ShBasisIndex(sh_basis(w, k, table, F, budget)));
  for (auto& b : bases) rep.sh_dims.push_back(static_cast<int64_t>(b.gens.size()));
  SparseMat aug = sh_augmentation_matrix(bases[0], st, table);
  rep.ranks.push_back(rank(aug, cfg));
  std::vector<SparseMat> bnd;
  for (uint32_t k = 1; k <= k_max; ++k) {
    bnd.push_back(sh_boundary_matrix(bases[k], bases[k - 1], table, F));
    rep.ranks.push_back(rank(bnd.back(), cfg));
  }
  auto fail = [&](const std::string& msg) {
    rep.passed = false;
    rep.failures.push_back(msg);
  };
  if (rep.ranks[0] != rep.steinberg_dim) fail("augmentation not surjective");
  if (k_max >= 1 && !aug.multiply(bnd[0]).is_zero()) fail("augmentation of a boundary is nonzero");
  for (uint32_t k = 1; k + 1 <= k_max; ++k)
    if (!bnd[k - 1].multiply(bnd[k]).is_zero()) fail("dd != 0 at degree " + std::to_string(k + 1));
  // exactness spots
  if (k_max >= 1 && rep.ranks[1] != rep.sh_dims[0] - rep.steinberg_dim)
    fail("not exact at degree 0");
  for (uint32_t k = 1; k + 1 <= k_max; ++k)
    if (rep.ranks[k] + rep.ranks[k + 1] != rep.sh_dims[k])
      fail("not exact at degree " + std::to_string(k));
  return rep;
}

}  // namespace sharbly
