#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "sharbly/homology.hpp"
#include "sharbly/simplicial.hpp"

namespace sharbly {

// St(W): top-degree cycles of the building of W, realized in chain
// coordinates with a selected family of apartment classes as basis. The top
// chain group has no boundaries from above (flags cannot be longer than
// dim W - 1), so cycles are already homology classes.
class SteinbergSpace {
 public:
  SteinbergSpace(const Subspace& w, const PrimeField& F, RankConfig rank_cfg = {},
                 int64_t mod_cert_threshold = 120)
      : w_(w), F_(F), building_(build_tits_of(w, F)) {
    top_degree_ = static_cast<int>(w.dim()) - 2;
    cc_ = chain_complex(building_.cx, true, std::max(top_degree_, 0));
    if (building_.cx.count(top_degree_ + 1) != 0)
      throw std::logic_error("building has longer flags than expected");
    dim_ = cc_.dim(top_degree_) - rank(cc_.boundary(top_degree_), rank_cfg);
    // candidate apartments: spanning line tuples in increasing order; larger
    // instances certify independence modulo a random prime (valid over Q for
    // integer chain vectors)
    LineTable lines(w.ambient(), F);
    std::vector<int32_t> in_w = lines.lines_in(w);
    bool use_mod = dim_ > mod_cert_threshold;
    SplitMix64 rng(rank_cfg.seed + 1);
    std::optional<ColumnSpan> qspan;
    std::optional<ColumnSpanMod> mspan;
    if (use_mod)
      mspan.emplace(cc_.dim(top_degree_), random_large_prime(rng));
    else
      qspan.emplace(cc_.dim(top_degree_));
    uint32_t d = w.dim();
    std::vector<int32_t> tuple;
    Matrix span_rows;
    auto dfs = [&](auto&& self, size_t from) -> bool {
      if (static_cast<int64_t>(basis_tuples_.size()) == dim_) return true;
      if (tuple.size() == d) {
        std::vector<FVector> reps;
        for (int32_t l : tuple) reps.push_back(lines.rep(l));
        IntSum cyc = apartment_cycle(building_, reps, F);
        std::vector<Rat> v(cc_.dim(top_degree_), Rat(0));
        for (auto& [i, c] : cyc.terms()) v[i] = Rat(static_cast<long>(c));
        bool fresh = use_mod ? mspan->try_add(v) : qspan->try_add(v);
        if (fresh) basis_tuples_.push_back(tuple);
        return static_cast<int64_t>(basis_tuples_.size()) == dim_;
      }
      for (size_t idx = from; idx < in_w.size(); ++idx) {
        span_rows.push_back(lines.rep(in_w[idx]));
        Matrix probe = span_rows;
        if (rref_in_place(probe, F).size() == span_rows.size()) {
          tuple.push_back(in_w[idx]);
          if (self(self, idx + 1)) {
            tuple.pop_back();
            span_rows.pop_back();
            return true;
          }
          tuple.pop_back();
        }
        span_rows.pop_back();
      }
      return false;
    };
    dfs(dfs, 0);
    if (static_cast<int64_t>(basis_tuples_.size()) != dim_)
      throw std::logic_error("apartment classes failed to span the Steinberg space");
    if (use_mod) {
      // keep a rational solver only when explicitly requested later
      solver_.reset();
    } else {
      solver_ = std::move(qspan);
    }
  }

  int64_t dim() const { return dim_; }
  int top_degree() const { return top_degree_; }
  const Building& building() const { return building_; }
  const std::vector<std::vector<int32_t>>& basis_tuples() const { return basis_tuples_; }

  // Coordinates of the apartment class of an ordered basis of W in the
  // selected apartment basis.
  std::vector<Rat> classof(const std::vector<FVector>& basis) const {
    if (!solver_) throw std::logic_error("no rational solver for this Steinberg space");
    IntSum cyc = apartment_cycle(building_, basis, F_);
    std::vector<Rat> v(cc_.dim(top_degree_), Rat(0));
    for (auto& [i, c] : cyc.terms()) v[i] = Rat(static_cast<long>(c));
    return solver_->solve(v);
  }

 private:
  Subspace w_;
  PrimeField F_;
  Building building_;
  ChainComplex cc_;
  int top_degree_;
  int64_t dim_ = 0;
  std::vector<std::vector<int32_t>> basis_tuples_;
  mutable std::optional<ColumnSpan> solver_;
};

// St^omega(X): homology of the isotropic line complex of a symplectic
// subspace X in its middle degree, with selected symplectic apartment classes
// as basis. The zero subspace contributes the rank-one unit in degree -1.
class SteinbergOmegaSpace {
 public:
  SteinbergOmegaSpace(const SymplecticSpace& S, const Subspace& x, RankConfig rank_cfg = {})
      : S_(&S), x_(x) {
    g_ = x.dim() / 2;
    if (x.dim() % 2 != 0 || !is_symplectic(x, S))
      throw std::invalid_argument("need a symplectic subspace");
    if (g_ == 0) {
      dim_ = 1;
      basis_tuples_.push_back({});
      return;
    }
    top_degree_ = static_cast<int>(g_) - 1;
    complex_ = build_line_complex(S, x, LineComplexKind::I, 0, top_degree_ + 1);
    cc_ = chain_complex(complex_.cx, true, top_degree_ + 1);
    dim_ = betti(cc_, top_degree_, rank_cfg);
    span_.emplace(cc_.dim(top_degree_));
    // image of the boundary one degree up comes first
    auto cols = cc_.boundary(top_degree_ + 1).columns_as_sums();
    for (auto& col : cols) {
      std::vector<Rat> v(cc_.dim(top_degree_), Rat(0));
      for (auto& [r, c] : col.terms()) v[r] = c;
      span_->try_add(v);
    }
    image_rank_ = static_cast<int64_t>(span_->size());
    // canonical stream of symplectic bases: least unused line first, partners
    // in the global line order, pairing normalized to 1
    std::vector<FVector> partial;
    std::vector<char> used(complex_.global_lines.size(), 0);
    auto stream = [&](auto&& self) -> bool {
      if (static_cast<int64_t>(basis_tuples_.size()) == dim_) return true;
      if (partial.size() == 2 * g_) {
        IntSum cyc = symplectic_apartment_cycle(complex_, S, partial);
        std::vector<Rat> v(cc_.dim(top_degree_), Rat(0));
        for (auto& [i, c] : cyc.terms()) v[i] = Rat(static_cast<long>(c));
        if (span_->try_add(v)) basis_tuples_.push_back(partial);
        return static_cast<int64_t>(basis_tuples_.size()) == dim_;
      }
      // least unused line perpendicular to all chosen pairs
      int32_t first = -1;
      for (size_t v = 0; v < complex_.global_lines.size(); ++v) {
        if (used[v]) continue;
        const FVector& rep = S.lines().rep(complex_.global_lines[v]);
        bool perp_ok = true;
        for (const auto& u : partial)
          if (S.omega(rep, u) != 0) perp_ok = false;
        if (perp_ok) {
          first = static_cast<int32_t>(v);
          break;
        }
      }
      if (first < 0) return false;
      FVector e = S.lines().rep(complex_.global_lines[first]);
      used[first] = 1;
      for (size_t v = 0; v < complex_.global_lines.size(); ++v) {
        if (used[v]) continue;
        FVector f = S.lines().rep(complex_.global_lines[v]);
        uint32_t pairing = S.omega(e, f);
        if (pairing == 0) continue;
        bool perp_ok = true;
        for (const auto& u : partial)
          if (S.omega(f, u) != 0) perp_ok = false;
        if (!perp_ok) continue;
        uint32_t c = S.field().inv(pairing);
        for (auto& xx : f) xx = S.field().mul(xx, c);
        used[v] = 1;
        partial.push_back(e);
        partial.push_back(f);
        if (self(self)) {
          partial.pop_back();
          partial.pop_back();
          used[v] = 0;
          used[first] = 0;
          return true;
        }
        partial.pop_back();
        partial.pop_back();
        used[v] = 0;
      }
      used[first] = 0;
      return false;
    };
    stream(stream);
    if (static_cast<int64_t>(basis_tuples_.size()) != dim_)
      throw std::logic_error("symplectic apartments failed to span");
  }

  bool is_unit() const { return g_ == 0; }
  int64_t dim() const { return dim_; }
  uint32_t genus() const { return g_; }
  int top_degree() const { return is_unit() ? -1 : top_degree_; }
  const LineComplex& complex() const { return complex_; }
  const std::vector<std::vector<FVector>>& basis_tuples() const { return basis_tuples_; }

  IntSum join_chain(const std::vector<FVector>& sympl_basis) const {
    return symplectic_apartment_cycle(complex_, *S_, sympl_basis);
  }

  // Coordinates of a top-degree cycle modulo boundaries, in the selected
  // apartment basis.
  std::vector<Rat> project_chain(const IntSum& chain) const {
    if (is_unit()) throw std::logic_error("unit space has no chains");
    std::vector<Rat> v(cc_.dim(top_degree_), Rat(0));
    for (auto& [i, c] : chain.terms()) v[i] = Rat(static_cast<long>(c));
    std::vector<Rat> x = span_->solve(v);
    return std::vector<Rat>(x.begin() + image_rank_, x.end());
  }

  std::vector<Rat> classof(const std::vector<FVector>& sympl_basis) const {
    if (is_unit()) {
      if (!sympl_basis.empty()) throw std::invalid_argument("unit space takes the empty basis");
      return {Rat(1)};
    }
    return project_chain(join_chain(sympl_basis));
  }

 private:
  const SymplecticSpace* S_;
  Subspace x_;
  uint32_t g_ = 0;
  int top_degree_ = -1;
  int64_t dim_ = 0;
  int64_t image_rank_ = 0;
  LineComplex complex_;
  ChainComplex cc_;
  std::vector<std::vector<FVector>> basis_tuples_;
  mutable std::optional<ColumnSpan> span_;
};

}  // namespace sharbly
