#pragma once

#include "sharbly/symp_sharbly.hpp"

namespace sharbly {

// A normalization of the genus-2 factor of a V12 generator: an ordered pair
// of its lines with nonzero pairing, scaled to a hyperbolic pair (w1, w1bar),
// and the two remaining lines written as w2 + a w1 + b w1bar and
// (scalar) (w2bar + c w1 + d w1bar) over the induced completion.
struct V12Normalization {
  int i = 0, j = 0, k = 0, l = 0;  // positions in the 4-line factor
  FVector w1, w1bar, w2, w2bar;
  uint32_t a = 0, b = 0, c = 0, d = 0;
};

inline int v12_factor_position(const SymplecticSpace& S, const TensorGen& g) {
  int pos = -1;
  for (size_t i = 0; i < g.decomp.size(); ++i) {
    if (g.decomp[i].dim() == 4 && g.factors[i].size() == 4) {
      if (pos >= 0) throw std::invalid_argument("not a V12 generator");
      pos = static_cast<int>(i);
    } else if (!(g.decomp[i].dim() == 2 && g.factors[i].size() == 2)) {
      throw std::invalid_argument("not a V12 generator");
    }
  }
  if (pos < 0) throw std::invalid_argument("not a V12 generator");
  return pos;
}

inline std::vector<V12Normalization> v12_normalizations(const SymplecticSpace& S,
                                                        const std::vector<int32_t>& quad) {
  const PrimeField& F = S.field();
  std::vector<FVector> reps;
  for (int32_t l : quad) reps.push_back(S.lines().rep(l));
  std::vector<V12Normalization> out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      uint32_t u = S.omega(reps[i], reps[j]);
      if (u == 0) continue;
      FVector w1 = reps[i];
      FVector w1bar = reps[j];
      uint32_t scale = F.inv(u);
      for (auto& x : w1bar) x = F.mul(x, scale);
      std::vector<int> rest;
      for (int t = 0; t < 4; ++t)
        if (t != i && t != j) rest.push_back(t);
      for (int order = 0; order < 2; ++order) {
        int k = rest[order], l = rest[1 - order];
        V12Normalization n;
        n.i = i;
        n.j = j;
        n.k = k;
        n.l = l;
        n.w1 = w1;
        n.w1bar = w1bar;
        // u' = w2 + a w1 + b w1bar with w2 = projection into the completion
        const FVector& up = reps[k];
        n.a = S.omega(up, w1bar);
        n.b = F.neg(S.omega(up, w1));
        n.w2.assign(S.dim(), 0);
        for (uint32_t t = 0; t < S.dim(); ++t)
          n.w2[t] = F.sub(up[t], F.add(F.mul(n.a, w1[t]), F.mul(n.b, w1bar[t])));
        // v' = e (w2bar + c w1 + d w1bar)
        const FVector& vp = reps[l];
        FVector pv(S.dim(), 0);
        uint32_t ca = S.omega(vp, w1bar);
        uint32_t cb = F.neg(S.omega(vp, w1));
        for (uint32_t t = 0; t < S.dim(); ++t)
          pv[t] = F.sub(vp[t], F.add(F.mul(ca, w1[t]), F.mul(cb, w1bar[t])));
        uint32_t e = S.omega(n.w2, pv);
        if (e == 0) throw std::logic_error("projections fail to pair in a genus-2 factor");
        uint32_t einv = F.inv(e);
        n.w2bar.assign(S.dim(), 0);
        for (uint32_t t = 0; t < S.dim(); ++t) n.w2bar[t] = F.mul(pv[t], einv);
        n.c = F.mul(ca, einv);
        n.d = F.mul(cb, einv);
        out.push_back(std::move(n));
      }
    }
  return out;
}

struct StandardWitness {
  bool standard = false;
  std::vector<FVector> basis;  // w1, w1bar, w2, w2bar
  uint32_t a = 0;
};

// Definition check by finite search over the <= 24 normalizations: standard
// means some normalization has b = c = d = 0.
inline StandardWitness is_standard(const SymplecticSpace& S, const TensorGen& g) {
  int pos = v12_factor_position(S, g);
  StandardWitness w;
  for (const auto& n : v12_normalizations(S, g.factors[pos])) {
    if (n.b == 0 && n.c == 0 && n.d == 0) {
      w.standard = true;
      w.basis = {n.w1, n.w1bar, n.w2, n.w2bar};
      w.a = n.a;
      return w;
    }
  }
  return w;
}

// 0 standard, 1 pair (a,b) killable, 2 b killable with a != 0, 3 otherwise.
inline int v12_case_rank(const SymplecticSpace& S, const TensorGen& g) {
  int pos = v12_factor_position(S, g);
  int best = 3;
  for (const auto& n : v12_normalizations(S, g.factors[pos])) {
    int r = 3;
    if (n.b == 0 && n.c == 0 && n.d == 0)
      r = 0;
    else if (n.a == 0 && n.b == 0)
      r = 1;
    else if (n.b == 0 && n.a != 0)
      r = 2;
    best = std::min(best, r);
    if (best == 0) break;
  }
  return best;
}

struct ReduceResult {
  std::vector<std::pair<TensorGen, int64_t>> tau;       // V2 corrections
  std::vector<std::pair<TensorGen, int64_t>> residual;  // V11 plus standard V12
  int64_t steps = 0;
};

// Rewrites a V12 chain modulo boundaries of V2 corrections until every V12
// term is standard: sigma - d2(tau) = residual. Each correction inserts one
// line into the genus-2 factor; the emitted V12 terms drop strictly in case
// rank, so chains terminate within depth 3.
inline ReduceResult standard_reduce(const SymplecticSpace& S,
                                    const std::vector<std::pair<TensorGen, int64_t>>& sigma,
                                    int max_depth = 64) {
  const PrimeField& F = S.field();
  struct Entry {
    TensorGen gen;
    int64_t coeff = 0;
    int depth = 0;
  };
  std::unordered_map<std::string, Entry> work;      // V12 terms in play
  std::unordered_map<std::string, Entry> residual;  // V11 and standard V12
  auto add_work = [&](TensorGen gen, int64_t c, int depth) {
    if (c == 0) return;
    std::string key = gen.key();
    auto it = work.find(key);
    if (it == work.end())
      work[key] = Entry{std::move(gen), c, depth};
    else {
      it->second.coeff += c;
      it->second.depth = std::max(it->second.depth, depth);
      if (it->second.coeff == 0) work.erase(it);
    }
  };
  auto add_residual = [&](TensorGen gen, int64_t c) {
    if (c == 0) return;
    std::string key = gen.key();
    auto it = residual.find(key);
    if (it == residual.end())
      residual[key] = Entry{std::move(gen), c, 0};
    else {
      it->second.coeff += c;
      if (it->second.coeff == 0) residual.erase(it);
    }
  };
  for (auto& [g, c] : sigma) {
    v12_factor_position(S, g);  // shape validation
    add_work(g, c, 0);
  }
  ReduceResult out;
  std::unordered_map<std::string, std::pair<TensorGen, int64_t>> tau_acc;
  while (!work.empty()) {
    // deterministic pick: smallest key
    auto pick = work.begin();
    for (auto it = work.begin(); it != work.end(); ++it)
      if (it->first < pick->first) pick = it;
    Entry entry = pick->second;
    work.erase(pick);
    if (entry.depth > max_depth)
      throw std::logic_error("standard reduction exceeded the depth bound");
    int rank_here = v12_case_rank(S, entry.gen);
    if (rank_here == 0) {
      add_residual(std::move(entry.gen), entry.coeff);
      continue;
    }
    ++out.steps;
    int pos = v12_factor_position(S, entry.gen);
    // first normalization attaining the minimal rank
    V12Normalization chosen;
    bool found = false;
    for (const auto& n : v12_normalizations(S, entry.gen.factors[pos])) {
      int r = 3;
      if (n.b == 0 && n.c == 0 && n.d == 0)
        r = 0;
      else if (n.a == 0 && n.b == 0)
        r = 1;
      else if (n.b == 0 && n.a != 0)
        r = 2;
      if (r == rank_here) {
        chosen = n;
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("no normalization matches the case rank");
    // inserted line per case
    FVector inserted(S.dim(), 0);
    if (rank_here == 1) {
      // c w1 + d w1bar
      for (uint32_t t = 0; t < S.dim(); ++t)
        inserted[t] = F.add(F.mul(chosen.c, chosen.w1[t]), F.mul(chosen.d, chosen.w1bar[t]));
    } else if (rank_here == 2) {
      inserted = chosen.w2;
    } else {
      // w2 + a w1
      for (uint32_t t = 0; t < S.dim(); ++t)
        inserted[t] = F.add(chosen.w2[t], F.mul(chosen.a, chosen.w1[t]));
    }
    std::vector<int32_t> quint = entry.gen.factors[pos];
    quint.push_back(S.lines().line_of(inserted));
    std::vector<std::vector<int32_t>> tuples = entry.gen.factors;
    tuples[pos] = quint;
    auto [tau_gen, tau_sign] = make_tensor_gen(entry.gen.decomp, std::move(tuples));
    if (tau_sign == 0) throw std::logic_error("correction degenerated to a repeated line");
    // locate the current term inside d2 of the canonical correction
    std::vector<GenTerm> image = diff_terms(S, tau_gen);
    int64_t eps = 0;
    std::string want = entry.gen.key();
    for (auto& t : image)
      if (t.gen.key() == want) eps += t.coeff;
    if (eps != 1 && eps != -1) throw std::logic_error("correction does not reproduce the term");
    int64_t scale = entry.coeff * eps;  // coeff / eps with eps = +-1
    // tau += scale * tau_gen (canonical orientation)
    {
      std::string tkey = tau_gen.key();
      auto it = tau_acc.find(tkey);
      if (it == tau_acc.end())
        tau_acc[tkey] = {tau_gen, scale};
      else {
        it->second.second += scale;
        if (it->second.second == 0) tau_acc.erase(it);
      }
    }
    // sigma -= scale * d2(tau_gen): removes the current term, emits the rest
    for (auto& t : image) {
      int64_t c = -scale * t.coeff;
      if (t.gen.key() == want) c += entry.coeff;  // the picked term was already removed
      if (c == 0) continue;
      bool is_v12 = true;
      for (size_t i = 0; i < t.gen.decomp.size(); ++i)
        if (t.gen.factors[i].size() != t.gen.decomp[i].dim()) is_v12 = false;
      if (t.gen.decomp.size() != S.n() - 1) is_v12 = false;
      if (is_v12)
        add_work(std::move(t.gen), c, entry.depth + 1);
      else
        add_residual(std::move(t.gen), c);
    }
  }
  for (auto& [k, e] : residual) out.residual.push_back({std::move(e.gen), e.coeff});
  for (auto& [k, e] : tau_acc) out.tau.push_back({std::move(e.first), e.second});
  std::sort(out.residual.begin(), out.residual.end(),
            [](const auto& a, const auto& b) { return a.first.key() < b.first.key(); });
  std::sort(out.tau.begin(), out.tau.end(),
            [](const auto& a, const auto& b) { return a.first.key() < b.first.key(); });
  return out;
}

}  // namespace sharbly
