#pragma once

#include <gmpxx.h>

#include <cassert>
#include <cstdint>
#include <optional>
#include <vector>

#include "sharbly/field.hpp"
#include "sharbly/sparse.hpp"

namespace sharbly {

enum class RankMode { Exact, Modular, Auto };

struct RankConfig {
  RankMode mode = RankMode::Auto;
  int64_t exact_col_threshold = 2000;  // Auto: exact when cols <= threshold
  uint64_t seed = 0x5eedULL;
  // Early stop for modular elimination when an upper bound on the rank is
  // known from other exact information; -1 disables.
  int64_t stop_at = -1;
};

namespace detail {

using IRow = std::vector<std::pair<int32_t, mpz_class>>;  // sorted by column

// pivot*row - factor*other, fraction-free; the row content (gcd) is divided
// out afterwards to keep entries small under sparse pivoting.
inline IRow fraction_free_combine(const IRow& row, const IRow& pivot_row, const mpz_class& pivot,
                                  const mpz_class& factor) {
  IRow out;
  out.reserve(row.size() + pivot_row.size());
  size_t i = 0, j = 0;
  mpz_class tmp;
  while (i < row.size() || j < pivot_row.size()) {
    int32_t ci = i < row.size() ? row[i].first : INT32_MAX;
    int32_t cj = j < pivot_row.size() ? pivot_row[j].first : INT32_MAX;
    int32_t col = ci < cj ? ci : cj;
    if (ci < cj) {
      tmp = pivot * row[i].second;
      ++i;
    } else if (cj < ci) {
      tmp = -factor * pivot_row[j].second;
      ++j;
    } else {
      tmp = pivot * row[i].second - factor * pivot_row[j].second;
      ++i;
      ++j;
    }
    if (tmp == 0) continue;
    out.push_back({col, tmp});
  }
  mpz_class g = 0;
  for (auto& [c, v] : out) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  if (g > 1)
    for (auto& [c, v] : out) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  return out;
}

inline std::vector<IRow> integer_rows(const SparseMat& m) {
  std::vector<IRow> rows(m.rows);
  // clear denominators per row (row scaling does not change rank)
  std::vector<mpz_class> lcm(m.rows, 1);
  for (auto& [r, c, v] : m.entries) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), lcm[r].get_mpz_t(), v.get_den().get_mpz_t());
    lcm[r] = lcm[r] / g * v.get_den();
  }
  for (auto& [r, c, v] : m.entries) {
    mpz_class scaled = v.get_num() * (lcm[r] / v.get_den());
    rows[r].push_back({c, std::move(scaled)});
  }
  return rows;
}

}  // namespace detail

// Fraction-free sparse elimination with Markowitz least-fill pivoting,
// deterministic tie-break on (row, col).
inline int64_t rank_exact(const SparseMat& m) {
  auto rows = detail::integer_rows(m);
  std::vector<char> row_done(m.rows, 0);
  std::vector<int32_t> col_count(m.cols, 0);
  std::vector<char> col_done(m.cols, 0);
  for (int64_t r = 0; r < m.rows; ++r)
    for (auto& [c, v] : rows[r]) ++col_count[c];
  int64_t rank = 0;
  for (;;) {
    int64_t best = -1;
    int32_t br = -1, bc = -1;
    for (int32_t r = 0; r < m.rows; ++r) {
      if (row_done[r] || rows[r].empty()) continue;
      int64_t rw = static_cast<int64_t>(rows[r].size()) - 1;
      for (auto& [c, v] : rows[r]) {
        if (col_done[c]) continue;
        int64_t score = rw * (col_count[c] - 1);
        if (best < 0 || score < best || (score == best && (r < br || (r == br && c < bc)))) {
          best = score;
          br = r;
          bc = c;
        }
      }
    }
    if (best < 0) break;
    ++rank;
    mpz_class pivot;
    for (auto& [c, v] : rows[br])
      if (c == bc) pivot = v;
    for (int32_t r = 0; r < m.rows; ++r) {
      if (r == br || row_done[r] || rows[r].empty()) continue;
      mpz_class factor = 0;
      for (auto& [c, v] : rows[r])
        if (c == bc) factor = v;
      if (factor == 0) continue;
      for (auto& [c, v] : rows[r]) --col_count[c];
      rows[r] = detail::fraction_free_combine(rows[r], rows[br], pivot, factor);
      for (auto& [c, v] : rows[r]) ++col_count[c];
    }
    row_done[br] = 1;
    col_done[bc] = 1;
    for (auto& [c, v] : rows[br]) --col_count[c];
  }
  return rank;
}

// Incremental column elimination mod ell. Pivot rows are stored densely.
// Stops once `stop_at` pivots have been found (when >= 0).
inline int64_t rank_mod(const SparseMat& m, uint64_t ell, int64_t stop_at = -1) {
  const uint64_t L = ell;
  auto mulmod = [&](uint64_t a, uint64_t b) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % L);
  };
  auto invmod = [&](uint64_t a) {
    uint64_t inv = 1, base = a, e = L - 2;
    while (e) {
      if (e & 1) inv = mulmod(inv, base);
      base = mulmod(base, base);
      e >>= 1;
    }
    return inv;
  };
  auto red = [&](const Rat& v) -> uint64_t {
    uint64_t num = mpz_fdiv_ui(v.get_num().get_mpz_t(), L);
    uint64_t den = mpz_fdiv_ui(v.get_den().get_mpz_t(), L);
    if (den == 0) throw std::domain_error("denominator divisible by modulus");
    return mulmod(num, invmod(den));
  };
  std::vector<std::vector<std::pair<int32_t, uint64_t>>> cols(m.cols);
  for (auto& [r, c, v] : m.entries) {
    uint64_t x = red(v);
    if (x) cols[c].push_back({r, x});
  }
  // pivot storage: lead row -> dense vector
  std::vector<int32_t> pivot_of_row(m.rows, -1);
  std::vector<std::vector<uint64_t>> pivots;
  std::vector<uint64_t> work(m.rows);
  int64_t rank = 0;
  for (int64_t c = 0; c < m.cols; ++c) {
    if (stop_at >= 0 && rank >= stop_at) break;
    if (cols[c].empty()) continue;
    std::fill(work.begin(), work.end(), 0);
    for (auto& [r, x] : cols[c]) work[r] = x;
    for (int32_t r = 0; r < m.rows; ++r) {
      if (work[r] == 0) continue;
      int32_t pi = pivot_of_row[r];
      if (pi < 0) {
        // new pivot at lead row r; normalize
        uint64_t inv = invmod(work[r]);
        std::vector<uint64_t> pv(m.rows - r);
        for (int64_t k = r; k < m.rows; ++k) pv[k - r] = mulmod(work[k], inv);
        pivot_of_row[r] = static_cast<int32_t>(pivots.size());
        pivots.push_back(std::move(pv));
        ++rank;
        break;
      }
      uint64_t f = work[r];
      const auto& pv = pivots[pi];
      for (size_t k = 0; k < pv.size(); ++k) {
        if (pv[k] == 0) continue;
        uint64_t& w = work[r + k];
        uint64_t sub = mulmod(f, pv[k]);
        w = w >= sub ? w - sub : w + L - sub;
      }
    }
  }
  return rank;
}

// Rank per the configured mode. Modular mode runs two random primes and
// escalates to a third on disagreement, returning the maximum.
inline int64_t rank(const SparseMat& m, RankConfig cfg = {}) {
  if (m.entries.empty()) return 0;
  RankMode mode = cfg.mode;
  if (mode == RankMode::Auto)
    mode = m.cols <= cfg.exact_col_threshold ? RankMode::Exact : RankMode::Modular;
  if (mode == RankMode::Exact) return rank_exact(m);
  SplitMix64 rng(cfg.seed);
  int64_t stop = cfg.stop_at >= 0 ? cfg.stop_at : std::min(m.rows, m.cols);
  uint64_t p1 = random_large_prime(rng);
  uint64_t p2 = p1;
  while (p2 == p1) p2 = random_large_prime(rng);
  int64_t r1 = rank_mod(m, p1, stop);
  int64_t r2 = rank_mod(m, p2, stop);
  if (r1 == r2) return r1;
  uint64_t p3 = random_large_prime(rng);
  int64_t r3 = rank_mod(m, p3, stop);
  return std::max({r1, r2, r3});
}

// True iff v lies in the column span of m, by exact elimination.
inline bool in_image(const SparseMat& m, const std::vector<Rat>& v) {
  if (static_cast<int64_t>(v.size()) != m.rows) throw std::invalid_argument("dimension mismatch");
  bool vzero = true;
  for (auto& x : v)
    if (x != 0) vzero = false;
  if (vzero) return true;
  SparseMat aug = m;
  aug.cols = m.cols + 1;
  for (size_t r = 0; r < v.size(); ++r)
    if (v[r] != 0) aug.entries.push_back({static_cast<int32_t>(r), static_cast<int32_t>(m.cols), v[r]});
  aug.sort_entries();
  return rank_exact(aug) == rank_exact(m);
}

// Smith normal form invariant factors for small integer matrices.
inline std::vector<mpz_class> snf_small(const SparseMat& m) {
  if (m.rows * m.cols > 40000)
    throw budget_error("snf_small limited to 40000 cells; use rank instead");
  for (auto& [r, c, v] : m.entries)
    if (v.get_den() != 1) throw std::invalid_argument("snf_small requires integer entries");
  std::vector<std::vector<mpz_class>> a(m.rows, std::vector<mpz_class>(m.cols, 0));
  for (auto& [r, c, v] : m.entries) a[r][c] = v.get_num();
  int64_t t = 0;
  std::vector<mpz_class> inv;
  while (true) {
    // find nonzero entry with minimal absolute value in the remaining block
    int64_t br = -1, bc = -1;
    for (int64_t i = t; i < m.rows; ++i)
      for (int64_t j = t; j < m.cols; ++j)
        if (a[i][j] != 0 &&
            (br < 0 || mpz_cmpabs(a[i][j].get_mpz_t(), a[br][bc].get_mpz_t()) < 0)) {
          br = i;
          bc = j;
        }
    if (br < 0) break;
    std::swap(a[t], a[br]);
    for (int64_t i = t; i < m.rows; ++i) std::swap(a[i][t], a[i][bc]);
    bool again = false;
    for (int64_t i = t + 1; i < m.rows; ++i) {
      if (a[i][t] == 0) continue;
      mpz_class q = a[i][t] / a[t][t];
      for (int64_t j = t; j < m.cols; ++j) a[i][j] -= q * a[t][j];
      if (a[i][t] != 0) again = true;
    }
    for (int64_t j = t + 1; j < m.cols; ++j) {
      if (a[t][j] == 0) continue;
      mpz_class q = a[t][j] / a[t][t];
      for (int64_t i = t; i < m.rows; ++i) a[i][j] -= q * a[i][t];
      if (a[t][j] != 0) again = true;
    }
    if (again) continue;
    // divisibility fix-up
    bool fixed = true;
    for (int64_t i = t + 1; i < m.rows && fixed; ++i)
      for (int64_t j = t + 1; j < m.cols && fixed; ++j)
        if (a[i][j] % a[t][t] != 0) {
          for (int64_t jj = t; jj < m.cols; ++jj) a[t][jj] += a[i][jj];
          fixed = false;
        }
    if (!fixed) continue;
    mpz_class d = abs(a[t][t]);
    inv.push_back(d);
    ++t;
    if (t >= m.rows || t >= m.cols) break;
  }
  return inv;
}

}  // namespace sharbly
