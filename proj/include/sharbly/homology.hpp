#pragma once

#include <optional>
#include <vector>

#include "sharbly/rank.hpp"
#include "sharbly/simplicial.hpp"

namespace sharbly {

inline std::vector<std::vector<Rat>> to_dense(const SparseMat& m) {
  if (m.rows * m.cols > 6000000) throw budget_error("matrix too large for dense arithmetic");
  std::vector<std::vector<Rat>> d(m.rows, std::vector<Rat>(m.cols, Rat(0)));
  for (auto& [r, c, v] : m.entries) d[r][c] = v;
  return d;
}

// In-place RREF over Q; returns pivot columns.
inline std::vector<int> rref_dense(std::vector<std::vector<Rat>>& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  size_t cols = m[0].size(), row = 0;
  for (size_t col = 0; col < cols && row < m.size(); ++col) {
    size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    Rat inv = 1 / m[row][col];
    for (size_t j = col; j < cols; ++j) m[row][j] *= inv;
    for (size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][col] == 0) continue;
      Rat c = m[i][col];
      for (size_t j = col; j < cols; ++j) m[i][j] -= c * m[row][j];
    }
    pivots.push_back(static_cast<int>(col));
    ++row;
  }
  return pivots;
}

// Basis of {x : m x = 0}, one column per free variable, deterministic order.
inline std::vector<std::vector<Rat>> kernel_basis(const SparseMat& m) {
  auto d = to_dense(m);
  auto pivots = rref_dense(d);
  std::vector<char> is_pivot(m.cols, 0);
  for (int c : pivots) is_pivot[c] = 1;
  std::vector<std::vector<Rat>> out;
  for (int64_t free = 0; free < m.cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rat> v(m.cols, Rat(0));
    v[free] = 1;
    for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -d[i][free];
    out.push_back(std::move(v));
  }
  return out;
}

inline std::vector<std::vector<Rat>> invert_dense(std::vector<std::vector<Rat>> m) {
  size_t n = m.size();
  std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n, Rat(0)));
  for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (size_t col = 0; col < n; ++col) {
    size_t sel = col;
    while (sel < n && m[sel][col] == 0) ++sel;
    if (sel == n) throw std::invalid_argument("matrix not invertible");
    std::swap(m[col], m[sel]);
    std::swap(inv[col], inv[sel]);
    Rat d = 1 / m[col][col];
    for (size_t j = 0; j < n; ++j) m[col][j] *= d, inv[col][j] *= d;
    for (size_t i = 0; i < n; ++i) {
      if (i == col || m[i][col] == 0) continue;
      Rat c = m[i][col];
      for (size_t j = 0; j < n; ++j) m[i][j] -= c * m[col][j], inv[i][j] -= c * inv[col][j];
    }
  }
  return inv;
}

// Incremental exact column span with pivot tracking; solves coordinates of
// vectors in the span of the accepted columns.
class ColumnSpan {
 public:
  explicit ColumnSpan(int64_t dim) : dim_(dim) {}

  bool try_add(const std::vector<Rat>& col) {
    std::vector<Rat> v = col;
    for (size_t t = 0; t < reduced_.size(); ++t) {
      const Rat& x = v[pivot_rows_[t]];
      if (x == 0) continue;
      Rat c = x;
      for (int64_t r = 0; r < dim_; ++r) v[r] -= c * reduced_[t][r];
    }
    int32_t pr = -1;
    for (int64_t r = 0; r < dim_; ++r)
      if (v[r] != 0) {
        pr = static_cast<int32_t>(r);
        break;
      }
    if (pr < 0) return false;
    Rat inv = 1 / v[pr];
    for (auto& x : v) x *= inv;
    reduced_.push_back(std::move(v));
    pivot_rows_.push_back(pr);
    original_.push_back(col);
    final_inv_.reset();
    return true;
  }

  size_t size() const { return original_.size(); }
  int64_t dim() const { return dim_; }
  const std::vector<Rat>& original(size_t i) const { return original_[i]; }

  // Coordinates of v in the accepted columns; throws if v is not in the span.
  std::vector<Rat> solve(const std::vector<Rat>& v) const {
    if (!final_inv_) {
      size_t t = original_.size();
      std::vector<std::vector<Rat>> m(t, std::vector<Rat>(t, Rat(0)));
      for (size_t i = 0; i < t; ++i)
        for (size_t j = 0; j < t; ++j) m[i][j] = original_[j][pivot_rows_[i]];
      final_inv_ = invert_dense(std::move(m));
    }
    size_t t = original_.size();
    std::vector<Rat> x(t, Rat(0));
    for (size_t i = 0; i < t; ++i) {
      const Rat& vi = v[pivot_rows_[i]];
      if (vi == 0) continue;
      for (size_t j = 0; j < t; ++j) x[j] += (*final_inv_)[j][i] * vi;
    }
    // membership verification
    std::vector<Rat> check = v;
    for (size_t j = 0; j < t; ++j) {
      if (x[j] == 0) continue;
      for (int64_t r = 0; r < dim_; ++r) check[r] -= x[j] * original_[j][r];
    }
    for (auto& c : check)
      if (c != 0) throw std::invalid_argument("vector not in span");
    return x;
  }

 private:
  int64_t dim_;
  std::vector<std::vector<Rat>> reduced_;
  std::vector<int32_t> pivot_rows_;
  std::vector<std::vector<Rat>> original_;
  mutable std::optional<std::vector<std::vector<Rat>>> final_inv_;
};

// Modular variant used only to certify linear independence of integer
// vectors: independence mod ell implies independence over Q.
class ColumnSpanMod {
 public:
  ColumnSpanMod(int64_t dim, uint64_t ell) : dim_(dim), ell_(ell) {}

  bool try_add(const std::vector<Rat>& col) {
    std::vector<uint64_t> v(dim_);
    for (int64_t r = 0; r < dim_; ++r) {
      uint64_t num = mpz_fdiv_ui(col[r].get_num().get_mpz_t(), ell_);
      uint64_t den = mpz_fdiv_ui(col[r].get_den().get_mpz_t(), ell_);
      if (den == 0) throw std::domain_error("denominator divisible by modulus");
      v[r] = mulmod(num, invmod(den));
    }
    for (size_t t = 0; t < reduced_.size(); ++t) {
      uint64_t x = v[pivot_rows_[t]];
      if (x == 0) continue;
      for (int64_t r = 0; r < dim_; ++r) {
        uint64_t sub = mulmod(x, reduced_[t][r]);
        v[r] = v[r] >= sub ? v[r] - sub : v[r] + ell_ - sub;
      }
    }
    int32_t pr = -1;
    for (int64_t r = 0; r < dim_; ++r)
      if (v[r] != 0) {
        pr = static_cast<int32_t>(r);
        break;
      }
    if (pr < 0) return false;
    uint64_t inv = invmod(v[pr]);
    for (auto& x : v) x = mulmod(x, inv);
    reduced_.push_back(std::move(v));
    pivot_rows_.push_back(pr);
    return true;
  }

  size_t size() const { return reduced_.size(); }

 private:
  uint64_t mulmod(uint64_t a, uint64_t b) const {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % ell_);
  }
  uint64_t invmod(uint64_t a) const {
    uint64_t r = 1, base = a, e = ell_ - 2;
    while (e) {
      if (e & 1) r = mulmod(r, base);
      base = mulmod(base, base);
      e >>= 1;
    }
    return r;
  }
  int64_t dim_;
  uint64_t ell_;
  std::vector<std::vector<uint64_t>> reduced_;
  std::vector<int32_t> pivot_rows_;
};

// Reduced/relative Betti number dim C_k - rank d_k - rank d_{k+1}.
inline int64_t betti(const ChainComplex& C, int k, RankConfig cfg = {}) {
  if (k < C.lo || k > C.hi()) throw std::invalid_argument("degree outside materialized window");
  int64_t r1 = C.boundary(k).entries.empty() ? 0 : rank(C.boundary(k), cfg);
  int64_t r2 = C.boundary(k + 1).entries.empty() ? 0 : rank(C.boundary(k + 1), cfg);
  return C.dim(k) - r1 - r2;
}

// Cycle basis of H_k = ker d_k / im d_{k+1} with a projector that vanishes
// exactly on boundaries.
struct HomologyBasis {
  int degree = 0;
  int64_t betti = 0;
  int64_t image_rank = 0;
  std::vector<std::vector<Rat>> cycle_basis;  // chain coordinates, C_k
  ColumnSpan span;                            // image columns first, then cycles

  explicit HomologyBasis(int64_t chain_dim) : span(chain_dim) {}

  // Coordinates of a cycle modulo boundaries.
  std::vector<Rat> project(const std::vector<Rat>& cycle) const {
    std::vector<Rat> x = span.solve(cycle);
    return std::vector<Rat>(x.begin() + image_rank, x.end());
  }
  std::vector<Rat> project(const IntSum& cycle) const {
    std::vector<Rat> v(span.dim(), Rat(0));
    for (auto& [i, c] : cycle.terms()) v[i] = Rat(static_cast<long>(c));
    return project(v);
  }
};

inline HomologyBasis homology_coords(const ChainComplex& C, int k) {
  if (k < C.lo || k > C.hi()) throw std::invalid_argument("degree outside materialized window");
  HomologyBasis H(C.dim(k));
  H.degree = k;
  const SparseMat& dk1 = C.boundary(k + 1);
  if (!dk1.entries.empty()) {
    auto cols = dk1.columns_as_sums();
    for (auto& col : cols) {
      std::vector<Rat> v(C.dim(k), Rat(0));
      for (auto& [r, c] : col.terms()) v[r] = c;
      H.span.try_add(v);
    }
  }
  H.image_rank = static_cast<int64_t>(H.span.size());
  std::vector<std::vector<Rat>> kern;
  if (C.boundary(k).entries.empty()) {
    // every chain is a cycle
    for (int64_t i = 0; i < C.dim(k); ++i) {
      std::vector<Rat> v(C.dim(k), Rat(0));
      v[i] = 1;
      kern.push_back(std::move(v));
    }
  } else {
    kern = kernel_basis(C.boundary(k));
  }
  for (auto& z : kern)
    if (H.span.try_add(z)) H.cycle_basis.push_back(z);
  H.betti = static_cast<int64_t>(H.cycle_basis.size());
  return H;
}

}  // namespace sharbly
