#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "sharbly/field.hpp"

namespace sharbly {

using Matrix = std::vector<FVector>;  // rows

// In-place reduced row echelon form; returns pivot columns. Zero rows dropped.
inline std::vector<int> rref_in_place(Matrix& m, const PrimeField& F) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  size_t cols = m[0].size();
  size_t row = 0;
  for (size_t col = 0; col < cols && row < m.size(); ++col) {
    size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    uint32_t ip = F.inv(m[row][col]);
    for (size_t j = col; j < cols; ++j) m[row][j] = F.mul(m[row][j], ip);
    for (size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][col] == 0) continue;
      uint32_t c = m[i][col];
      for (size_t j = col; j < cols; ++j) m[i][j] = F.sub(m[i][j], F.mul(c, m[row][j]));
    }
    pivots.push_back(static_cast<int>(col));
    ++row;
  }
  m.resize(row);
  return pivots;
}

// Coordinate vectors are ordered colexicographically: the rightmost
// coordinate is most significant, so e_1 < ebar_1 < e_1+ebar_1 < e_2 < ...
// in the standard interleaved basis. This is the global order behind every
// orientation sign.
inline bool colex_less(const FVector& a, const FVector& b) {
  for (size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

inline bool colex_rows_less(const Matrix& a, const Matrix& b) {
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] == b[i]) continue;
    return colex_less(a[i], b[i]);
  }
  return a.size() < b.size();
}

// Canonical subspace of F_p^ambient: basis rows in RREF, unique per subspace.
class Subspace {
 public:
  Subspace(Matrix rows, uint32_t ambient, const PrimeField& F)
      : basis_(std::move(rows)), ambient_(ambient), p_(F.p()) {
    for (auto& r : basis_)
      if (r.size() != ambient_) throw std::invalid_argument("row length != ambient dimension");
    rref_in_place(basis_, F);
  }

  static Subspace zero(uint32_t ambient, const PrimeField& F) { return Subspace({}, ambient, F); }

  const Matrix& basis() const { return basis_; }
  uint32_t dim() const { return static_cast<uint32_t>(basis_.size()); }
  uint32_t ambient() const { return ambient_; }
  uint32_t p() const { return p_; }

  bool contains(const FVector& v) const {
    if (v.size() != ambient_) throw std::invalid_argument("dimension mismatch");
    PrimeField F(p_);
    FVector r = v;
    for (const auto& b : basis_) {
      size_t piv = 0;
      while (piv < ambient_ && b[piv] == 0) ++piv;
      if (r[piv] != 0) {
        uint32_t c = r[piv];
        for (size_t j = piv; j < ambient_; ++j) r[j] = F.sub(r[j], F.mul(c, b[j]));
      }
    }
    for (auto x : r)
      if (x != 0) return false;
    return true;
  }

  bool contains(const Subspace& w) const {
    for (const auto& r : w.basis_)
      if (!contains(r)) return false;
    return true;
  }

  bool operator==(const Subspace& o) const {
    return ambient_ == o.ambient_ && p_ == o.p_ && basis_ == o.basis_;
  }

  // Total order: dimension first, then rows compared colexicographically,
  // matching the global line order on one-dimensional subspaces.
  bool operator<(const Subspace& o) const {
    if (dim() != o.dim()) return dim() < o.dim();
    return colex_rows_less(basis_, o.basis_);
  }

  std::string key() const {
    std::string k;
    k.reserve(basis_.size() * ambient_ + 1);
    k.push_back(static_cast<char>(dim()));
    for (const auto& r : basis_)
      for (auto x : r) k.push_back(static_cast<char>(x));
    return k;
  }

 private:
  Matrix basis_;
  uint32_t ambient_;
  uint32_t p_;
};

inline Subspace rref(const Matrix& rows, uint32_t ambient, const PrimeField& F) {
  return Subspace(rows, ambient, F);
}

inline bool membership(const FVector& v, const Subspace& w) { return w.contains(v); }

inline Subspace span_union(const Subspace& a, const Subspace& b, const PrimeField& F) {
  Matrix rows = a.basis();
  rows.insert(rows.end(), b.basis().begin(), b.basis().end());
  return Subspace(rows, a.ambient(), F);
}

// Right kernel {x : m x = 0} of a row-matrix, as a canonical subspace.
inline Subspace kernel(const Matrix& m, uint32_t cols, const PrimeField& F) {
  Matrix r = m;
  std::vector<int> pivots = rref_in_place(r, F);
  std::vector<char> is_pivot(cols, 0);
  for (int c : pivots) is_pivot[c] = 1;
  Matrix out;
  for (uint32_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    FVector v(cols, 0);
    v[free] = 1;
    for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = F.neg(r[i][free]);
    out.push_back(std::move(v));
  }
  return Subspace(out, cols, F);
}

// Canonical line representative: first nonzero coordinate scaled to 1.
inline FVector canonical_line_rep(const FVector& v, const PrimeField& F) {
  size_t i = 0;
  while (i < v.size() && v[i] == 0) ++i;
  if (i == v.size()) throw std::invalid_argument("zero vector has no line");
  FVector r = v;
  uint32_t c = F.inv(v[i]);
  for (auto& x : r) x = F.mul(x, c);
  return r;
}

struct Line {
  FVector rep;
  bool operator==(const Line& o) const { return rep == o.rep; }
  bool operator<(const Line& o) const { return colex_less(rep, o.rep); }
};

// All lines of F_p^dim ordered by canonical representative (colex). This is
// the global line order; every orientation sign derives from it.
class LineTable {
 public:
  LineTable(uint32_t dim, const PrimeField& F, uint64_t budget = 10000000)
      : dim_(dim), F_(F) {
    if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
    double total = 1;
    for (uint32_t i = 0; i < dim; ++i) total *= F.p();
    if (total > static_cast<double>(budget))
      throw budget_error("line enumeration budget exceeded: p^dim = " + std::to_string(total));
    // Canonical reps with pivot position i are (0,...,0,1,tail); lex order over
    // full coordinate vectors places later pivots first.
    for (int piv = static_cast<int>(dim) - 1; piv >= 0; --piv) {
      uint32_t tail = dim - piv - 1;
      uint64_t count = 1;
      for (uint32_t i = 0; i < tail; ++i) count *= F.p();
      for (uint64_t t = 0; t < count; ++t) {
        FVector v(dim, 0);
        v[piv] = 1;
        uint64_t x = t;
        for (int j = static_cast<int>(dim) - 1; j > piv; --j) {
          v[j] = static_cast<uint32_t>(x % F.p());
          x /= F.p();
        }
        reps_.push_back(std::move(v));
      }
    }
    std::sort(reps_.begin(), reps_.end(), colex_less);
    for (size_t i = 0; i < reps_.size(); ++i) index_[vec_key(reps_[i])] = static_cast<int32_t>(i);
  }

  uint32_t dim() const { return dim_; }
  const PrimeField& field() const { return F_; }
  size_t size() const { return reps_.size(); }
  const FVector& rep(int32_t i) const { return reps_[i]; }

  int32_t line_of(const FVector& v) const {
    auto it = index_.find(vec_key(canonical_line_rep(v, F_)));
    if (it == index_.end()) throw std::invalid_argument("vector outside the ambient space");
    return it->second;
  }

  std::vector<int32_t> lines_in(const Subspace& w) const {
    std::vector<int32_t> out;
    for (size_t i = 0; i < reps_.size(); ++i)
      if (w.contains(reps_[i])) out.push_back(static_cast<int32_t>(i));
    return out;
  }

 private:
  static std::string vec_key(const FVector& v) {
    std::string k;
    k.reserve(v.size());
    for (auto x : v) k.push_back(static_cast<char>(x));
    return k;
  }
  uint32_t dim_;
  PrimeField F_;
  std::vector<FVector> reps_;
  std::unordered_map<std::string, int32_t> index_;
};

inline std::vector<Line> enumerate_lines(uint32_t dim, const PrimeField& F,
                                         uint64_t budget = 10000000) {
  LineTable t(dim, F, budget);
  std::vector<Line> out;
  out.reserve(t.size());
  for (size_t i = 0; i < t.size(); ++i) out.push_back(Line{t.rep(static_cast<int32_t>(i))});
  return out;
}

// All k-dimensional subspaces of F_p^dim, sorted canonically.
inline std::vector<Subspace> enumerate_subspaces(uint32_t dim, uint32_t k, const PrimeField& F,
                                                 uint64_t budget = 10000000) {
  if (k > dim) return {};
  if (k == 0) return {Subspace::zero(dim, F)};
  std::vector<Subspace> out;
  uint64_t produced = 0;
  // Choose pivot columns, then fill free entries: each RREF pattern once.
  std::vector<int> comb(k);
  for (uint32_t i = 0; i < k; ++i) comb[i] = i;
  for (;;) {
    // free positions: (row, col) with col > comb[row], col not a pivot column
    std::vector<std::pair<int, int>> free_pos;
    std::vector<char> is_pivot(dim, 0);
    for (uint32_t i = 0; i < k; ++i) is_pivot[comb[i]] = 1;
    for (uint32_t i = 0; i < k; ++i)
      for (uint32_t j = comb[i] + 1; j < dim; ++j)
        if (!is_pivot[j]) free_pos.push_back({static_cast<int>(i), static_cast<int>(j)});
    uint64_t count = 1;
    for (size_t i = 0; i < free_pos.size(); ++i) {
      count *= F.p();
      if (count > budget) throw budget_error("subspace enumeration budget exceeded");
    }
    for (uint64_t t = 0; t < count; ++t) {
      Matrix m(k, FVector(dim, 0));
      for (uint32_t i = 0; i < k; ++i) m[i][comb[i]] = 1;
      uint64_t x = t;
      for (auto& [r, c] : free_pos) {
        m[r][c] = static_cast<uint32_t>(x % F.p());
        x /= F.p();
      }
      if (++produced > budget) throw budget_error("subspace enumeration budget exceeded");
      out.push_back(Subspace(std::move(m), dim, F));
    }
    // next pivot column combination
    int i = static_cast<int>(k) - 1;
    while (i >= 0 && comb[i] == static_cast<int>(dim - k + i)) --i;
    if (i < 0) break;
    ++comb[i];
    for (uint32_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace sharbly
