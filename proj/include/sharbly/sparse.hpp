#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "sharbly/formal_sum.hpp"

namespace sharbly {

using Rat = mpq_class;

// Coordinate-list sparse matrix over Q. Entries sorted by (row, col), no
// stored zeros, no duplicates.
struct SparseMat {
  int64_t rows = 0;
  int64_t cols = 0;
  std::vector<std::tuple<int32_t, int32_t, Rat>> entries;

  static SparseMat zero(int64_t r, int64_t c) {
    SparseMat m;
    m.rows = r;
    m.cols = c;
    return m;
  }

  static SparseMat identity(int64_t n) {
    SparseMat m = zero(n, n);
    for (int64_t i = 0; i < n; ++i) m.entries.push_back({static_cast<int32_t>(i), static_cast<int32_t>(i), Rat(1)});
    return m;
  }

  template <class T>
  static SparseMat from_columns(const std::vector<FormalSum<T>>& columns, int64_t n_rows) {
    SparseMat m = zero(n_rows, static_cast<int64_t>(columns.size()));
    for (size_t c = 0; c < columns.size(); ++c)
      for (auto& [r, v] : columns[c].terms()) {
        Rat q;
        if constexpr (std::is_same_v<T, Rat>)
          q = v;
        else
          q = Rat(static_cast<long>(v));
        m.entries.push_back({r, static_cast<int32_t>(c), q});
      }
    m.sort_entries();
    return m;
  }

  void sort_entries() {
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
      if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
      return std::get<1>(a) < std::get<1>(b);
    });
  }

  void set(int32_t r, int32_t c, const Rat& v) {
    if (v == 0) return;
    entries.push_back({r, c, v});
  }

  int64_t nnz() const { return static_cast<int64_t>(entries.size()); }
  bool is_zero() const { return entries.empty(); }

  SparseMat transpose() const {
    SparseMat t = zero(cols, rows);
    for (auto& [r, c, v] : entries) t.entries.push_back({c, r, v});
    t.sort_entries();
    return t;
  }

  std::vector<FormalSum<Rat>> columns_as_sums() const {
    std::vector<FormalSum<Rat>> out(cols);
    for (auto& [r, c, v] : entries) out[c].add_term(r, v);
    return out;
  }

  // Exact product via a dense per-column accumulator over this->rows.
  SparseMat multiply(const SparseMat& o) const {
    if (cols != o.rows) throw std::invalid_argument("dimension mismatch in multiply");
    std::vector<std::vector<std::pair<int32_t, const Rat*>>> cols_of(cols);
    for (auto& [r, c, v] : entries) cols_of[c].push_back({r, &v});
    std::vector<std::vector<std::pair<int32_t, const Rat*>>> o_cols(o.cols);
    for (auto& [r, c, v] : o.entries) o_cols[c].push_back({r, &v});
    SparseMat out = zero(rows, o.cols);
    std::vector<Rat> acc(rows, Rat(0));
    std::vector<int32_t> touched;
    for (int64_t c = 0; c < o.cols; ++c) {
      for (auto& [k, bv] : o_cols[c])
        for (auto& [r, av] : cols_of[k]) {
          if (acc[r] == 0) touched.push_back(r);
          acc[r] += (*av) * (*bv);
        }
      std::sort(touched.begin(), touched.end());
      touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
      for (int32_t r : touched) {
        if (acc[r] != 0) out.entries.push_back({r, static_cast<int32_t>(c), acc[r]});
        acc[r] = 0;
      }
      touched.clear();
    }
    return out;
  }

  std::vector<Rat> apply(const std::vector<Rat>& x) const {
    std::vector<Rat> y(rows, Rat(0));
    for (auto& [r, c, v] : entries) y[r] += v * x[c];
    return y;
  }

  // Plain-text coordinate format: "rows cols nnz", then one "row col value"
  // triple per line, 0-indexed, values as integers or num/den.
  std::string to_coord_text() const {
    std::ostringstream os;
    os << rows << " " << cols << " " << nnz() << "\n";
    for (auto& [r, c, v] : entries) {
      os << r << " " << c << " " << v.get_num().get_str();
      if (v.get_den() != 1) os << "/" << v.get_den().get_str();
      os << "\n";
    }
    return os.str();
  }

  static SparseMat from_coord_text(std::istream& in) {
    SparseMat m;
    int64_t n;
    in >> m.rows >> m.cols >> n;
    for (int64_t i = 0; i < n; ++i) {
      int32_t r, c;
      std::string val;
      in >> r >> c >> val;
      Rat v(val);
      v.canonicalize();
      m.entries.push_back({r, c, v});
    }
    m.sort_entries();
    return m;
  }
};

inline void write_coord_file(const SparseMat& m, const std::string& path) {
  std::ofstream f(path);
  f << m.to_coord_text();
}

inline SparseMat read_coord_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open matrix file " + path);
  return SparseMat::from_coord_text(f);
}

}  // namespace sharbly
