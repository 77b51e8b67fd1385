#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace sharbly {

// Sparse coefficient vector over an indexed generator basis. Terms are kept
// sorted by index with no zero coefficients.
template <class T>
class FormalSum {
 public:
  FormalSum() = default;

  static FormalSum single(int32_t idx, T coeff) {
    FormalSum s;
    if (!(coeff == T(0))) s.terms_.push_back({idx, coeff});
    return s;
  }

  void add_term(int32_t idx, T coeff) {
    terms_.push_back({idx, coeff});
    dirty_ = true;
  }

  void normalize() {
    if (!dirty_) return;
    std::sort(terms_.begin(), terms_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<int32_t, T>> out;
    for (auto& [i, c] : terms_) {
      if (!out.empty() && out.back().first == i)
        out.back().second += c;
      else
        out.push_back({i, c});
      if (!out.empty() && out.back().second == T(0)) out.pop_back();
    }
    terms_ = std::move(out);
    dirty_ = false;
  }

  const std::vector<std::pair<int32_t, T>>& terms() const {
    const_cast<FormalSum*>(this)->normalize();
    return terms_;
  }

  bool is_zero() const { return terms().empty(); }
  size_t size() const { return terms().size(); }

  T coeff(int32_t idx) const {
    for (auto& [i, c] : terms())
      if (i == idx) return c;
    return T(0);
  }

  FormalSum& operator+=(const FormalSum& o) {
    for (auto& [i, c] : o.terms()) add_term(i, c);
    return *this;
  }
  FormalSum operator+(const FormalSum& o) const {
    FormalSum r = *this;
    r += o;
    return r;
  }
  FormalSum operator-() const {
    FormalSum r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }
  FormalSum operator-(const FormalSum& o) const { return *this + (-o); }
  FormalSum operator*(const T& s) const {
    FormalSum r;
    if (s == T(0)) return r;
    r.terms_ = terms();
    for (auto& t : r.terms_) t.second = t.second * s;
    return r;
  }
  bool operator==(const FormalSum& o) const { return terms() == o.terms(); }

 private:
  std::vector<std::pair<int32_t, T>> terms_;
  bool dirty_ = false;
};

using IntSum = FormalSum<int64_t>;

}  // namespace sharbly
