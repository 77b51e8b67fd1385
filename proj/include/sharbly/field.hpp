#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sharbly {

// Arithmetic in F_p for a machine-word prime modulus.
class PrimeField {
 public:
  explicit PrimeField(uint32_t p) : p_(p) {
    if (p < 2) throw std::invalid_argument("modulus must be >= 2");
    for (uint64_t d = 2; d * d <= p; ++d)
      if (p % d == 0) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
  }

  uint32_t p() const { return p_; }

  uint32_t reduce(int64_t x) const {
    int64_t r = x % static_cast<int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<uint32_t>(r);
  }
  uint32_t add(uint32_t a, uint32_t b) const {
    uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  uint32_t sub(uint32_t a, uint32_t b) const { return a >= b ? a - b : a + p_ - b; }
  uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  uint32_t mul(uint32_t a, uint32_t b) const {
    return static_cast<uint32_t>((static_cast<uint64_t>(a) * b) % p_);
  }
  uint32_t pow(uint32_t a, uint64_t e) const {
    uint32_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  uint32_t inv(uint32_t a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    return pow(a, p_ - 2);
  }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  uint32_t p_;
};

// Vector over F_p, coordinates reduced to [0, p).
using FVector = std::vector<uint32_t>;

// Deterministic 64-bit generator (splitmix64).
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}
  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // Uniform in [0, n).
  uint64_t below(uint64_t n) { return next() % n; }

 private:
  uint64_t state_;
};

// Deterministic Miller-Rabin, valid for all n < 3.3e24 with this base set.
inline bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  auto mulmod = [&](uint64_t a, uint64_t b) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % n);
  };
  auto powmod = [&](uint64_t a, uint64_t e) {
    uint64_t r = 1;
    while (e) {
      if (e & 1) r = mulmod(r, a);
      a = mulmod(a, a);
      e >>= 1;
    }
    return r;
  };
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = powmod(a, d);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

// Random prime in (2^20, 2^30), for modular rank checks.
inline uint64_t random_large_prime(SplitMix64& rng) {
  for (;;) {
    uint64_t c = (rng.next() % ((1ull << 30) - (1ull << 20))) + (1ull << 20) + 1;
    c |= 1;
    if (is_prime_u64(c)) return c;
  }
}

// Raised when an enumeration or matrix exceeds its configured budget.
class budget_error : public std::runtime_error {
 public:
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sharbly
