#pragma once

#include <cstdint>
#include <stdexcept>

namespace mqr {

/// Arithmetic context for the prime field GF(p), 2 <= p <= 2^16.
/// Residues are kept canonically in [0, p); there is no lazy reduction.
class Fp {
 public:
  explicit Fp(uint32_t p) : p_(p) {
    if (p < 2 || p > 65536 || !is_prime(p))
      throw std::invalid_argument("Fp: modulus must be a prime in [2, 2^16]");
  }

  uint32_t p() const { return p_; }

  uint32_t reduce(int64_t x) const {
    int64_t r = x % static_cast<int64_t>(p_);
    return static_cast<uint32_t>(r < 0 ? r + p_ : r);
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
    a %= p_;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  uint32_t inv(uint32_t a) const {
    if (a == 0) throw std::domain_error("Fp::inv(0)");
    return pow(a, p_ - 2);
  }
  uint32_t div(uint32_t a, uint32_t b) const { return mul(a, inv(b)); }

  bool operator==(const Fp& o) const { return p_ == o.p_; }
  bool operator!=(const Fp& o) const { return p_ != o.p_; }

  static bool is_prime(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

 private:
  uint32_t p_;
};

}  // namespace mqr
