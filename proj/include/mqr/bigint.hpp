#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mqr {

/// Unsigned big integer, base 2^64 limbs, little-endian. Just enough
/// arithmetic for exact orbit counting.
class BigUint {
 public:
  BigUint() = default;
  BigUint(uint64_t v) {  // NOLINT: implicit by design
    if (v) limbs_.push_back(v);
  }
  static BigUint from_u128(unsigned __int128 v) {
    BigUint b;
    uint64_t lo = static_cast<uint64_t>(v);
    uint64_t hi = static_cast<uint64_t>(v >> 64);
    if (lo || hi) b.limbs_.push_back(lo);
    if (hi) b.limbs_.push_back(hi);
    return b;
  }

  bool is_zero() const { return limbs_.empty(); }

  BigUint& operator+=(const BigUint& o) {
    if (limbs_.size() < o.limbs_.size()) limbs_.resize(o.limbs_.size(), 0);
    unsigned __int128 carry = 0;
    for (size_t i = 0; i < limbs_.size(); ++i) {
      unsigned __int128 s = carry + limbs_[i] + (i < o.limbs_.size() ? o.limbs_[i] : 0);
      limbs_[i] = static_cast<uint64_t>(s);
      carry = s >> 64;
    }
    if (carry) limbs_.push_back(static_cast<uint64_t>(carry));
    return *this;
  }

  BigUint& operator-=(const BigUint& o) {
    if (*this < o) throw std::underflow_error("BigUint: negative result");
    unsigned __int128 borrow = 0;
    for (size_t i = 0; i < limbs_.size(); ++i) {
      unsigned __int128 sub = borrow + (i < o.limbs_.size() ? o.limbs_[i] : 0);
      if (limbs_[i] >= sub) {
        limbs_[i] -= static_cast<uint64_t>(sub);
        borrow = 0;
      } else {
        limbs_[i] = static_cast<uint64_t>((((unsigned __int128)1 << 64) + limbs_[i]) - sub);
        borrow = 1;
      }
    }
    trim();
    return *this;
  }

  BigUint& mul_small(uint64_t m) {
    if (m == 0 || is_zero()) {
      limbs_.clear();
      return *this;
    }
    unsigned __int128 carry = 0;
    for (auto& l : limbs_) {
      unsigned __int128 pr = (unsigned __int128)l * m + carry;
      l = static_cast<uint64_t>(pr);
      carry = pr >> 64;
    }
    if (carry) limbs_.push_back(static_cast<uint64_t>(carry));
    return *this;
  }

  BigUint& operator*=(const BigUint& o) {
    if (is_zero() || o.is_zero()) {
      limbs_.clear();
      return *this;
    }
    std::vector<uint64_t> out(limbs_.size() + o.limbs_.size(), 0);
    for (size_t i = 0; i < limbs_.size(); ++i) {
      unsigned __int128 carry = 0;
      for (size_t j = 0; j < o.limbs_.size(); ++j) {
        unsigned __int128 cur =
            (unsigned __int128)limbs_[i] * o.limbs_[j] + out[i + j] + carry;
        out[i + j] = static_cast<uint64_t>(cur);
        carry = cur >> 64;
      }
      size_t k = i + o.limbs_.size();
      while (carry) {
        unsigned __int128 cur = (unsigned __int128)out[k] + carry;
        out[k] = static_cast<uint64_t>(cur);
        carry = cur >> 64;
        ++k;
      }
    }
    limbs_ = std::move(out);
    trim();
    return *this;
  }

  /// Divide in place, returning the remainder; divisor must be nonzero.
  uint64_t divmod_small(uint64_t d) {
    if (d == 0) throw std::domain_error("BigUint: division by zero");
    unsigned __int128 rem = 0;
    for (size_t i = limbs_.size(); i-- > 0;) {
      unsigned __int128 cur = (rem << 64) | limbs_[i];
      limbs_[i] = static_cast<uint64_t>(cur / d);
      rem = cur % d;
    }
    trim();
    return static_cast<uint64_t>(rem);
  }

  bool operator<(const BigUint& o) const {
    if (limbs_.size() != o.limbs_.size()) return limbs_.size() < o.limbs_.size();
    for (size_t i = limbs_.size(); i-- > 0;)
      if (limbs_[i] != o.limbs_[i]) return limbs_[i] < o.limbs_[i];
    return false;
  }
  bool operator==(const BigUint& o) const { return limbs_ == o.limbs_; }

  bool fits_u64() const { return limbs_.size() <= 1; }
  uint64_t to_u64() const {
    if (!fits_u64()) throw std::overflow_error("BigUint: does not fit in 64 bits");
    return limbs_.empty() ? 0 : limbs_[0];
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    BigUint t = *this;
    std::string s;
    while (!t.is_zero()) s.push_back(static_cast<char>('0' + t.divmod_small(10)));
    return std::string(s.rbegin(), s.rend());
  }

 private:
  void trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
  }
  std::vector<uint64_t> limbs_;
};

}  // namespace mqr
