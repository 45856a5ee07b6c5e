#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace citemesh {

/// Unsigned arbitrary-precision integer. Traversal path counts grow
/// combinatorially with network depth, so they are kept exact throughout
/// instead of saturating or wrapping.
class BigUint {
 public:
  BigUint() = default;
  BigUint(std::uint64_t v) {  // NOLINT: implicit by design
    if (v != 0) {
      limbs_.push_back(static_cast<std::uint32_t>(v));
      if (v >> 32) limbs_.push_back(static_cast<std::uint32_t>(v >> 32));
    }
  }

  bool is_zero() const { return limbs_.empty(); }

  BigUint& operator+=(const BigUint& o) {
    const std::size_t n = std::max(limbs_.size(), o.limbs_.size());
    limbs_.resize(n, 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t s = carry + limbs_[i];
      if (i < o.limbs_.size()) s += o.limbs_[i];
      limbs_[i] = static_cast<std::uint32_t>(s);
      carry = s >> 32;
    }
    if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
    return *this;
  }

  friend BigUint operator+(BigUint a, const BigUint& b) {
    a += b;
    return a;
  }

  friend BigUint operator*(const BigUint& a, const BigUint& b) {
    BigUint out;
    if (a.is_zero() || b.is_zero()) return out;
    out.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
      std::uint64_t carry = 0;
      for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
        std::uint64_t cur = out.limbs_[i + j] + carry +
                            static_cast<std::uint64_t>(a.limbs_[i]) * b.limbs_[j];
        out.limbs_[i + j] = static_cast<std::uint32_t>(cur);
        carry = cur >> 32;
      }
      std::size_t k = i + b.limbs_.size();
      while (carry) {
        std::uint64_t cur = out.limbs_[k] + carry;
        out.limbs_[k] = static_cast<std::uint32_t>(cur);
        carry = cur >> 32;
        ++k;
      }
    }
    out.normalize();
    return out;
  }

  friend bool operator==(const BigUint& a, const BigUint& b) {
    return a.limbs_ == b.limbs_;
  }

  friend std::strong_ordering operator<=>(const BigUint& a, const BigUint& b) {
    if (a.limbs_.size() != b.limbs_.size())
      return a.limbs_.size() <=> b.limbs_.size();
    for (std::size_t i = a.limbs_.size(); i-- > 0;)
      if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] <=> b.limbs_[i];
    return std::strong_ordering::equal;
  }

  std::string to_string() const {
    if (limbs_.empty()) return "0";
    std::vector<std::uint32_t> work(limbs_.rbegin(), limbs_.rend());
    std::string out;
    while (!work.empty()) {
      // divide the big-endian limb sequence by 1e9, collect the remainder
      std::uint64_t rem = 0;
      std::vector<std::uint32_t> quot;
      quot.reserve(work.size());
      for (std::uint32_t limb : work) {
        std::uint64_t cur = (rem << 32) | limb;
        quot.push_back(static_cast<std::uint32_t>(cur / 1000000000ULL));
        rem = cur % 1000000000ULL;
      }
      while (!quot.empty() && quot.front() == 0) quot.erase(quot.begin());
      std::string group = std::to_string(rem);
      if (!quot.empty())
        group.insert(group.begin(), 9 - group.size(), '0');
      out.insert(0, group);
      work = std::move(quot);
    }
    return out;
  }

 private:
  void normalize() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
  }

  std::vector<std::uint32_t> limbs_;  // little-endian, no trailing zeros
};

}  // namespace citemesh
