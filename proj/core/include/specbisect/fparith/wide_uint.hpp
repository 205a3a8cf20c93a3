#pragma once

#include <array>
#include <bit>
#include <cstdint>

namespace specbisect::fp {

using u128 = unsigned __int128;

// Fixed-width unsigned integer with W little-endian 64-bit limbs.
// Only the handful of operations the rounding kernels need.
template <int W>
struct WideUint {
  static constexpr int kBits = 64 * W;
  std::array<std::uint64_t, W> limb{};

  static WideUint from_u128(u128 v) {
    WideUint r;
    r.limb[0] = static_cast<std::uint64_t>(v);
    if constexpr (W > 1) r.limb[1] = static_cast<std::uint64_t>(v >> 64);
    return r;
  }

  // v placed so that its bit 127 lands on bit kBits-1.
  static WideUint from_u128_top(u128 v) {
    WideUint r;
    r.limb[W - 1] = static_cast<std::uint64_t>(v >> 64);
    r.limb[W - 2] = static_cast<std::uint64_t>(v);
    return r;
  }

  bool is_zero() const {
    for (auto l : limb)
      if (l) return false;
    return true;
  }

  bool bit(int i) const { return (limb[i / 64] >> (i % 64)) & 1u; }
  void set_bit(int i) { limb[i / 64] |= std::uint64_t{1} << (i % 64); }

  int countl_zero() const {
    for (int i = W - 1; i >= 0; --i)
      if (limb[i]) return (W - 1 - i) * 64 + std::countl_zero(limb[i]);
    return kBits;
  }

  int bit_length() const { return kBits - countl_zero(); }

  // True if any bit strictly below position i is set.
  bool any_below(int i) const {
    int full = i / 64;
    for (int k = 0; k < full && k < W; ++k)
      if (limb[k]) return true;
    int rem = i % 64;
    if (rem && full < W) return (limb[full] & ((std::uint64_t{1} << rem) - 1)) != 0;
    return false;
  }

  void shl(int s) {
    if (s <= 0) return;
    if (s >= kBits) {
      limb.fill(0);
      return;
    }
    int ls = s / 64, bs = s % 64;
    for (int i = W - 1; i >= 0; --i) {
      std::uint64_t v = 0;
      int src = i - ls;
      if (src >= 0) {
        v = limb[src] << bs;
        if (bs && src - 1 >= 0) v |= limb[src - 1] >> (64 - bs);
      }
      limb[i] = v;
    }
  }

  // Shift right; returns true if any nonzero bit was shifted out.
  bool shr(int s) {
    if (s <= 0) return false;
    if (s >= kBits) {
      bool lost = !is_zero();
      limb.fill(0);
      return lost;
    }
    bool lost = any_below(s);
    int ls = s / 64, bs = s % 64;
    for (int i = 0; i < W; ++i) {
      std::uint64_t v = 0;
      int src = i + ls;
      if (src < W) {
        v = limb[src] >> bs;
        if (bs && src + 1 < W) v |= limb[src + 1] << (64 - bs);
      }
      limb[i] = v;
    }
    return lost;
  }

  // this += o, returns carry out.
  bool add(const WideUint& o) {
    std::uint64_t carry = 0;
    for (int i = 0; i < W; ++i) {
      u128 s = static_cast<u128>(limb[i]) + o.limb[i] + carry;
      limb[i] = static_cast<std::uint64_t>(s);
      carry = static_cast<std::uint64_t>(s >> 64);
    }
    return carry != 0;
  }

  // this -= o; requires this >= o.
  void sub(const WideUint& o) {
    std::uint64_t borrow = 0;
    for (int i = 0; i < W; ++i) {
      std::uint64_t a = limb[i], b = o.limb[i];
      std::uint64_t d = a - b - borrow;
      borrow = (a < b) || (a - b < borrow) ? 1 : 0;
      limb[i] = d;
    }
  }

  friend int compare(const WideUint& a, const WideUint& b) {
    for (int i = W - 1; i >= 0; --i) {
      if (a.limb[i] != b.limb[i]) return a.limb[i] < b.limb[i] ? -1 : 1;
    }
    return 0;
  }

  // Bits [pos, pos+count) as an integer; count <= 128.
  u128 extract(int pos, int count) const {
    WideUint c = *this;
    c.shr(pos);
    u128 v = (static_cast<u128>(c.limb[W > 1 ? 1 : 0]) << 64) | c.limb[0];
    if constexpr (W == 1) v = c.limb[0];
    if (count < 128) v &= (static_cast<u128>(1) << count) - 1;
    return v;
  }

  template <int V>
  WideUint<V> resize() const {
    WideUint<V> r;
    for (int i = 0; i < W && i < V; ++i) r.limb[i] = limb[i];
    return r;
  }
};

inline WideUint<4> mul_u128(u128 a, u128 b) {
  std::uint64_t a0 = static_cast<std::uint64_t>(a), a1 = static_cast<std::uint64_t>(a >> 64);
  std::uint64_t b0 = static_cast<std::uint64_t>(b), b1 = static_cast<std::uint64_t>(b >> 64);
  u128 p00 = static_cast<u128>(a0) * b0;
  u128 p01 = static_cast<u128>(a0) * b1;
  u128 p10 = static_cast<u128>(a1) * b0;
  u128 p11 = static_cast<u128>(a1) * b1;
  WideUint<4> r;
  r.limb[0] = static_cast<std::uint64_t>(p00);
  u128 mid = (p00 >> 64) + static_cast<std::uint64_t>(p01) + static_cast<std::uint64_t>(p10);
  r.limb[1] = static_cast<std::uint64_t>(mid);
  u128 hi = (mid >> 64) + (p01 >> 64) + (p10 >> 64) + static_cast<std::uint64_t>(p11);
  r.limb[2] = static_cast<std::uint64_t>(hi);
  r.limb[3] = static_cast<std::uint64_t>((hi >> 64) + (p11 >> 64));
  return r;
}

}  // namespace specbisect::fp
