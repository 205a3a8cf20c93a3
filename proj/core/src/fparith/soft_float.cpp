#include "specbisect/fparith/soft_float.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <limits>
#include <string>

#include "specbisect/errors.hpp"

namespace specbisect::fp {

PrecisionConfig::PrecisionConfig(int mantissa_bits, int exponent_bits)
    : t_(mantissa_bits), exponent_bits_(exponent_bits) {
  if (mantissa_bits < kMinMantissa || mantissa_bits > kMaxMantissa)
    throw DomainError("mantissa_bits must lie in [8, 128], got " + std::to_string(mantissa_bits));
  if (exponent_bits < 4 || exponent_bits > 30)
    throw DomainError("exponent_bits must lie in [4, 30], got " + std::to_string(exponent_bits));
  emax_ = (std::int64_t{1} << (exponent_bits - 1)) - 1;
}

namespace {

void check_range(const SoftFloat& r, const PrecisionConfig& cfg) {
  if (r.is_zero()) return;
  if (r.exp > cfg.emax())
    throw RangeError("overflow: exponent " + std::to_string(r.exp) + " exceeds emax " +
                     std::to_string(cfg.emax()) + " (exponent_bits too small)");
  if (r.exp < cfg.emin())
    throw RangeError("underflow: exponent " + std::to_string(r.exp) + " below emin " +
                     std::to_string(cfg.emin()) + " (exponent_bits too small)");
}

// Rounds v * 2^(e_top - (64W - 1)) to t bits, ties to even. `sticky` marks nonzero
// bits below v's least significant bit.
template <int W>
SoftFloat round_wide(bool neg, WideUint<W> v, std::int64_t e_top, bool sticky, int t) {
  constexpr int kBits = 64 * W;
  static_assert(kBits > 128, "rounding needs guard bits below a 128-bit significand");
  if (v.is_zero()) return SoftFloat{};  // sticky-only inputs never reach here
  int lz = v.countl_zero();
  v.shl(lz);
  e_top -= lz;
  const int cut = kBits - t;  // bits [cut, kBits) are kept
  u128 kept = v.extract(cut, t);
  bool half = v.bit(cut - 1);
  bool rest = sticky || v.any_below(cut - 1);
  if (half && (rest || (kept & 1))) {
    ++kept;
    if (t < 128 ? kept == (static_cast<u128>(1) << t) : kept == 0) {
      kept = static_cast<u128>(1) << (t - 1);
      ++e_top;
    }
  }
  SoftFloat r;
  r.neg = neg;
  r.exp = e_top;
  r.mant = t == 128 ? kept : kept << (128 - t);
  return r;
}

template <int W>
SoftFloat round_checked(bool neg, const WideUint<W>& v, std::int64_t e_top, bool sticky,
                        const PrecisionConfig& cfg) {
  SoftFloat r = round_wide<W>(neg, v, e_top, sticky, cfg.mantissa_bits());
  check_range(r, cfg);
  return r;
}

int compare_magnitude(const SoftFloat& a, const SoftFloat& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() ? (b.is_zero() ? 0 : -1) : 1;
  if (a.exp != b.exp) return a.exp < b.exp ? -1 : 1;
  if (a.mant != b.mant) return a.mant < b.mant ? -1 : 1;
  return 0;
}

SoftFloat add_signed(const SoftFloat& x, bool x_neg, const SoftFloat& y, bool y_neg,
                     const PrecisionConfig& cfg) {
  if (x.is_zero() && y.is_zero()) return SoftFloat{};
  if (y.is_zero()) {
    SoftFloat r = x;
    r.neg = x_neg;
    return fl(r, cfg);
  }
  if (x.is_zero()) {
    SoftFloat r = y;
    r.neg = y_neg;
    return fl(r, cfg);
  }
  const SoftFloat* big = &x;
  const SoftFloat* small = &y;
  bool big_neg = x_neg, small_neg = y_neg;
  if (compare_magnitude(x, y) < 0) {
    std::swap(big, small);
    std::swap(big_neg, small_neg);
  }
  WideUint<4> a = WideUint<4>::from_u128_top(big->mant);
  WideUint<4> b = WideUint<4>::from_u128_top(small->mant);
  std::int64_t d = big->exp - small->exp;
  bool lost = b.shr(d > 256 ? 256 : static_cast<int>(d));
  if (lost) b.set_bit(0);  // jam the sticky bit; there are >= 126 guard bits above it
  std::int64_t e_top = big->exp;
  if (big_neg == small_neg) {
    bool carry = a.add(b);
    bool sticky = false;
    if (carry) {
      sticky = a.shr(1);
      a.set_bit(255);
      ++e_top;
    }
    return round_checked<4>(big_neg, a, e_top, sticky, cfg);
  }
  a.sub(b);
  if (a.is_zero()) return SoftFloat{};
  return round_checked<4>(big_neg, a, e_top, false, cfg);
}

// Long division: returns floor(num / den) with `rem_nonzero` set when inexact.
template <int W>
WideUint<W> divide(WideUint<W> num, const WideUint<W>& den, bool& rem_nonzero) {
  WideUint<W> q;
  WideUint<W> rem;
  int nb = num.bit_length();
  for (int i = nb - 1; i >= 0; --i) {
    rem.shl(1);
    if (num.bit(i)) rem.set_bit(0);
    if (compare(rem, den) >= 0) {
      rem.sub(den);
      q.set_bit(i);
    }
  }
  rem_nonzero = !rem.is_zero();
  return q;
}

// fl((num / den) * 2^pow2) for nonzero integers.
template <int W>
SoftFloat round_quotient(bool neg, WideUint<W> num, const WideUint<W>& den, std::int64_t pow2,
                         const PrecisionConfig& cfg) {
  const int t = cfg.mantissa_bits();
  // Scale the numerator so that the quotient carries at least t + 2 bits.
  int shift = den.bit_length() + t + 2 - num.bit_length();
  if (shift < 0) shift = 0;
  num.shl(shift);
  pow2 -= shift;
  bool inexact = false;
  WideUint<W> q = divide(num, den, inexact);
  // q's bit (64W-1) has weight 2^(pow2 + 64W - 1).
  return round_checked<W>(neg, q, pow2 + 64 * W - 1, inexact, cfg);
}

}  // namespace

SoftFloat exact_from_double(double x) {
  if (!std::isfinite(x)) throw RangeError("non-finite double has no floating-point image");
  SoftFloat r;
  if (x == 0.0) return r;
  r.neg = std::signbit(x);
  int e = 0;
  double m = std::frexp(std::fabs(x), &e);  // m in [0.5, 1)
  auto bits = static_cast<std::uint64_t>(std::ldexp(m, 64));  // exact: 53 bits
  int lz = std::countl_zero(bits);
  bits <<= lz;
  r.mant = static_cast<u128>(bits) << 64;
  r.exp = static_cast<std::int64_t>(e) - 1 - lz;
  return r;
}

SoftFloat exact_from_int(std::int64_t v) {
  SoftFloat r;
  if (v == 0) return r;
  r.neg = v < 0;
  std::uint64_t m = v < 0 ? static_cast<std::uint64_t>(-(v + 1)) + 1 : static_cast<std::uint64_t>(v);
  int lz = std::countl_zero(m);
  r.mant = static_cast<u128>(m << lz) << 64;
  r.exp = 63 - lz;
  return r;
}

double to_double(const SoftFloat& x) {
  if (x.is_zero()) return 0.0;
  SoftFloat r = round_wide<3>(x.neg, WideUint<3>::from_u128_top(x.mant), x.exp, false, 53);
  if (r.exp > 1023) return x.neg ? -std::numeric_limits<double>::infinity()
                                 : std::numeric_limits<double>::infinity();
  if (r.exp < -1074) return x.neg ? -0.0 : 0.0;
  auto top = static_cast<std::uint64_t>(r.mant >> 75);  // 53 bits
  double v = std::ldexp(static_cast<double>(top), static_cast<int>(r.exp) - 52);
  return x.neg ? -v : v;
}

SoftFloat fl(const SoftFloat& exact, const PrecisionConfig& cfg) {
  if (exact.is_zero()) return SoftFloat{};
  return round_checked<3>(exact.neg, WideUint<3>::from_u128_top(exact.mant), exact.exp, false,
                          cfg);
}

SoftFloat fl(double exact, const PrecisionConfig& cfg) { return fl(exact_from_double(exact), cfg); }

SoftFloat fl_ratio(std::int64_t num, std::int64_t den, const PrecisionConfig& cfg) {
  if (den == 0) throw DomainError("fl_ratio: zero denominator");
  return fp_div(exact_from_int(num), exact_from_int(den), cfg);
}

SoftFloat fp_add(const SoftFloat& x, const SoftFloat& y, const PrecisionConfig& cfg) {
  return add_signed(x, x.neg, y, y.neg, cfg);
}

SoftFloat fp_sub(const SoftFloat& x, const SoftFloat& y, const PrecisionConfig& cfg) {
  return add_signed(x, x.neg, y, !y.neg, cfg);
}

SoftFloat fp_mul(const SoftFloat& x, const SoftFloat& y, const PrecisionConfig& cfg) {
  if (x.is_zero() || y.is_zero()) return SoftFloat{};
  WideUint<4> p = mul_u128(x.mant, y.mant);
  return round_checked<4>(x.neg != y.neg, p, x.exp + y.exp + 1, false, cfg);
}

SoftFloat fp_div(const SoftFloat& x, const SoftFloat& y, const PrecisionConfig& cfg) {
  if (y.is_zero()) throw DomainError("division by zero");
  if (x.is_zero()) return SoftFloat{};
  auto num = WideUint<6>::from_u128(x.mant);
  auto den = WideUint<6>::from_u128(y.mant);
  return round_quotient<6>(x.neg != y.neg, num, den, x.exp - y.exp, cfg);
}

SoftFloat fp_mul_ratio(const SoftFloat& x, std::int64_t num, std::int64_t den,
                       const PrecisionConfig& cfg) {
  if (den == 0) throw DomainError("fp_mul_ratio: zero denominator");
  if (x.is_zero() || num == 0) return SoftFloat{};
  bool neg = (x.neg != (num < 0)) != (den < 0);
  auto an = static_cast<std::uint64_t>(num < 0 ? -(num + 1) + std::uint64_t{1} : num);
  auto ad = static_cast<std::uint64_t>(den < 0 ? -(den + 1) + std::uint64_t{1} : den);
  WideUint<6> n = mul_u128(x.mant, an).resize<6>();
  auto d = WideUint<6>::from_u128(ad);
  return round_quotient<6>(neg, n, d, x.exp - 127, cfg);
}

SoftFloat fp_sqrt(const SoftFloat& x, const PrecisionConfig& cfg) {
  if (x.is_zero()) return SoftFloat{};
  if (x.neg) throw DomainError("square root of a negative value");
  const int t = cfg.mantissa_bits();
  // x = mant * 2^(exp - 127). Scale mant by 2^s, s even-adjusted, so the integer root
  // has at least t + 2 bits: mant * 2^s >= 2^(2t + 4).
  std::int64_t e = x.exp - 127;
  int s = 2 * t + 4 - 127;
  if (s < 0) s = 0;
  if (((e - s) & 1) != 0) ++s;
  WideUint<6> n = WideUint<6>::from_u128(x.mant);
  n.shl(s);
  // Digit-by-digit integer square root.
  WideUint<6> root, rem;
  int nb = n.bit_length();
  if (nb & 1) ++nb;
  for (int i = nb - 2; i >= 0; i -= 2) {
    rem.shl(2);
    if (n.bit(i + 1)) rem.set_bit(1);
    if (n.bit(i)) rem.set_bit(0);
    WideUint<6> trial = root;
    trial.shl(2);
    trial.set_bit(0);
    root.shl(1);
    if (compare(rem, trial) >= 0) {
      rem.sub(trial);
      root.set_bit(0);
    }
  }
  std::int64_t pow2 = (e - s) / 2;
  return round_checked<6>(false, root, pow2 + 64 * 6 - 1, !rem.is_zero(), cfg);
}

SoftFloat fp_half(const SoftFloat& x, const PrecisionConfig& cfg) {
  if (x.is_zero()) return x;
  SoftFloat r = x;
  --r.exp;
  if (r.exp < cfg.emin()) throw RangeError("underflow in exact halving");
  return r;
}

int compare(const SoftFloat& a, const SoftFloat& b) {
  bool an = a.neg && !a.is_zero(), bn = b.neg && !b.is_zero();
  if (an != bn) return an ? -1 : 1;
  int m = compare_magnitude(a, b);
  return an ? -m : m;
}

std::int64_t round_half_away(const SoftFloat& x) {
  if (x.is_zero()) return 0;
  if (x.exp >= 62) throw RangeError("round_half_away: value does not fit an int64");
  if (x.exp < -1) return 0;  // |x| < 1/2
  // |x| * 2 as a 128-bit fixed-point number with the binary point after bit 127 - (exp + 1).
  int frac_bits = 127 - static_cast<int>(x.exp);  // bits below the unit position
  u128 integer = frac_bits >= 128 ? 0 : x.mant >> frac_bits;
  bool half = frac_bits >= 1 && ((x.mant >> (frac_bits - 1)) & 1);
  std::int64_t v = static_cast<std::int64_t>(integer) + (half ? 1 : 0);
  return x.neg ? -v : v;
}

SoftFloat fl_scaled(bool neg, u128 integer, std::int64_t pow2, const PrecisionConfig& cfg) {
  if (integer == 0) return SoftFloat{};
  return round_checked<3>(neg, WideUint<3>::from_u128(integer), pow2 + 191, false, cfg);
}

std::string to_hex(const SoftFloat& x) {
  if (x.is_zero()) return "0x0p+0";
  std::string s = x.neg ? "-0x1" : "0x1";
  u128 frac = x.mant << 1;  // drop the leading bit
  if (frac != 0) {
    s += '.';
    static const char* digits = "0123456789abcdef";
    while (frac != 0) {
      s += digits[static_cast<int>(frac >> 124)];
      frac <<= 4;
    }
  }
  s += 'p';
  s += x.exp >= 0 ? "+" : "-";
  s += std::to_string(x.exp >= 0 ? x.exp : -x.exp);
  return s;
}

SoftFloat parse_hex(std::string_view text) {
  auto fail = [&]() -> SoftFloat {
    throw DomainError("malformed hexadecimal float literal: '" + std::string(text) + "'");
  };
  std::size_t i = 0;
  bool neg = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) neg = text[i++] == '-';
  if (text.substr(i, 2) != "0x" && text.substr(i, 2) != "0X") return fail();
  i += 2;
  auto hexval = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  // Accumulate significant hex digits into a 256-bit integer.
  WideUint<4> acc;
  std::int64_t scale = 0;  // value = acc * 2^scale
  bool seen_digit = false, seen_point = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c == '.') {
      if (seen_point) return fail();
      seen_point = true;
      continue;
    }
    int h = hexval(c);
    if (h < 0) break;
    seen_digit = true;
    if (acc.bit_length() > 250) return fail();
    acc.shl(4);
    acc.limb[0] |= static_cast<std::uint64_t>(h);
    if (seen_point) scale -= 4;
  }
  if (!seen_digit || i >= text.size() || (text[i] != 'p' && text[i] != 'P')) return fail();
  ++i;
  bool eneg = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) eneg = text[i++] == '-';
  if (i >= text.size()) return fail();
  std::int64_t e = 0;
  for (; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') return fail();
    e = e * 10 + (text[i] - '0');
    if (e > (std::int64_t{1} << 40)) return fail();
  }
  if (acc.is_zero()) return SoftFloat{};
  scale += eneg ? -e : e;
  int bl = acc.bit_length();
  // Strip trailing zero bits so that the significand fits in 128 bits if possible.
  int tz = 0;
  while (!acc.bit(tz)) ++tz;
  if (bl - tz > 128) throw DomainError("hexadecimal literal has more than 128 significant bits");
  SoftFloat r;
  r.neg = neg;
  r.mant = acc.extract(bl - 128 > 0 ? bl - 128 : 0, 128);
  if (bl < 128) r.mant <<= (128 - bl);
  r.exp = scale + bl - 1;
  return r;
}

}  // namespace specbisect::fp
