#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "specbisect/fparith/precision.hpp"
#include "specbisect/fparith/wide_uint.hpp"

namespace specbisect::fp {

// Binary floating-point value with up to 128 significant bits.
//
// value = (-1)^neg * mant * 2^(exp - 127), with mant normalized so that bit 127 is
// set (mant in [2^127, 2^128)) unless the value is zero. `exp` is therefore the
// exponent of the leading bit. A value produced under a PrecisionConfig with
// mantissa width t has its low 128 - t mantissa bits clear.
struct SoftFloat {
  u128 mant = 0;
  std::int64_t exp = 0;
  bool neg = false;

  bool is_zero() const { return mant == 0; }

  friend bool operator==(const SoftFloat& a, const SoftFloat& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.mant == b.mant && a.exp == b.exp && a.neg == b.neg;
  }
};

// Exact conversions (no rounding): every finite double and every int64 fits in 128 bits.
SoftFloat exact_from_double(double x);
SoftFloat exact_from_int(std::int64_t v);

// Correct rounding to the nearest double (ties to even). Out-of-range values saturate
// to +-inf or flush to zero; use only for reporting.
double to_double(const SoftFloat& x);

// Round-to-nearest-even of an exact value to the configured width. Throws RangeError
// when the rounded result leaves [2^emin, max] in magnitude.
SoftFloat fl(const SoftFloat& exact, const PrecisionConfig& cfg);
SoftFloat fl(double exact, const PrecisionConfig& cfg);
// fl(num / den) for integers, den != 0.
SoftFloat fl_ratio(std::int64_t num, std::int64_t den, const PrecisionConfig& cfg);

// Correctly rounded arithmetic. Operands are taken as exact values.
SoftFloat fp_add(const SoftFloat& x, const SoftFloat& y, const PrecisionConfig& cfg);
SoftFloat fp_sub(const SoftFloat& x, const SoftFloat& y, const PrecisionConfig& cfg);
SoftFloat fp_mul(const SoftFloat& x, const SoftFloat& y, const PrecisionConfig& cfg);
SoftFloat fp_div(const SoftFloat& x, const SoftFloat& y, const PrecisionConfig& cfg);
SoftFloat fp_sqrt(const SoftFloat& x, const PrecisionConfig& cfg);
// fl(x * num / den) with a single rounding.
SoftFloat fp_mul_ratio(const SoftFloat& x, std::int64_t num, std::int64_t den,
                       const PrecisionConfig& cfg);

// Exact halving: exponent decrement. Throws RangeError on underflow.
SoftFloat fp_half(const SoftFloat& x, const PrecisionConfig& cfg);

inline SoftFloat negate(SoftFloat x) {
  if (!x.is_zero()) x.neg = !x.neg;
  return x;
}
inline SoftFloat operator-(const SoftFloat& x) { return negate(x); }
inline SoftFloat abs(SoftFloat x) {
  x.neg = false;
  return x;
}

// -1, 0, 1 ordering of the exact values.
int compare(const SoftFloat& a, const SoftFloat& b);

// Nearest integer with halves rounded away from zero. The value must fit in int64.
std::int64_t round_half_away(const SoftFloat& x);

// Exact product scaled by a power of two, rounded once: fl(x * 2^k). Used by samplers.
SoftFloat fl_scaled(bool neg, u128 integer, std::int64_t pow2, const PrecisionConfig& cfg);

// Lowercase hexadecimal floating-point literal, printf("%a") style for values that
// fit a double ("0x1.8p+1", "-0x1p-3", "0x0p+0"). Round-trips every SoftFloat exactly.
std::string to_hex(const SoftFloat& x);
// Parses the format above (optionally with leading "+"). The parsed value is exact;
// throws DomainError on malformed input or more than 128 significant bits.
SoftFloat parse_hex(std::string_view text);

}  // namespace specbisect::fp
