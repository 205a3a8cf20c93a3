#pragma once

#include <cmath>
#include <cstdint>

namespace specbisect::fp {

// Mantissa width t (significant bits, leading bit included) and exponent width.
// Every rounded operation satisfies |fl(x op y) - x op y| <= u |x op y| with u = 2^-t.
class PrecisionConfig {
 public:
  static constexpr int kMinMantissa = 8;
  static constexpr int kMaxMantissa = 128;
  static constexpr int kDefaultExponentBits = 16;

  explicit PrecisionConfig(int mantissa_bits = 53, int exponent_bits = kDefaultExponentBits);

  int mantissa_bits() const { return t_; }
  int exponent_bits() const { return exponent_bits_; }

  // u = 2^-t as a double (exact: t <= 128 is well inside the double range).
  double unit_roundoff() const { return std::ldexp(1.0, -t_); }

  // Largest and smallest unbiased exponents of normal numbers, IEEE style:
  // emax = 2^(E-1) - 1, emin = 1 - emax. There are no subnormals.
  std::int64_t emax() const { return emax_; }
  std::int64_t emin() const { return 1 - emax_; }

  friend bool operator==(const PrecisionConfig&, const PrecisionConfig&) = default;

 private:
  int t_;
  int exponent_bits_;
  std::int64_t emax_;
};

}  // namespace specbisect::fp
