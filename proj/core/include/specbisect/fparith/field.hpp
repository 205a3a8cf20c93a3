#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "specbisect/errors.hpp"
#include "specbisect/fparith/precision.hpp"
#include "specbisect/fparith/soft_float.hpp"

namespace specbisect::fp {

// Counts rounded operations. Real ops include the exact halvings (they are flops in the
// operation-count model); complex counters are maintained by the complex helpers.
struct FlopCounter {
  std::uint64_t real_ops = 0;
  std::uint64_t complex_mul = 0;
  std::uint64_t complex_add = 0;

  void reset() { *this = FlopCounter{}; }
};

// Arithmetic context for values stored as IEEE doubles, valid for t <= 53.
//
// Every t-bit number whose exponent lies in the double normal range is a double, so the
// storage is exact. Results are obtained from the hardware operation plus its exact error
// term (TwoSum / FMA residual) and re-rounded to t bits with ties-to-even, which gives the
// correctly rounded t-bit result. Ops whose error term could be inexact (tiny magnitudes)
// are delegated to the software path. Results outside the double normal range raise
// RangeError even if the configured exponent width would admit them.
class HwField {
 public:
  using real = double;
  static constexpr bool kHardware = true;

  explicit HwField(PrecisionConfig cfg, FlopCounter* counter = nullptr)
      : cfg_(cfg), counter_(counter), shift_(53 - cfg.mantissa_bits()) {
    if (cfg.mantissa_bits() > 53)
      throw DomainError("HwField requires mantissa_bits <= 53, got " +
                        std::to_string(cfg.mantissa_bits()));
    std::int64_t lo = cfg.emin() < -1022 ? -1022 : cfg.emin();
    std::int64_t hi = cfg.emax() > 1023 ? 1023 : cfg.emax();
    min_normal_ = std::ldexp(1.0, static_cast<int>(lo));
    // Values >= 2^(hi+1) overflow; 2^1024 is not a double, so compare against inf there.
    overflow_ = hi >= 1023 ? std::numeric_limits<double>::infinity()
                           : std::ldexp(1.0, static_cast<int>(hi + 1));
  }

  const PrecisionConfig& config() const { return cfg_; }
  FlopCounter* counter() const { return counter_; }
  double unit_roundoff() const { return cfg_.unit_roundoff(); }

  double add(double a, double b) const {
    count();
    double s = a + b;
    if (shift_ == 0) return check(s);
    double bb = s - a;
    double e = (a - (s - bb)) + (b - bb);
    return finish(s, e);
  }

  double sub(double a, double b) const { return add(a, -b); }

  double mul(double a, double b) const {
    count();
    double p = a * b;
    if (shift_ == 0) return check(p);
    if (p != 0.0 && std::fabs(p) < kTinyResidual) return soft_mul(a, b);
    return finish(p, std::fma(a, b, -p));
  }

  double div(double a, double b) const {
    count();
    if (b == 0.0) throw DomainError("division by zero");
    double q = a / b;
    if (shift_ == 0) return check(q);
    if (q != 0.0 && std::fabs(q) < kTinyResidual) return soft_div(a, b);
    double r = std::fma(-q, b, a);
    double dir = r == 0.0 ? 0.0 : ((r > 0) == (b > 0) ? 1.0 : -1.0);
    return finish(q, dir);
  }

  double sqrt(double a) const {
    count();
    if (a < 0) throw DomainError("square root of a negative value");
    double s = std::sqrt(a);
    if (shift_ == 0) return check(s);
    double r = std::fma(-s, s, a);
    return finish(s, r == 0.0 ? 0.0 : (r > 0 ? 1.0 : -1.0));
  }

  // Exact division by two.
  double half(double a) const {
    count();
    double h = a * 0.5;
    if (h != 0.0 && std::fabs(h) < min_normal_) throw RangeError("underflow in exact halving");
    return h;
  }

  static double neg(double a) { return -a; }
  static double abs(double a) { return std::fabs(a); }
  static bool less(double a, double b) { return a < b; }
  static bool is_zero(double a) { return a == 0.0; }
  static double zero() { return 0.0; }

  // fl(x) of an exact double.
  double from_double(double x) const {
    if (!std::isfinite(x)) throw RangeError("non-finite input");
    if (shift_ == 0) return check(x);
    if (x != 0.0 && std::fabs(x) < min_normal_) throw RangeError("underflow converting input");
    return finish(x, 0.0);
  }
  double from_int(std::int64_t v) const { return from_soft(exact_from_int(v)); }
  double from_soft(const SoftFloat& x) const {
    SoftFloat r = fl(x, cfg_);
    double d = fp::to_double(r);
    if (!std::isfinite(d) || (d != 0.0 && std::fabs(d) < min_normal_))
      throw RangeError("value outside the hardware-backed exponent range");
    return d;
  }
  SoftFloat to_soft(double x) const { return exact_from_double(x); }
  static double to_double(double x) { return x; }

  // fl(num / den), fl(x * num / den) with one rounding.
  double ratio(std::int64_t num, std::int64_t den) const {
    count();
    return from_soft(fl_ratio(num, den, cfg_));
  }
  double mul_ratio(double x, std::int64_t num, std::int64_t den) const {
    count();
    return from_soft(fp_mul_ratio(exact_from_double(x), num, den, cfg_));
  }

  static std::int64_t round_half_away(double x) { return static_cast<std::int64_t>(std::round(x)); }

 private:
  // Below this magnitude FMA residuals may lose bits to gradual underflow.
  static constexpr double kTinyResidual = 0x1p-900;

  void count() const {
    if (counter_) ++counter_->real_ops;
  }

  double check(double r) const {
    double m = std::fabs(r);
    if (!(m < overflow_)) throw RangeError("overflow: result exceeds the configured exponent range");
    if (r != 0.0 && m < min_normal_)
      throw RangeError("underflow: result below the configured exponent range");
    return r;
  }

  // Round s + e (exact, |e| <= ulp(s)/2; only the sign of e matters) to t bits.
  double finish(double s, double e) const {
    if (s == 0.0) return 0.0;
    if (std::fabs(s) < min_normal_ || !std::isfinite(s)) return check(s);
    auto bits = std::bit_cast<std::uint64_t>(s);
    std::uint64_t sign = bits & 0x8000000000000000ull;
    std::uint64_t mag = bits ^ sign;
    const std::uint64_t one = std::uint64_t{1} << shift_;
    const std::uint64_t half_ulp = one >> 1;
    std::uint64_t low = mag & (one - 1);
    mag -= low;
    bool up;
    if (low != half_ulp) {
      up = low > half_ulp;
    } else if (e == 0.0) {
      up = (mag >> shift_) & 1;
    } else {
      up = (e > 0) == (s > 0);
    }
    if (up) mag += one;
    return check(std::bit_cast<double>(sign | mag));
  }

  double soft_mul(double a, double b) const {
    return from_soft(fp_mul(exact_from_double(a), exact_from_double(b), cfg_));
  }
  double soft_div(double a, double b) const {
    return from_soft(fp_div(exact_from_double(a), exact_from_double(b), cfg_));
  }

  PrecisionConfig cfg_;
  FlopCounter* counter_;
  int shift_;
  double min_normal_;
  double overflow_;
};

// Arithmetic context backed by SoftFloat; valid for every t in [8, 128].
class SoftField {
 public:
  using real = SoftFloat;
  static constexpr bool kHardware = false;

  explicit SoftField(PrecisionConfig cfg, FlopCounter* counter = nullptr)
      : cfg_(cfg), counter_(counter) {}

  const PrecisionConfig& config() const { return cfg_; }
  FlopCounter* counter() const { return counter_; }
  double unit_roundoff() const { return cfg_.unit_roundoff(); }

  SoftFloat add(const SoftFloat& a, const SoftFloat& b) const {
    count();
    return fp_add(a, b, cfg_);
  }
  SoftFloat sub(const SoftFloat& a, const SoftFloat& b) const {
    count();
    return fp_sub(a, b, cfg_);
  }
  SoftFloat mul(const SoftFloat& a, const SoftFloat& b) const {
    count();
    return fp_mul(a, b, cfg_);
  }
  SoftFloat div(const SoftFloat& a, const SoftFloat& b) const {
    count();
    return fp_div(a, b, cfg_);
  }
  SoftFloat sqrt(const SoftFloat& a) const {
    count();
    return fp_sqrt(a, cfg_);
  }
  SoftFloat half(const SoftFloat& a) const {
    count();
    return fp_half(a, cfg_);
  }

  static SoftFloat neg(const SoftFloat& a) { return negate(a); }
  static SoftFloat abs(const SoftFloat& a) { return fp::abs(a); }
  static bool less(const SoftFloat& a, const SoftFloat& b) { return compare(a, b) < 0; }
  static bool is_zero(const SoftFloat& a) { return a.is_zero(); }
  static SoftFloat zero() { return SoftFloat{}; }

  SoftFloat from_double(double x) const { return fl(x, cfg_); }
  SoftFloat from_int(std::int64_t v) const { return fl(exact_from_int(v), cfg_); }
  SoftFloat from_soft(const SoftFloat& x) const { return fl(x, cfg_); }
  static SoftFloat to_soft(const SoftFloat& x) { return x; }
  static double to_double(const SoftFloat& x) { return fp::to_double(x); }

  SoftFloat ratio(std::int64_t num, std::int64_t den) const {
    count();
    return fl_ratio(num, den, cfg_);
  }
  SoftFloat mul_ratio(const SoftFloat& x, std::int64_t num, std::int64_t den) const {
    count();
    return fp_mul_ratio(x, num, den, cfg_);
  }

  static std::int64_t round_half_away(const SoftFloat& x) { return fp::round_half_away(x); }

 private:
  void count() const {
    if (counter_) ++counter_->real_ops;
  }

  PrecisionConfig cfg_;
  FlopCounter* counter_;
};

// Runs fn with the fastest exact arithmetic context for the configured width.
template <class Fn>
decltype(auto) with_field(const PrecisionConfig& cfg, FlopCounter* counter, Fn&& fn) {
  if (cfg.mantissa_bits() <= 53) return fn(HwField(cfg, counter));
  return fn(SoftField(cfg, counter));
}

}  // namespace specbisect::fp
