#pragma once

#include <mpfr.h>

#include <cstdint>
#include <random>

#include "specbisect/fparith/mpfr_bridge.hpp"
#include "specbisect/fparith/soft_float.hpp"

namespace testsupport {

namespace fp = specbisect::fp;

// RAII mpfr_t.
struct Mpfr {
  mpfr_t v;
  explicit Mpfr(mpfr_prec_t prec = 512) { mpfr_init2(v, prec); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  ~Mpfr() { mpfr_clear(v); }
  operator mpfr_ptr() { return v; }
  operator mpfr_srcptr() const { return v; }
};

// Correctly rounded result of `op` at width t, computed by MPFR.
enum class Op { add, sub, mul, div, sqrt };

inline fp::SoftFloat mpfr_reference(Op op, const fp::SoftFloat& x, const fp::SoftFloat& y,
                                    const fp::PrecisionConfig& cfg) {
  Mpfr a(128), b(128), r(cfg.mantissa_bits());
  fp::to_mpfr(a, x);
  fp::to_mpfr(b, y);
  switch (op) {
    case Op::add: mpfr_add(r, a, b, MPFR_RNDN); break;
    case Op::sub: mpfr_sub(r, a, b, MPFR_RNDN); break;
    case Op::mul: mpfr_mul(r, a, b, MPFR_RNDN); break;
    case Op::div: mpfr_div(r, a, b, MPFR_RNDN); break;
    case Op::sqrt: mpfr_sqrt(r, a, MPFR_RNDN); break;
  }
  return fp::from_mpfr(r, cfg);
}

// Checks |got - exact(x op y)| <= u |exact| with the exact value held at 1024 bits
// (exact for +, -, * of 128-bit operands whose exponents differ by less than ~800).
inline bool within_unit_roundoff(Op op, const fp::SoftFloat& x, const fp::SoftFloat& y,
                                 const fp::SoftFloat& got, const fp::PrecisionConfig& cfg) {
  Mpfr a(128), b(128), exact(1024), g(128), err(1024), bound(1024);
  fp::to_mpfr(a, x);
  fp::to_mpfr(b, y);
  fp::to_mpfr(g, got);
  switch (op) {
    case Op::add: mpfr_add(exact, a, b, MPFR_RNDN); break;
    case Op::sub: mpfr_sub(exact, a, b, MPFR_RNDN); break;
    case Op::mul: mpfr_mul(exact, a, b, MPFR_RNDN); break;
    case Op::div: mpfr_div(exact, a, b, MPFR_RNDN); break;
    case Op::sqrt: mpfr_sqrt(exact, a, MPFR_RNDN); break;
  }
  mpfr_sub(err, g, exact, MPFR_RNDN);
  mpfr_abs(err, err, MPFR_RNDN);
  mpfr_abs(bound, exact, MPFR_RNDN);
  mpfr_mul_2si(bound, bound, -cfg.mantissa_bits(), MPFR_RNDN);
  return mpfr_lessequal_p(err, bound) != 0;
}

// Random t-bit value with exponent in [-span, span].
inline fp::SoftFloat random_value(std::mt19937_64& gen, int t, int span, bool allow_neg = true) {
  fp::SoftFloat s;
  fp::u128 m = (static_cast<fp::u128>(gen()) << 64) | gen();
  m |= static_cast<fp::u128>(1) << 127;
  if (t < 128) m &= ~((static_cast<fp::u128>(1) << (128 - t)) - 1);
  s.mant = m;
  s.exp = static_cast<std::int64_t>(gen() % (2 * span + 1)) - span;
  s.neg = allow_neg && (gen() & 1);
  return s;
}

// Neighbour of x with a few low bits changed; exercises cancellation and ties.
inline fp::SoftFloat perturbed(std::mt19937_64& gen, fp::SoftFloat x, int t) {
  int k = static_cast<int>(gen() % 4);
  x.exp -= static_cast<std::int64_t>(gen() % 3);
  fp::u128 ulp = static_cast<fp::u128>(1) << (128 - t);
  fp::u128 delta = ulp * (1 + gen() % 7);
  if (k == 0 && x.mant - delta >= (static_cast<fp::u128>(1) << 127)) x.mant -= delta;
  if (k == 1 && x.mant + delta > x.mant) x.mant += delta;
  if (k == 2) x.neg = !x.neg;
  return x;
}

}  // namespace testsupport
