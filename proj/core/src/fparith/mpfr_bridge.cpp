#include "specbisect/fparith/mpfr_bridge.hpp"

#include <gmp.h>

#include <climits>
#include <cstdint>

#include "specbisect/errors.hpp"

static_assert(sizeof(unsigned long) == 8, "64-bit unsigned long required");

namespace specbisect::fp {

void to_mpfr(mpfr_t out, const SoftFloat& x) {
  if (x.is_zero()) {
    mpfr_set_zero(out, 1);
    return;
  }
  mpfr_t lo;
  mpfr_init2(lo, 64);
  mpfr_set_ui_2exp(out, static_cast<unsigned long>(x.mant >> 64), x.exp - 63, MPFR_RNDN);
  mpfr_set_ui_2exp(lo, static_cast<unsigned long>(x.mant), x.exp - 127, MPFR_RNDN);
  mpfr_add(out, out, lo, MPFR_RNDN);
  if (x.neg) mpfr_neg(out, out, MPFR_RNDN);
  mpfr_clear(lo);
}

SoftFloat from_mpfr(const mpfr_t x, const PrecisionConfig& cfg) {
  if (!mpfr_number_p(x)) throw RangeError("non-finite MPFR value");
  if (mpfr_zero_p(x)) return SoftFloat{};
  mpfr_t r;
  mpfr_init2(r, cfg.mantissa_bits());
  mpfr_set(r, x, MPFR_RNDN);
  mpz_t z;
  mpz_init(z);
  mpfr_exp_t e = mpfr_get_z_2exp(z, r);  // r = z * 2^e, |z| has exactly t bits
  SoftFloat s;
  s.neg = mpz_sgn(z) < 0;
  mpz_abs(z, z);
  std::size_t bits = mpz_sizeinbase(z, 2);
  std::uint64_t words[2] = {0, 0};
  mpz_export(words, nullptr, -1, sizeof(std::uint64_t), 0, 0, z);
  u128 m = (static_cast<u128>(words[1]) << 64) | words[0];
  s.mant = m << (128 - bits);
  s.exp = static_cast<std::int64_t>(e) + static_cast<std::int64_t>(bits) - 1;
  mpz_clear(z);
  mpfr_clear(r);
  return fl(s, cfg);  // exact; applies the range check
}

}  // namespace specbisect::fp
