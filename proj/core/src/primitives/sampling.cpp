#include "specbisect/primitives/sampling.hpp"

#include <mpfr.h>

#include "specbisect/errors.hpp"
#include "specbisect/fparith/mpfr_bridge.hpp"

namespace specbisect {

namespace {

struct Scratch {
  mpfr_t v;
  explicit Scratch(mpfr_prec_t p) { mpfr_init2(v, p); }
  ~Scratch() { mpfr_clear(v); }
  Scratch(const Scratch&) = delete;
  Scratch& operator=(const Scratch&) = delete;
};

void set_u128(mpfr_t out, std::uint64_t hi, std::uint64_t lo) {
  mpfr_set_ui_2exp(out, hi, 64, MPFR_RNDN);
  mpfr_add_ui(out, out, lo, MPFR_RNDN);
}

// |a - b| <= c * 2^-t * |b|
bool within(const mpfr_t a, const mpfr_t b, double c, int t) {
  Scratch d(mpfr_get_prec(b) + 8), bound(64);
  mpfr_sub(d.v, a, b, MPFR_RNDN);
  mpfr_abs(d.v, d.v, MPFR_RNDN);
  mpfr_abs(bound.v, b, MPFR_RNDU);
  mpfr_mul_d(bound.v, bound.v, c, MPFR_RNDU);
  mpfr_mul_2si(bound.v, bound.v, -t, MPFR_RNDU);
  return mpfr_lessequal_p(d.v, bound.v) != 0;
}

}  // namespace

fp::SoftFloat unif_sample(const fp::SoftFloat& s, std::uint64_t w0, std::uint64_t w1,
                          const fp::PrecisionConfig& cfg) {
  if (s.neg || s.is_zero()) throw DomainError("unif: scale must be positive");
  Scratch c(260), sm(128), out(128);
  set_u128(c.v, w0, w1);
  mpfr_t half;
  mpfr_init2(half, 8);
  mpfr_set_ui_2exp(half, 1, 127, MPFR_RNDN);
  mpfr_sub(c.v, c.v, half, MPFR_RNDN);  // q - 2^127, exact
  mpfr_clear(half);
  mpfr_mul_2si(c.v, c.v, -127, MPFR_RNDN);
  fp::to_mpfr(sm.v, s);
  mpfr_mul(c.v, c.v, sm.v, MPFR_RNDN);  // 128 x 129 bits fits in 260: exact
  fp::SoftFloat r = fp::from_mpfr(c.v, cfg);
  fp::to_mpfr(out.v, r);
  if (fp::compare(fp::abs(r), s) > 0 || !within(out.v, c.v, 1.0, cfg.mantissa_bits()))
    throw InvariantError("unif: coupling bound violated");
  return r;
}

std::pair<fp::SoftFloat, fp::SoftFloat> normal_sample(std::uint64_t w0, std::uint64_t w1,
                                                      std::uint64_t w2, std::uint64_t w3,
                                                      const fp::PrecisionConfig& cfg) {
  const int t = cfg.mantissa_bits();
  const mpfr_prec_t p = t + 64;
  Scratch u1(p + 2), u2(p + 2), r(p), phi(p), re(p), im(p), out(128);
  set_u128(u1.v, w0, w1);
  mpfr_add_ui(u1.v, u1.v, 1, MPFR_RNDN);
  mpfr_mul_2si(u1.v, u1.v, -128, MPFR_RNDN);
  set_u128(u2.v, w2, w3);
  mpfr_mul_2si(u2.v, u2.v, -128, MPFR_RNDN);
  mpfr_log(r.v, u1.v, MPFR_RNDN);
  mpfr_neg(r.v, r.v, MPFR_RNDN);
  mpfr_sqrt(r.v, r.v, MPFR_RNDN);
  mpfr_const_pi(phi.v, MPFR_RNDN);
  mpfr_mul_2si(phi.v, phi.v, 1, MPFR_RNDN);
  mpfr_mul(phi.v, phi.v, u2.v, MPFR_RNDN);
  mpfr_sin_cos(im.v, re.v, phi.v, MPFR_RNDN);
  mpfr_mul(re.v, re.v, r.v, MPFR_RNDN);
  mpfr_mul(im.v, im.v, r.v, MPFR_RNDN);
  fp::SoftFloat a = fp::from_mpfr(re.v, cfg);
  fp::SoftFloat b = fp::from_mpfr(im.v, cfg);
  fp::to_mpfr(out.v, a);
  bool ok = within(out.v, re.v, 1.0, t);
  fp::to_mpfr(out.v, b);
  ok = ok && within(out.v, im.v, 1.0, t);
  if (!ok) throw InvariantError("normal: coupling bound violated");
  return {a, b};
}

}  // namespace specbisect
