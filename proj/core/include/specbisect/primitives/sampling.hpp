#pragma once

#include <cstdint>
#include <utility>

#include "specbisect/fparith/complex.hpp"
#include "specbisect/fparith/soft_float.hpp"
#include "specbisect/primitives/rng.hpp"

namespace specbisect {

// Words consumed per sample.
inline constexpr std::uint64_t kUnifWords = 2;
inline constexpr std::uint64_t kNormalWords = 4;

// fl(c') for c' = s * (q * 2^-127 - 1), q = (w0 << 64 | w1). The map is exact before the
// single rounding, so c' is uniform on a 2^-127 s grid covering [-s, s) and the output
// satisfies |out - c'| <= u |c'| <= s u and out in [-s, s]. All-zero bits give -s.
fp::SoftFloat unif_sample(const fp::SoftFloat& s, std::uint64_t w0, std::uint64_t w1,
                          const fp::PrecisionConfig& cfg);

// Complex Gaussian with independent N(0, 1/2) parts, by Box-Muller evaluated in MPFR at
// t + 64 bits: U1 = (q1 + 1) 2^-128, U2 = q2 2^-128, z = sqrt(-ln U1) e^(2 pi i U2).
// Each part is then rounded to t bits, so |out - z| <= u |z| up to the 2^-(t+60) relative
// error of the transcendental evaluation; c_N = 2 covers both.
std::pair<fp::SoftFloat, fp::SoftFloat> normal_sample(std::uint64_t w0, std::uint64_t w1,
                                                      std::uint64_t w2, std::uint64_t w3,
                                                      const fp::PrecisionConfig& cfg);

template <class F>
typename F::real unif(const F& f, const typename F::real& s, RngState& rng) {
  std::uint64_t w0 = next_word(rng), w1 = next_word(rng);
  return f.from_soft(unif_sample(f.to_soft(s), w0, w1, f.config()));
}

template <class F>
fp::Cplx<typename F::real> normal(const F& f, RngState& rng) {
  std::uint64_t w0 = next_word(rng), w1 = next_word(rng), w2 = next_word(rng),
                w3 = next_word(rng);
  auto [re, im] = normal_sample(w0, w1, w2, w3, f.config());
  return {f.from_soft(re), f.from_soft(im)};
}

}  // namespace specbisect
