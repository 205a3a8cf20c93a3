#pragma once

#include <algorithm>
#include <complex>
#include <vector>

#include "checks.hpp"
#include "specbisect/analysis/generators.hpp"
#include "specbisect/deflate/deflate.hpp"
#include "specbisect/primitives/norms.hpp"

namespace testsupport {

// V V* for the first r columns V of a random unitary.
inline specbisect::analysis::CVec random_projector(std::size_t n, std::size_t r,
                                                   specbisect::RngState& rng) {
  auto q = specbisect::analysis::random_unitary(n, rng);
  specbisect::analysis::CVec p(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      std::complex<double> s = 0;
      for (std::size_t k = 0; k < r; ++k) s += q[i * n + k] * std::conj(q[j * n + k]);
      if (i == j) s.imag(0);
      p[i * n + j] = s;
      p[j * n + i] = std::conj(s);
    }
  return p;
}

struct TrialTally {
  int trials = 0;
  int failures = 0;          // Ensure bound violated
  double worst_gram = 0;     // max ||Q*Q - I|| / (mu_QR(n) u)
};

// Noisy projectors P + beta E / ||E|| with E from the GUE, deflated at t = 53.
inline TrialTally noisy_projector_trials(int trials, const specbisect::DeflateParams& params) {
  using namespace specbisect;
  fp::PrecisionConfig cfg(53);
  fp::HwField f(cfg);
  ErrorModel em;
  const std::size_t n = params.n, r = params.r;
  RngState data{808, 0};
  TrialTally t;
  t.trials = trials;
  for (int k = 0; k < trials; ++k) {
    auto p = random_projector(n, r, data);
    auto e = analysis::gue(n, data);
    double en = hermitian_spectral_norm(e, n);
    analysis::CVec noisy(n * n);
    for (std::size_t i = 0; i < noisy.size(); ++i) noisy[i] = p[i] + e[i] * (params.beta / en);
    auto pt = from_complex_double(f, n, n, noisy, true);
    auto q = deflate(f, pt, r, RngState{static_cast<std::uint64_t>(k), 0}, &params);
    QMat qq = to_quad(f, q);
    QMat gram = qmul(qq, qq, r, n, r, true);
    for (std::size_t i = 0; i < r; ++i) gram[i * r + i].re -= 1;
    t.worst_gram = std::max(t.worst_gram, spectral(to_eigen(gram, r, r)) /
                                              (em.mu_qr(n) * cfg.unit_roundoff()));
    if (residual_subspace_distance(to_complex_double(f, q), p, n, r) > params.ensure_bound(1, 1))
      ++t.failures;
  }
  return t;
}

inline specbisect::DeflateParams trial_params() {
  auto params = specbisect::DeflateParams::convenient(16, 4, 0.1, 1.2, 1, 1);
  params.beta = 1e-6;
  return params;
}

// Worst subspace distance over coordinate projectors onto r random axes of C^n.
inline double coordinate_projector_worst(std::size_t n, int seeds, bool random_rank,
                                         std::size_t rank = 1) {
  using namespace specbisect;
  fp::PrecisionConfig cfg(53);
  fp::HwField f(cfg);
  RngState pick{31, 0};
  double worst = 0;
  for (int seed = 0; seed < seeds; ++seed) {
    std::size_t r = random_rank ? 1 + next_word(pick) % (n - 1) : rank;
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (std::size_t i = n - 1; i > 0; --i) std::swap(idx[i], idx[next_word(pick) % (i + 1)]);
    Matrix<double> p(n, n);
    analysis::CVec pd(n * n);
    for (std::size_t k = 0; k < r; ++k) {
      p(idx[k], idx[k]).re = 1;
      pd[idx[k] * n + idx[k]] = 1;
    }
    p.hermitian = true;
    auto q = deflate(f, p, r, RngState{static_cast<std::uint64_t>(seed), 0});
    worst = std::max(worst, residual_subspace_distance(to_complex_double(f, q), pd, n, r));
  }
  return worst;
}

}  // namespace testsupport
