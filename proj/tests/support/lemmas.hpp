#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "specbisect/primitives/rng.hpp"
#include "specbisect/sign/scalar.hpp"

// Scalar predicates of the Newton-Schulz convergence lemmas, evaluated in binary128 on
// a grid plus endpoint and adversarial-noise probes. Each checker returns the number of
// violations and the number of cases examined.
namespace testsupport::lemmas {

using Q = __float128;

inline Q g(Q x) { return (3 * x - x * x * x) / 2; }
inline Q m(Q x) {
  Q v = 1 - x * x;
  return v < 0 ? -v : v;
}
inline Q qabs(Q x) { return x < 0 ? -x : x; }
inline int sgn(Q x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

struct Tally {
  std::uint64_t cases = 0;
  std::uint64_t violations = 0;
  void check(bool ok) {
    ++cases;
    if (!ok) ++violations;
  }
};

// Grid over [lo, hi] with the given step, always including both endpoints.
inline std::vector<double> grid(double lo, double hi, double step) {
  std::vector<double> xs;
  for (double x = lo; x < hi; x += step) xs.push_back(x);
  xs.push_back(hi);
  return xs;
}

// Monotone convergence: for |xi| <= u,
//   sign(x) = sign(g(x) + xi)          on +-(u, sqrt3 - (sqrt3 - 1) u),
//   |x| <= |g(x) + xi| <= 1 + u        on [(8/3) u, 1 - (8/3) u].
inline Tally lemma_monotone(double u, double step = 1e-4) {
  Tally t;
  const double s3 = std::sqrt(3.0);
  const double hi = s3 - (s3 - 1) * u;
  std::vector<double> xs = grid(u, hi, step);
  xs.front() = u * (1 + 0x1p-40);
  xs.back() = hi * (1 - 0x1p-40);
  const Q xis[] = {-(Q)u, 0, (Q)u};
  for (double xd : xs)
    for (int s : {1, -1}) {
      Q x = s * (Q)xd;
      for (Q xi : xis) t.check(sgn(g(x) + xi) == sgn(x));
    }
  for (double xd : grid(8.0 / 3 * u, 1 - 8.0 / 3 * u, step))
    for (int s : {1, -1}) {
      Q x = s * (Q)xd;
      for (Q xi : xis) {
        Q y = qabs(g(x) + xi);
        t.check(qabs(x) <= y && y <= 1 + (Q)u);
      }
    }
  return t;
}

// Quadratic convergence:
//   20|xi| <= |x| <= 1 - sqrt(10|xi|)  =>  m(g(x) + xi) <= m(x)^2,
//   |x| <= sqrt2, |xi| <= 1            =>  m(g(x) + xi) <= m(x)^2 + 4|xi|.
// The noise is probed at 0, +-u and at the two extreme admissible magnitudes
// min(|x|/20, (1 - |x|)^2/10).
inline Tally lemma_quadratic(double u, double step = 1e-4) {
  Tally t;
  const Q slack = (Q)1e-30;
  for (double xd : grid(0, 1, step))
    for (int s : {1, -1}) {
      Q x = s * (Q)xd;
      Q ax = qabs(x);
      Q cap = std::fmin(xd / 20, (1 - xd) * (1 - xd) / 10);
      for (Q mag : {(Q)0, (Q)u, cap})
        for (int sx : {1, -1}) {
          Q xi = sx * mag;
          if (!(20 * qabs(xi) <= ax)) continue;
          // |x| <= 1 - sqrt(10|xi|)
          double lim = 1 - std::sqrt(10 * static_cast<double>(qabs(xi)));
          if (!(xd <= lim)) continue;
          t.check(m(g(x) + xi) <= m(x) * m(x) * (1 + slack) + slack);
        }
    }
  const double r2 = std::sqrt(2.0);
  for (double xd : grid(0, r2, step))
    for (int s : {1, -1}) {
      Q x = s * (Q)xd;
      for (double xim : {0.0, u, 0.25, 0.5, 1.0})
        for (int sx : {1, -1}) {
          Q xi = sx * (Q)xim;
          t.check(m(g(x) + xi) <= m(x) * m(x) + 4 * qabs(xi) + slack);
        }
    }
  return t;
}

// Overall scalar convergence: for 10u <= eps <= 3/80 and x0 in +-[20u, 1.5], any noise
// sequence |xi_k| <= u gives m(x_N) <= eps at N = ceil(N_SCALAR(x0, eps)). The noise is
// chosen greedily (each step the sign of +-u that makes m larger) and by random sign
// patterns; the run is also continued a few steps past N.
inline Tally lemma_overall(double u, double eps, double step = 1e-4, int random_patterns = 3,
                           std::uint64_t seed = 1) {
  Tally t;
  std::vector<double> x0s = grid(20 * u, 1.5, step);
  for (double x = 20 * u; x < 0.01; x *= 1.05) x0s.push_back(x);
  specbisect::RngState rng{seed, 0};
  for (double x0d : x0s)
    for (int s : {1, -1}) {
      const int n = static_cast<int>(std::ceil(specbisect::n_scalar(x0d, eps)));
      for (int pattern = -1; pattern < random_patterns; ++pattern) {
        Q x = s * (Q)x0d;
        bool ok = true;
        for (int k = 1; k <= n + 3; ++k) {
          Q gx = g(x);
          Q xi;
          if (pattern < 0)
            xi = m(gx + (Q)u) >= m(gx - (Q)u) ? (Q)u : -(Q)u;
          else
            xi = (specbisect::next_word(rng) & 1) ? (Q)u : -(Q)u;
          x = gx + xi;
          if (k >= n && !(m(x) <= (Q)eps)) ok = false;
        }
        t.check(ok);
      }
    }
  return t;
}

}  // namespace testsupport::lemmas
