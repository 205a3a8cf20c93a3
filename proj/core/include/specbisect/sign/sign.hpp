#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "specbisect/errors.hpp"
#include "specbisect/fparith/complex.hpp"
#include "specbisect/primitives/error_model.hpp"
#include "specbisect/primitives/mm.hpp"
#include "specbisect/primitives/norms.hpp"
#include "specbisect/sign/scalar.hpp"

namespace specbisect {

struct SignParams {
  double epsilon = 1e-8;
  double b = 1;           // upper bound on ||A||
  double a_inv_norm = 1;  // ||A^-1|| or an upper bound for it
};

struct SignTrace {
  std::vector<double> iterates_norm;  // ||A_k|| for k = 0..iterations (empty if not recorded)
  std::vector<double> stop_metric;    // ||I - MM(A_k, A_k)||_max for k = 1..iterations
  int iterations = 0;
  double threshold = 0;  // stop threshold actually used
  double n_sign = 0;
};

template <class R>
struct SignResult {
  Matrix<R> s;
  SignTrace trace;
};

// g(A) = MM(A, 3I - MM(A, A)) / 2. Only the diagonal of 3I - S is rounded; the
// off-diagonal entries are negated exactly. `sq` may carry a precomputed MM(A, A).
template <class F>
Matrix<typename F::real> g_matrix(const F& f, const Matrix<typename F::real>& a,
                                  const Matrix<typename F::real>* sq = nullptr) {
  if (!a.square()) throw DimensionError("g_matrix: square input required");
  Matrix<typename F::real> s = sq ? *sq : mm(f, a, a, MmOutput::hermitian);
  const auto three = f.from_int(3);
  for (std::size_t i = 0; i < s.rows; ++i)
    for (std::size_t j = 0; j < s.cols; ++j) {
      auto& z = s(i, j);
      if (i == j)
        z = {f.sub(three, z.re), f.zero()};
      else
        z = {f.neg(z.re), f.neg(z.im)};
    }
  auto out = mm(f, a, s, MmOutput::hermitian);
  for (auto& z : out.data) z = fp::chalf(f, z);
  return out;
}

// max_ij |delta_ij - s_ij| evaluated in double from the exact entries.
template <class F>
double identity_defect_max(const F& f, const Matrix<typename F::real>& s) {
  double best = 0;
  for (std::size_t i = 0; i < s.rows; ++i)
    for (std::size_t j = 0; j < s.cols; ++j) {
      double re = f.to_double(s(i, j).re), im = f.to_double(s(i, j).im);
      if (i == j) re = 1 - re;
      best = std::max(best, std::hypot(re, im));
    }
  return best;
}

// Newton-Schulz sign iteration: A_0 = fl(A/b), A_{k+1} = g(A_k) until
// ||I - MM(A_k, A_k)||_max <= max(eps/(4n), 2 (mu_g(n, 1.1) + mu_MM(n)) u).
// The second term only matters when u is above the precision the guarantee asks for; it
// keeps the stop test above the rounding floor of the metric itself.
template <class F>
SignResult<typename F::real> sign_matrix(const F& f, const Matrix<typename F::real>& a,
                                         const SignParams& p,
                                         const ErrorModel& em = ErrorModel::frozen(),
                                         bool record_norms = true) {
  using R = typename F::real;
  if (!a.square() || a.rows == 0) throw DimensionError("sign_matrix: nonempty square input required");
  if (!is_exactly_hermitian(a)) throw PreconditionError("sign_matrix: input must be exactly Hermitian");
  if (!(p.epsilon > 0 && p.epsilon < 1)) throw DomainError("sign_matrix: epsilon must lie in (0, 1)");
  if (!(p.b > 0 && p.a_inv_norm > 0)) throw DomainError("sign_matrix: b and a_inv_norm must be positive");
  const double n = static_cast<double>(a.rows);

  SignResult<R> res;
  SignTrace& tr = res.trace;
  tr.n_sign = n_sign(p.epsilon, p.b, p.a_inv_norm, n);
  const int cap = 4 * static_cast<int>(std::ceil(std::max(tr.n_sign, 1.0)));
  tr.threshold = std::max(p.epsilon / (4 * n),
                          2 * (mu_g(n, 1.1, em) + em.mu_mm(n)) * f.unit_roundoff());

  const R b = f.from_double(p.b);
  Matrix<R> ak(a.rows, a.cols);
  for (std::size_t k = 0; k < a.data.size(); ++k)
    ak.data[k] = {f.div(a.data[k].re, b), f.div(a.data[k].im, b)};
  ak.hermitian = true;
  auto record = [&](const Matrix<R>& m) {
    if (record_norms) tr.iterates_norm.push_back(hermitian_spectral_norm(to_complex_double(f, m), m.rows));
  };
  record(ak);

  Matrix<R> sq = mm(f, ak, ak, MmOutput::hermitian);
  for (;;) {
    if (tr.iterations >= cap)
      throw NonConvergenceError("sign_matrix: no convergence within " + std::to_string(cap) +
                                " iterations (eigenvalue too close to 0, or precision too low)");
    ak = g_matrix(f, ak, &sq);
    ++tr.iterations;
    record(ak);
    sq = mm(f, ak, ak, MmOutput::hermitian);
    double metric = identity_defect_max(f, sq);
    tr.stop_metric.push_back(metric);
    if (metric <= tr.threshold) break;
  }
  res.s = std::move(ak);
  return res;
}

// The O(n^2) choice b = ||A||_F, at working precision.
template <class F>
typename F::real estimate_b(const F& f, const Matrix<typename F::real>& a) {
  return frobenius_norm(f, a);
}

}  // namespace specbisect
