#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "specbisect/errors.hpp"
#include "specbisect/primitives/error_model.hpp"
#include "specbisect/primitives/mm.hpp"
#include "specbisect/primitives/qr.hpp"
#include "specbisect/primitives/sampling.hpp"

namespace specbisect {

// Parameters of one DEFLATE call and the quantities of its guarantee.
struct DeflateParams {
  std::size_t n = 0;
  std::size_t r = 0;
  double beta = 0;  // ||P - A|| budget
  double rho = 0;   // failure budget (convenience parameterization only)
  double x = 0;
  double t = 0;
  double eta = 0;   // target ||U~ - U|| (convenience parameterization only)

  // x = sqrt(rho/r), t = sqrt(log(4/rho)/n) and the largest beta that yields error eta
  // with probability 1 - rho.
  static DeflateParams convenient(std::size_t n, std::size_t r, double rho, double eta,
                                  double sigma_1, double sigma_r);
  static DeflateParams raw(std::size_t n, std::size_t r, double beta, double x, double t);

  // 2 exp(-n t^2) + (r/2) x^2
  double failure_probability() const;
  // 6 ((sigma_1 + 2)/sigma_r) ((2 sqrt2 + t) sqrt n / x) beta
  double ensure_bound(double sigma_1, double sigma_r) const;
  // (1/5) (sigma_r/(sigma_1 + 2)) x / ((2 sqrt2 + t) sqrt n); beta must not exceed it and
  // it must not exceed 1.
  double require_limit(double sigma_1, double sigma_r) const;
  bool require_holds(double sigma_1, double sigma_r) const;
  // Empty when the Require clause holds, otherwise a description of the failing part.
  std::string require_diagnostic(double sigma_1, double sigma_r) const;
};

// u_DEFLATE = beta / (4 mu_QR(n) + 2 sqrt(n) c_N + 2 mu_MM(n)).
double deflate_precision(double beta, std::size_t n, const ErrorModel& em = ErrorModel::frozen());

// Words of the random stream reserved by one call: one normal sample per entry of G.
inline std::uint64_t deflate_words(std::size_t n) { return kNormalWords * n * n; }

// First r columns of Q in QR(MM(P, G)), G an n x n matrix of normal() samples with entry
// (i, j) drawn at word offset kNormalWords (i n + j) of `rng`.
//
// Column j of MM(P, G) only involves column j of G, and the first r columns of Q only
// involve the first r columns of MM(P, G), so only G[:, :r] is drawn and only the n x r
// product is factored; the result is bit-identical to the full computation.
// With `gate` set, u <= u_DEFLATE(gate->beta, n) is enforced.
template <class F>
Matrix<typename F::real> deflate(const F& f, const Matrix<typename F::real>& p, std::size_t r,
                                 RngState rng, const DeflateParams* gate = nullptr,
                                 const ErrorModel& em = ErrorModel::frozen()) {
  using R = typename F::real;
  if (!p.square()) throw DimensionError("deflate: square input required");
  const std::size_t n = p.rows;
  if (r < 1 || r + 1 > n) throw DomainError("deflate: rank must lie in [1, n-1]");
  if (gate && f.unit_roundoff() > deflate_precision(gate->beta, n, em))
    throw PreconditionError("deflate: unit roundoff exceeds u_DEFLATE(beta, n)");
  Matrix<R> g(n, r);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      RngState at = rng.advanced(kNormalWords * (i * n + j));
      g(i, j) = normal(f, at);
    }
  Matrix<R> m = mm(f, p, g);
  return qr(f, m, r).q;
}

// min over unitary W of ||U~ - U W|| (spectral), with U an orthonormal basis of the
// dominant r-dimensional left singular subspace of A computed at oracle precision and W
// the polar factor of U* U~. Requires sigma_r(A) / sigma_{r+1}(A) >= 1e6.
double residual_subspace_distance(const std::vector<std::complex<double>>& u_tilde,
                                  const std::vector<std::complex<double>>& a, std::size_t n,
                                  std::size_t r);

}  // namespace specbisect
