#pragma once

#include <algorithm>
#include <vector>

#include "specbisect/fparith/complex.hpp"
#include "specbisect/primitives/matrix.hpp"

namespace specbisect {

template <class R>
struct QrResult {
  Matrix<R> q;  // n x q_cols, the leading columns of Q
  Matrix<R> r;  // n x m, upper triangular with real nonnegative diagonal
};

// Householder QR, A = QR for an n x m matrix with n >= m.
//
// Column j is reflected onto alpha e_j with alpha = -phase(x_0) ||x||, and the reflector
// is skipped when the part of the column below the diagonal is exactly zero. Q is
// accumulated by applying the reflectors to the identity in reverse order. Finally each
// pair (column j of Q, row j of R) is rescaled by a unit phase so that diag(R) is real and
// nonnegative.
//
// Column j of Q depends only on the first j+1 reflectors, which depend only on the first
// j+1 columns of A; asking for q_cols < n columns therefore returns exactly the leading
// columns of the full factor.
template <class F>
QrResult<typename F::real> qr(const F& f, const Matrix<typename F::real>& a,
                              std::size_t q_cols) {
  using R = typename F::real;
  using C = fp::Cplx<R>;
  const std::size_t n = a.rows, m = a.cols;
  if (m > n) throw DimensionError("qr: needs rows >= cols, got " + shape_string(n, m));
  if (q_cols > n) throw DimensionError("qr: cannot return more than n columns of Q");
  const R one = f.from_int(1);
  const R two = f.from_int(2);

  Matrix<R> w = a;
  w.hermitian = false;
  struct Reflector {
    bool active = false;
    std::vector<C> v;  // rows j..n-1
    R coef{};          // 2 / (v* v)
  };
  const std::size_t steps = std::min(n, m);
  std::vector<Reflector> refl(steps);
  std::vector<C> phase(steps, C{one, R{}});
  std::vector<R> diag(steps);

  for (std::size_t j = 0; j < steps; ++j) {
    const std::size_t len = n - j;
    bool tail_zero = true;
    for (std::size_t i = j + 1; i < n; ++i)
      if (!(f.is_zero(w(i, j).re) && f.is_zero(w(i, j).im))) tail_zero = false;
    C x0 = w(j, j);
    R a0 = f.sqrt(fp::cabs2(f, x0));
    C ph = f.is_zero(a0) ? C{one, R{}} : C{f.div(x0.re, a0), f.div(x0.im, a0)};
    if (tail_zero) {
      phase[j] = ph;
      diag[j] = a0;
      continue;
    }
    R norm2 = fp::cabs2(f, w(j, j));
    for (std::size_t i = j + 1; i < n; ++i) norm2 = f.add(norm2, fp::cabs2(f, w(i, j)));
    R nrm = f.sqrt(norm2);
    C alpha = fp::cneg(f, fp::cscale(f, ph, nrm));
    Reflector& h = refl[j];
    h.active = true;
    h.v.resize(len);
    h.v[0] = fp::csub(f, x0, alpha);
    for (std::size_t i = 1; i < len; ++i) h.v[i] = w(j + i, j);
    R vnorm2 = fp::cabs2(f, h.v[0]);
    for (std::size_t i = 1; i < len; ++i) vnorm2 = f.add(vnorm2, fp::cabs2(f, h.v[i]));
    h.coef = f.div(two, vnorm2);
    for (std::size_t k = j + 1; k < m; ++k) {
      C dot = fp::cmul_conj(f, h.v[0], w(j, k));
      for (std::size_t i = 1; i < len; ++i)
        dot = fp::cadd(f, dot, fp::cmul_conj(f, h.v[i], w(j + i, k)));
      C s = fp::cscale(f, dot, h.coef);
      for (std::size_t i = 0; i < len; ++i)
        w(j + i, k) = fp::csub(f, w(j + i, k), fp::cmul(f, h.v[i], s));
    }
    w(j, j) = alpha;
    for (std::size_t i = j + 1; i < n; ++i) w(i, j) = C{};
    phase[j] = fp::cneg(f, ph);
    diag[j] = nrm;
  }

  QrResult<R> out;
  out.r = Matrix<R>(n, m);
  for (std::size_t j = 0; j < steps; ++j) {
    out.r(j, j) = C{diag[j], R{}};
    for (std::size_t k = j + 1; k < m; ++k) out.r(j, k) = fp::cmul_conj(f, phase[j], w(j, k));
  }

  out.q = Matrix<R>(n, q_cols);
  for (std::size_t c = 0; c < q_cols; ++c) out.q(c, c).re = one;
  for (std::size_t jj = steps; jj-- > 0;) {
    const Reflector& h = refl[jj];
    if (!h.active) continue;
    const std::size_t len = n - jj;
    // Columns c < jj are still e_c on rows >= jj, so the reflector leaves them unchanged.
    for (std::size_t c = jj; c < q_cols; ++c) {
      C dot = fp::cmul_conj(f, h.v[0], out.q(jj, c));
      for (std::size_t i = 1; i < len; ++i)
        dot = fp::cadd(f, dot, fp::cmul_conj(f, h.v[i], out.q(jj + i, c)));
      C s = fp::cscale(f, dot, h.coef);
      for (std::size_t i = 0; i < len; ++i)
        out.q(jj + i, c) = fp::csub(f, out.q(jj + i, c), fp::cmul(f, h.v[i], s));
    }
  }
  for (std::size_t j = 0; j < std::min(steps, q_cols); ++j)
    for (std::size_t i = 0; i < n; ++i) out.q(i, j) = fp::cmul(f, out.q(i, j), phase[j]);
  return out;
}

template <class F>
QrResult<typename F::real> qr(const F& f, const Matrix<typename F::real>& a) {
  return qr(f, a, a.rows);
}

}  // namespace specbisect
