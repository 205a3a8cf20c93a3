#include "specbisect/analysis/oracle.hpp"

#include <algorithm>
#include <Eigen/Dense>
#include <boost/multiprecision/mpfr.hpp>
#include <cmath>
#include <limits>
#include <numeric>

#include "specbisect/errors.hpp"
#include "specbisect/fparith/mpfr_bridge.hpp"

namespace specbisect::analysis {

namespace {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<80>,
                                           boost::multiprecision::et_off>;

struct Cx {
  Real re, im;
};

Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
Cx operator*(const Cx& a, const Cx& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Cx operator*(const Real& s, const Cx& a) { return {s * a.re, s * a.im}; }
Cx conj(const Cx& a) { return {a.re, -a.im}; }
Real norm2(const Cx& a) { return a.re * a.re + a.im * a.im; }

using HMat = std::vector<Cx>;

Real from_soft(const fp::SoftFloat& x) {
  Real r;
  fp::to_mpfr(r.backend().data(), x);
  return r;
}

struct Hp {
  std::size_t n;
  std::vector<Real> lambda;  // ascending
  HMat v;                    // row-major, columns are eigenvectors
  double ortho = 0, resid = 0;
  int sweeps = 0;
};

// Eigenvectors of `a` from a double-precision solve, made orthonormal at full precision by
// modified Gram-Schmidt. Returns the identity if the double solve fails.
HMat warm_start(const HMat& a, std::size_t n) {
  Eigen::MatrixXcd m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = {static_cast<double>(a[i * n + j].re), static_cast<double>(a[i * n + j].im)};
  HMat v(n * n, Cx{Real(0), Real(0)});
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  if (es.info() != Eigen::Success || !es.eigenvectors().allFinite()) {
    for (std::size_t i = 0; i < n; ++i) v[i * n + i].re = 1;
    return v;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      v[i * n + j] = {Real(es.eigenvectors()(i, j).real()), Real(es.eigenvectors()(i, j).imag())};
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      Cx d{Real(0), Real(0)};
      for (std::size_t i = 0; i < n; ++i) d = d + conj(v[i * n + k]) * v[i * n + j];
      for (std::size_t i = 0; i < n; ++i) v[i * n + j] = v[i * n + j] - v[i * n + k] * d;
    }
    Real nrm = 0;
    for (std::size_t i = 0; i < n; ++i) nrm += norm2(v[i * n + j]);
    nrm = sqrt(nrm);
    for (std::size_t i = 0; i < n; ++i) v[i * n + j] = {v[i * n + j].re / nrm, v[i * n + j].im / nrm};
  }
  return v;
}

// a * b for n x n row-major; adj_a uses a*.
HMat hp_mul(const HMat& a, const HMat& b, std::size_t n, bool adj_a) {
  HMat c(n * n, Cx{Real(0), Real(0)});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Cx x = adj_a ? conj(a[k * n + i]) : a[i * n + k];
      for (std::size_t j = 0; j < n; ++j) c[i * n + j] = c[i * n + j] + x * b[k * n + j];
    }
  return c;
}

Hp jacobi(HMat a, std::size_t n, bool verify = true) {
  Hp out;
  out.n = n;
  const HMat a0 = a;
  // Rotating into the double-precision eigenbasis first leaves off-diagonal entries near
  // 1e-16 ||A||, from which the cyclic sweeps converge quadratically.
  HMat v = warm_start(a, n);
  a = hp_mul(hp_mul(v, a, n, true), v, n, false);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) a[j * n + i] = conj(a[i * n + j]);
  for (std::size_t i = 0; i < n; ++i) a[i * n + i].im = 0;

  Real fro2 = 0;
  for (const auto& z : a) fro2 += norm2(z);
  const Real tol2 = fro2 * Real("1e-100");  // (1e-50 ||A||_F)^2
  auto off2 = [&] {
    Real s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += norm2(a[i * n + j]);
    return s;
  };
  while (fro2 > 0 && off2() > tol2) {
    if (++out.sweeps > 100) throw NonConvergenceError("oracle Jacobi did not converge");
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        Cx apq = a[p * n + q];
        Real mag2 = norm2(apq);
        if (mag2 == 0) continue;
        Real mag = sqrt(mag2);
        Cx e{apq.re / mag, apq.im / mag};
        Real theta = (a[q * n + q].re - a[p * n + p].re) / (2 * mag);
        Real t = 1 / (abs(theta) + sqrt(theta * theta + 1));
        if (theta < 0) t = -t;
        Real c = 1 / sqrt(t * t + 1), s = t * c;
        // J = diag(1, conj(e)) [[c, s], [-s, c]] on coordinates (p, q).
        const Cx ec = conj(e);
        for (std::size_t k = 0; k < n; ++k) {
          Cx x = a[k * n + p], y = ec * a[k * n + q];
          a[k * n + p] = c * x - s * y;
          a[k * n + q] = s * x + c * y;
          Cx vx = v[k * n + p], vy = ec * v[k * n + q];
          v[k * n + p] = c * vx - s * vy;
          v[k * n + q] = s * vx + c * vy;
        }
        for (std::size_t k = 0; k < n; ++k) {
          Cx x = a[p * n + k], y = e * a[q * n + k];
          a[p * n + k] = c * x - s * y;
          a[q * n + k] = s * x + c * y;
        }
        a[p * n + q] = a[q * n + p] = Cx{Real(0), Real(0)};
        a[p * n + p].im = 0;
        a[q * n + q].im = 0;
      }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return a[x * n + x].re < a[y * n + y].re; });
  out.lambda.resize(n);
  out.v.assign(n * n, Cx{});
  for (std::size_t j = 0; j < n; ++j) {
    out.lambda[j] = a[order[j] * n + order[j]].re;
    for (std::size_t i = 0; i < n; ++i) out.v[i * n + j] = v[i * n + order[j]];
  }

  if (!verify) return out;
  Real ortho = 0, resid = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Cx g{Real(0), Real(0)}, r{Real(0), Real(0)};
      for (std::size_t k = 0; k < n; ++k) {
        g = g + conj(out.v[k * n + i]) * out.v[k * n + j];
        r = r + a0[i * n + k] * out.v[k * n + j];
      }
      if (i == j) g.re -= 1;
      r = r - out.lambda[j] * out.v[i * n + j];
      ortho += norm2(g);
      resid += norm2(r);
    }
  out.ortho = static_cast<double>(sqrt(ortho));
  out.resid = fro2 > 0 ? static_cast<double>(sqrt(resid / fro2)) : 0.0;
  return out;
}

HMat to_hp(const SoftMatrix& a) {
  if (!a.square()) throw DimensionError("oracle: square input required");
  HMat h(a.data.size());
  for (std::size_t k = 0; k < h.size(); ++k) h[k] = {from_soft(a.data[k].re), from_soft(a.data[k].im)};
  return h;
}

HMat to_hp(const CVec& a, std::size_t n) {
  if (a.size() != n * n) throw DimensionError("oracle: size mismatch");
  HMat h(a.size());
  for (std::size_t k = 0; k < h.size(); ++k) h[k] = {Real(a[k].real()), Real(a[k].imag())};
  return h;
}

void check_hermitian(const HMat& a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Cx d = a[i * n + j] - conj(a[j * n + i]);
      if (d.re != 0 || d.im != 0) throw DomainError("oracle: input is not Hermitian");
    }
}

OracleDecomposition finish(const Hp& h) {
  OracleDecomposition d;
  d.n = h.n;
  d.sweeps = h.sweeps;
  d.ortho_defect = h.ortho;
  d.residual = h.resid;
  for (const auto& l : h.lambda) d.eigenvalues.push_back(static_cast<double>(l));
  d.eigenvectors.resize(h.v.size());
  for (std::size_t k = 0; k < h.v.size(); ++k)
    d.eigenvectors[k] = {static_cast<double>(h.v[k].re), static_cast<double>(h.v[k].im)};
  return d;
}

CVec sign_from(const HMat& a, std::size_t n) {
  check_hermitian(a, n);
  Hp h = jacobi(a, n);
  Real scale = 0;
  for (const auto& l : h.lambda) scale = std::max(scale, Real(abs(l)));
  std::vector<int> sg(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (abs(h.lambda[j]) <= scale * Real("1e-60")) throw DomainError("oracle_sign: singular input");
    sg[j] = h.lambda[j] > 0 ? 1 : -1;
  }
  CVec s(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Cx acc{Real(0), Real(0)};
      for (std::size_t k = 0; k < n; ++k) {
        Cx term = h.v[i * n + k] * conj(h.v[j * n + k]);
        acc = sg[k] > 0 ? acc + term : acc - term;
      }
      s[i * n + j] = {static_cast<double>(acc.re), static_cast<double>(acc.im)};
    }
  return s;
}

}  // namespace

OracleDecomposition oracle_eigh(const SoftMatrix& a) {
  HMat h = to_hp(a);
  check_hermitian(h, a.rows);
  return finish(jacobi(std::move(h), a.rows));
}

OracleDecomposition oracle_eigh(const CVec& a, std::size_t n) {
  HMat h = to_hp(a, n);
  check_hermitian(h, n);
  return finish(jacobi(std::move(h), n));
}

CVec oracle_sign(const SoftMatrix& a) { return sign_from(to_hp(a), a.rows); }

CVec oracle_sign(const CVec& a, std::size_t n) { return sign_from(to_hp(a, n), n); }

CVec oracle_left_singular_basis(const CVec& a, std::size_t rows, std::size_t cols,
                                std::size_t r, double* gap_ratio) {
  if (a.size() != rows * cols) throw DimensionError("oracle basis: size mismatch");
  if (r < 1 || r > rows) throw DomainError("oracle basis: rank out of range");
  HMat h(rows * rows, Cx{Real(0), Real(0)});
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = i; j < rows; ++j) {
      Cx s{Real(0), Real(0)};
      for (std::size_t k = 0; k < cols; ++k) {
        Cx x{Real(a[i * cols + k].real()), Real(a[i * cols + k].imag())};
        Cx y{Real(a[j * cols + k].real()), Real(a[j * cols + k].imag())};
        s = s + x * conj(y);
      }
      if (i == j) s.im = 0;
      h[i * rows + j] = s;
      h[j * rows + i] = conj(s);
    }
  Hp d = jacobi(std::move(h), rows, false);
  if (gap_ratio) {
    Real top = d.lambda[rows - r];
    if (r == rows) {
      *gap_ratio = std::numeric_limits<double>::infinity();
    } else {
      Real next = d.lambda[rows - r - 1];
      *gap_ratio = next <= 0 ? std::numeric_limits<double>::infinity()
                             : static_cast<double>(sqrt(top / next));
    }
  }
  CVec basis(rows * r);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      const Cx& z = d.v[i * rows + (rows - 1 - j)];
      basis[i * r + j] = {static_cast<double>(z.re), static_cast<double>(z.im)};
    }
  return basis;
}

double oracle_pseudospectrum_gap(const std::vector<double>& eigenvalues, double c) {
  if (eigenvalues.empty()) throw DomainError("pseudospectrum gap of an empty spectrum");
  double g = std::fabs(eigenvalues[0] - c);
  for (double l : eigenvalues) g = std::min(g, std::fabs(l - c));
  return g;
}

}  // namespace specbisect::analysis
