#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "specbisect/fparith/complex.hpp"
#include "specbisect/primitives/matrix.hpp"

namespace specbisect {

struct Norms {
  double spectral = 0;
  double frobenius = 0;
  double max_entry = 0;
};

// sqrt(sum |a_ij|^2), accumulated row-major at working precision.
template <class F>
typename F::real frobenius_norm(const F& f, const Matrix<typename F::real>& a) {
  typename F::real acc = f.zero();
  for (const auto& z : a.data) acc = f.add(acc, fp::cabs2(f, z));
  return f.sqrt(acc);
}

// max |a_ij| at working precision.
template <class F>
typename F::real max_entry_norm(const F& f, const Matrix<typename F::real>& a) {
  typename F::real best = f.zero();
  for (const auto& z : a.data) {
    auto m = f.sqrt(fp::cabs2(f, z));
    if (f.less(best, m)) best = m;
  }
  return best;
}

// The same two norms evaluated in double from the exact entries; used for diagnostics
// and stopping tests where a double-accurate value is enough.
template <class F>
double max_entry_double(const F& f, const Matrix<typename F::real>& a) {
  double best = 0;
  for (const auto& z : a.data) best = std::max(best, std::hypot(f.to_double(z.re), f.to_double(z.im)));
  return best;
}

inline double frobenius_double(const std::vector<std::complex<double>>& a) {
  double s = 0;
  for (const auto& z : a) s += std::norm(z);
  return std::sqrt(s);
}

// Largest singular value of a row-major rows x cols matrix by power iteration on A*A.
inline double spectral_norm_power(const std::vector<std::complex<double>>& a, std::size_t rows,
                                  std::size_t cols, int steps = 50) {
  if (rows == 0 || cols == 0) return 0;
  std::vector<std::complex<double>> x(cols), y(rows);
  for (std::size_t j = 0; j < cols; ++j) x[j] = 1.0 + 0.1 * std::sin(1.0 + static_cast<double>(j));
  double sigma = 0;
  for (int it = 0; it < steps; ++it) {
    for (std::size_t i = 0; i < rows; ++i) {
      std::complex<double> s = 0;
      for (std::size_t j = 0; j < cols; ++j) s += a[i * cols + j] * x[j];
      y[i] = s;
    }
    for (std::size_t j = 0; j < cols; ++j) {
      std::complex<double> s = 0;
      for (std::size_t i = 0; i < rows; ++i) s += std::conj(a[i * cols + j]) * y[i];
      x[j] = s;
    }
    double nx = 0;
    for (const auto& v : x) nx += std::norm(v);
    nx = std::sqrt(nx);
    if (nx == 0) return 0;
    for (auto& v : x) v /= nx;
    // ||A x|| for the normalised iterate.
    double ny = 0;
    for (std::size_t i = 0; i < rows; ++i) {
      std::complex<double> s = 0;
      for (std::size_t j = 0; j < cols; ++j) s += a[i * cols + j] * x[j];
      ny += std::norm(s);
    }
    sigma = std::sqrt(ny);
  }
  return sigma;
}

// Largest singular value by a double-precision SVD.
double spectral_norm(const std::vector<std::complex<double>>& a, std::size_t rows,
                     std::size_t cols);

// max |lambda| of a Hermitian n x n matrix (row-major), by a double eigensolver.
double hermitian_spectral_norm(const std::vector<std::complex<double>>& a, std::size_t n);

template <class F>
Norms norms(const F& f, const Matrix<typename F::real>& a) {
  Norms r;
  r.frobenius = f.to_double(frobenius_norm(f, a));
  r.max_entry = f.to_double(max_entry_norm(f, a));
  r.spectral = spectral_norm(to_complex_double(f, a), a.rows, a.cols);
  return r;
}

}  // namespace specbisect
