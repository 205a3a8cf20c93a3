#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "specbisect/primitives/matrix.hpp"
#include "specbisect/primitives/rng.hpp"

namespace testsupport {

using CMat = Eigen::MatrixXcd;

// Quad-precision complex scalar; products of doubles are exact in it.
struct Q {
  __float128 re = 0, im = 0;
};
inline Q operator+(Q a, Q b) { return {a.re + b.re, a.im + b.im}; }
inline Q operator-(Q a, Q b) { return {a.re - b.re, a.im - b.im}; }
inline Q operator*(Q a, Q b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
inline Q conjq(Q a) { return {a.re, -a.im}; }

using QMat = std::vector<Q>;  // row-major

template <class F>
QMat to_quad(const F& f, const specbisect::Matrix<typename F::real>& a) {
  QMat r(a.data.size());
  for (std::size_t k = 0; k < r.size(); ++k)
    r[k] = {static_cast<__float128>(f.to_double(a.data[k].re)),
            static_cast<__float128>(f.to_double(a.data[k].im))};
  return r;
}

// a (n x k) times b (k x m); adj_a uses a* (a stored k x n).
inline QMat qmul(const QMat& a, const QMat& b, std::size_t n, std::size_t k, std::size_t m,
                 bool adj_a = false) {
  QMat c(n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Q s;
      for (std::size_t l = 0; l < k; ++l)
        s = s + (adj_a ? conjq(a[l * n + i]) : a[i * k + l]) * b[l * m + j];
      c[i * m + j] = s;
    }
  return c;
}

inline CMat to_eigen(const QMat& a, std::size_t rows, std::size_t cols) {
  CMat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m(i, j) = {static_cast<double>(a[i * cols + j].re), static_cast<double>(a[i * cols + j].im)};
  return m;
}

template <class F>
CMat to_eigen(const F& f, const specbisect::Matrix<typename F::real>& a) {
  CMat m(a.rows, a.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) m(i, j) = specbisect::fp::to_std(f, a(i, j));
  return m;
}

inline double spectral(const CMat& m) {
  if (m.size() == 0) return 0;
  return Eigen::JacobiSVD<CMat>(m).singularValues()(0);
}

// Entries with real and imaginary parts uniform in [-1, 1), rounded into the field.
template <class F>
specbisect::Matrix<typename F::real> random_matrix(const F& f, std::size_t r, std::size_t c,
                                                   specbisect::RngState& rng) {
  specbisect::Matrix<typename F::real> m(r, c);
  for (auto& z : m.data) {
    z.re = f.from_double(2 * specbisect::next_unit_double(rng) - 1);
    z.im = f.from_double(2 * specbisect::next_unit_double(rng) - 1);
  }
  return m;
}

}  // namespace testsupport
