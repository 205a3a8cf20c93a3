#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "specbisect/errors.hpp"
#include "specbisect/fparith/complex.hpp"
#include "specbisect/fparith/soft_float.hpp"

namespace specbisect {

// Dense complex matrix, row-major, entries at the working precision of a field whose
// real type is R. The `hermitian` flag promises entries[i][j] == conj(entries[j][i])
// bit for bit.
template <class R>
struct Matrix {
  using real = R;
  using scalar = fp::Cplx<R>;

  std::size_t rows = 0;
  std::size_t cols = 0;
  bool hermitian = false;
  std::vector<scalar> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

  scalar& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const scalar& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  bool square() const { return rows == cols; }
};

using SoftMatrix = Matrix<fp::SoftFloat>;

template <class F>
Matrix<typename F::real> identity(const F& f, std::size_t n) {
  Matrix<typename F::real> m(n, n);
  auto one = f.from_int(1);
  for (std::size_t i = 0; i < n; ++i) m(i, i).re = one;
  m.hermitian = true;
  return m;
}

template <class F>
Matrix<typename F::real> zeros(const F&, std::size_t r, std::size_t c) {
  return Matrix<typename F::real>(r, c);
}

// Conjugate transpose (exact).
template <class R>
Matrix<R> adjoint(const Matrix<R>& a) {
  Matrix<R> r(a.cols, a.rows);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) r(j, i) = fp::cconj(a(i, j));
  r.hermitian = a.hermitian;
  return r;
}

// Columns [c0, c0 + count).
template <class R>
Matrix<R> columns(const Matrix<R>& a, std::size_t c0, std::size_t count) {
  if (c0 + count > a.cols) throw DimensionError("column range out of bounds");
  Matrix<R> r(a.rows, count);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < count; ++j) r(i, j) = a(i, c0 + j);
  return r;
}

// Bit-level conjugate symmetry with exactly real diagonal.
template <class R>
bool is_exactly_hermitian(const Matrix<R>& a) {
  if (!a.square()) return false;
  for (std::size_t i = 0; i < a.rows; ++i) {
    if (!(a(i, i).im == R{})) return false;
    for (std::size_t j = i + 1; j < a.cols; ++j)
      if (!(a(i, j) == fp::cconj(a(j, i)))) return false;
  }
  return true;
}

// Copies the upper triangle onto the lower one (conjugated) and zeroes the imaginary part
// of the diagonal, then sets the hermitian flag.
template <class R>
void mirror_upper(Matrix<R>& a) {
  if (!a.square()) throw DimensionError("mirror_upper needs a square matrix");
  for (std::size_t i = 0; i < a.rows; ++i) {
    a(i, i).im = R{};
    for (std::size_t j = i + 1; j < a.cols; ++j) a(j, i) = fp::cconj(a(i, j));
  }
  a.hermitian = true;
}

// Entry-wise conversions between a field's representation and the exact interchange form.
template <class F>
SoftMatrix to_soft(const F& f, const Matrix<typename F::real>& a) {
  SoftMatrix r(a.rows, a.cols);
  r.hermitian = a.hermitian;
  for (std::size_t k = 0; k < a.data.size(); ++k)
    r.data[k] = {f.to_soft(a.data[k].re), f.to_soft(a.data[k].im)};
  return r;
}

// Rounds every entry to the field's precision. The hermitian flag survives because
// rounding commutes with conjugation.
template <class F>
Matrix<typename F::real> from_soft(const F& f, const SoftMatrix& a) {
  Matrix<typename F::real> r(a.rows, a.cols);
  r.hermitian = a.hermitian;
  for (std::size_t k = 0; k < a.data.size(); ++k)
    r.data[k] = {f.from_soft(a.data[k].re), f.from_soft(a.data[k].im)};
  return r;
}

template <class F>
std::vector<std::complex<double>> to_complex_double(const F& f,
                                                    const Matrix<typename F::real>& a) {
  std::vector<std::complex<double>> r(a.data.size());
  for (std::size_t k = 0; k < a.data.size(); ++k) r[k] = fp::to_std(f, a.data[k]);
  return r;
}

// Rounds a row-major complex<double> array into the field.
template <class F>
Matrix<typename F::real> from_complex_double(const F& f, std::size_t rows, std::size_t cols,
                                             const std::vector<std::complex<double>>& v,
                                             bool hermitian = false) {
  if (v.size() != rows * cols) throw DimensionError("from_complex_double: size mismatch");
  Matrix<typename F::real> r(rows, cols);
  for (std::size_t k = 0; k < v.size(); ++k)
    r.data[k] = {f.from_double(v[k].real()), f.from_double(v[k].imag())};
  if (hermitian) mirror_upper(r);
  return r;
}

inline std::string shape_string(std::size_t r, std::size_t c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

}  // namespace specbisect
