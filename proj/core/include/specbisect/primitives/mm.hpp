#pragma once

#include "specbisect/errors.hpp"
#include "specbisect/fparith/complex.hpp"
#include "specbisect/primitives/matrix.hpp"

namespace specbisect {

enum class MmOutput {
  general,
  // The product is known to be Hermitian in exact arithmetic (Gram-type products, products
  // of commuting Hermitian factors). Only the upper triangle is computed; the lower one is
  // its conjugate mirror and the diagonal is made exactly real.
  hermitian,
};

// Schoolbook product. Entry (i, j) is accumulated left to right over k, each complex
// multiply and add rounded componentwise.
template <class F>
Matrix<typename F::real> mm(const F& f, const Matrix<typename F::real>& a,
                            const Matrix<typename F::real>& b,
                            MmOutput mode = MmOutput::general) {
  using R = typename F::real;
  if (a.cols != b.rows)
    throw DimensionError("mm: inner dimensions differ (" + shape_string(a.rows, a.cols) +
                         " times " + shape_string(b.rows, b.cols) + ")");
  if (mode == MmOutput::hermitian && a.rows != b.cols)
    throw DimensionError("mm: hermitian output needs a square product");
  const std::size_t n = a.rows, m = b.cols, inner = a.cols;
  Matrix<R> c(n, m);
  if (inner == 0) {
    if (mode == MmOutput::hermitian) c.hermitian = true;
    return c;
  }
  // Column-contiguous copy of b.
  std::vector<fp::Cplx<R>> bt(m * inner);
  for (std::size_t k = 0; k < inner; ++k)
    for (std::size_t j = 0; j < m; ++j) bt[j * inner + k] = b(k, j);
  for (std::size_t i = 0; i < n; ++i) {
    const fp::Cplx<R>* ai = &a.data[i * inner];
    for (std::size_t j = mode == MmOutput::hermitian ? i : 0; j < m; ++j) {
      const fp::Cplx<R>* bj = &bt[j * inner];
      fp::Cplx<R> acc = fp::cmul(f, ai[0], bj[0]);
      for (std::size_t k = 1; k < inner; ++k) acc = fp::cadd(f, acc, fp::cmul(f, ai[k], bj[k]));
      c(i, j) = acc;
    }
  }
  if (mode == MmOutput::hermitian) mirror_upper(c);
  return c;
}

// a* b without materialising a*.
template <class F>
Matrix<typename F::real> mm_adjoint_left(const F& f, const Matrix<typename F::real>& a,
                                         const Matrix<typename F::real>& b,
                                         MmOutput mode = MmOutput::general) {
  return mm(f, adjoint(a), b, mode);
}

// Matrix-vector product with the same summation order as mm.
template <class F>
std::vector<fp::Cplx<typename F::real>> matvec(const F& f, const Matrix<typename F::real>& a,
                                               const std::vector<fp::Cplx<typename F::real>>& x) {
  if (a.cols != x.size()) throw DimensionError("matvec: dimension mismatch");
  std::vector<fp::Cplx<typename F::real>> y(a.rows);
  if (a.cols == 0) return y;
  for (std::size_t i = 0; i < a.rows; ++i) {
    auto acc = fp::cmul(f, a(i, 0), x[0]);
    for (std::size_t k = 1; k < a.cols; ++k) acc = fp::cadd(f, acc, fp::cmul(f, a(i, k), x[k]));
    y[i] = acc;
  }
  return y;
}

}  // namespace specbisect
