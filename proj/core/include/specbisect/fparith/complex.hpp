#pragma once

#include <complex>

#include "specbisect/fparith/field.hpp"

namespace specbisect::fp {

// Complex scalar at the working precision: both components are field reals.
template <class R>
struct Cplx {
  R re{};
  R im{};

  friend bool operator==(const Cplx&, const Cplx&) = default;
};

// Complex arithmetic decomposed into individually rounded real operations.
// Multiplication is the schoolbook 4-mul/2-add form.

template <class F>
Cplx<typename F::real> cadd(const F& f, const Cplx<typename F::real>& a,
                            const Cplx<typename F::real>& b) {
  if (auto* c = f.counter()) ++c->complex_add;
  return {f.add(a.re, b.re), f.add(a.im, b.im)};
}

template <class F>
Cplx<typename F::real> csub(const F& f, const Cplx<typename F::real>& a,
                            const Cplx<typename F::real>& b) {
  if (auto* c = f.counter()) ++c->complex_add;
  return {f.sub(a.re, b.re), f.sub(a.im, b.im)};
}

template <class F>
Cplx<typename F::real> cmul(const F& f, const Cplx<typename F::real>& a,
                            const Cplx<typename F::real>& b) {
  if (auto* c = f.counter()) ++c->complex_mul;
  return {f.sub(f.mul(a.re, b.re), f.mul(a.im, b.im)), f.add(f.mul(a.re, b.im), f.mul(a.im, b.re))};
}

// conj(a) * b
template <class F>
Cplx<typename F::real> cmul_conj(const F& f, const Cplx<typename F::real>& a,
                                 const Cplx<typename F::real>& b) {
  if (auto* c = f.counter()) ++c->complex_mul;
  return {f.add(f.mul(a.re, b.re), f.mul(a.im, b.im)), f.sub(f.mul(a.re, b.im), f.mul(a.im, b.re))};
}

template <class F>
Cplx<typename F::real> cscale(const F& f, const Cplx<typename F::real>& a,
                              const typename F::real& s) {
  return {f.mul(a.re, s), f.mul(a.im, s)};
}

template <class F>
Cplx<typename F::real> chalf(const F& f, const Cplx<typename F::real>& a) {
  return {f.half(a.re), f.half(a.im)};
}

template <class R>
Cplx<R> cconj(const Cplx<R>& a) {
  Cplx<R> r = a;
  r.im = -r.im;
  return r;
}

template <class F>
Cplx<typename F::real> cneg(const F& f, const Cplx<typename F::real>& a) {
  return {f.neg(a.re), f.neg(a.im)};
}

// |a|^2 = re^2 + im^2 at working precision.
template <class F>
typename F::real cabs2(const F& f, const Cplx<typename F::real>& a) {
  return f.add(f.mul(a.re, a.re), f.mul(a.im, a.im));
}

template <class F>
std::complex<double> to_std(const F& f, const Cplx<typename F::real>& a) {
  return {f.to_double(a.re), f.to_double(a.im)};
}

}  // namespace specbisect::fp
