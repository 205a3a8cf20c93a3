#include "specbisect/analysis/lower_bound.hpp"

#include <cmath>

#include "specbisect/analysis/certificates.hpp"
#include "specbisect/errors.hpp"
#include "specbisect/fparith/soft_float.hpp"

namespace specbisect::analysis {

CVec hadamard(std::size_t n) {
  if (n == 0 || (n & (n - 1)) != 0) throw DomainError("hadamard: order must be a power of two");
  CVec h(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      h[i * n + j] = (__builtin_popcountll(i & j) % 2) ? -1.0 : 1.0;
  return h;
}

int necessary_bits(double eps, std::size_t n) {
  if (!(eps > 0 && eps < 1) || n == 0) throw DomainError("necessary_bits: parameters out of range");
  return static_cast<int>(std::ceil(std::log2(1 / eps) + 0.5 * std::log2(double(n)) - 2));
}

namespace {

double spectral_of(const CVec& m, std::size_t n) {
  auto sv = singular_values(m, n, n);
  return sv.empty() ? 0.0 : sv.front();
}

}  // namespace

LowerBoundReport lower_bound_demo(std::size_t n, double u, const CVec& u_mat,
                                  const std::vector<double>& d, double eps) {
  if (!(u > 0 && u < 1)) throw DomainError("lower_bound_demo: u must lie in (0, 1)");
  if (u_mat.size() != n * n || d.size() != n) throw DimensionError("lower_bound_demo: size mismatch");
  CVec a = hadamard(n);
  LowerBoundReport rep;
  rep.n = n;
  rep.u = u;
  rep.eps = eps;
  rep.mantissa_bits = static_cast<int>(std::ceil(std::log2(1 / u)));

  CVec resid(n * n);
  std::size_t positive = 0, negative = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::complex<double> s = 0;
      for (std::size_t k = 0; k < n; ++k) s += u_mat[i * n + k] * d[k] * std::conj(u_mat[j * n + k]);
      resid[i * n + j] = a[i * n + j] - s;
      if (resid[i * n + j].real() > 0) ++positive;
      if (resid[i * n + j].real() < 0) ++negative;
    }
  rep.sign = positive > negative ? 1 : -1;

  fp::PrecisionConfig cfg(rep.mantissa_bits);
  rep.fl_identity = true;
  CVec perturbed(n * n);
  for (std::size_t k = 0; k < n * n; ++k) {
    double shifted = a[k].real() + rep.sign * u / 2;  // exact in double for u >= 2^-52
    fp::SoftFloat r = fp::fl(fp::exact_from_double(shifted), cfg);
    if (fp::to_double(r) != a[k].real()) rep.fl_identity = false;
    perturbed[k] = resid[k] + rep.sign * u / 2;
  }
  rep.residual_a = spectral_of(resid, n);
  rep.residual_perturbed = spectral_of(perturbed, n);
  rep.lower_bound = u * static_cast<double>(n) / 4;
  rep.target = std::sqrt(static_cast<double>(n)) * eps;
  rep.bits_required = std::log2(1 / eps) + 0.5 * std::log2(static_cast<double>(n)) - 2;
  rep.precision_sufficient = std::log2(1 / u) >= rep.bits_required;
  return rep;
}

}  // namespace specbisect::analysis
