#include "specbisect/analysis/generators.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

namespace specbisect::analysis {

double gaussian_double(RngState& rng) {
  double u1 = (static_cast<double>(next_word(rng) >> 11) + 1) * 0x1p-53;
  double u2 = next_unit_double(rng);
  return std::sqrt(-2 * std::log(u1)) * std::cos(2 * std::numbers::pi * u2);
}

CVec random_unitary(std::size_t n, RngState& rng) {
  Eigen::MatrixXcd g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double re = gaussian_double(rng), im = gaussian_double(rng);
      g(i, j) = {re, im};
    }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  CVec out(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    std::complex<double> d = r(j, j);
    std::complex<double> ph = std::abs(d) > 0 ? d / std::abs(d) : 1.0;
    for (std::size_t i = 0; i < n; ++i) out[i * n + j] = q(i, j) * ph;
  }
  return out;
}

CVec hermitian_with_spectrum(const std::vector<double>& lambda, RngState& rng) {
  const std::size_t n = lambda.size();
  CVec u = random_unitary(n, rng);
  CVec a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      std::complex<double> s = 0;
      for (std::size_t k = 0; k < n; ++k) s += u[i * n + k] * lambda[k] * std::conj(u[j * n + k]);
      if (i == j) s.imag(0);
      a[i * n + j] = s;
      a[j * n + i] = std::conj(s);
    }
  return a;
}

CVec gue(std::size_t n, RngState& rng) {
  CVec g(n * n);
  for (auto& z : g) {
    double re = gaussian_double(rng), im = gaussian_double(rng);
    z = {re, im};
  }
  CVec a(n * n);
  const double scale = 1 / (2 * std::sqrt(static_cast<double>(n)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      std::complex<double> s = (g[i * n + j] + std::conj(g[j * n + i])) * scale;
      if (i == j) s.imag(0);
      a[i * n + j] = s;
      a[j * n + i] = std::conj(s);
    }
  return a;
}

std::vector<double> random_pm_spectrum(std::size_t n, double lo, double hi, RngState& rng) {
  std::vector<double> l(n);
  for (auto& x : l) {
    double mag = lo + (hi - lo) * next_unit_double(rng);
    x = (next_word(rng) & 1) ? mag : -mag;
  }
  return l;
}

}  // namespace specbisect::analysis
