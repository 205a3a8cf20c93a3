#include "specbisect/sign/scalar.hpp"

#include <algorithm>
#include <cmath>

#include "specbisect/errors.hpp"

namespace specbisect {

double g_scalar(double x) { return (3 * x - x * x * x) / 2; }

double potential_m(double x) { return std::fabs(1 - x * x); }

double n_scalar(double x0, double eps) {
  if (x0 == 0) throw DomainError("n_scalar: x0 must be nonzero");
  if (!(eps > 0 && eps < 1)) throw DomainError("n_scalar: eps must lie in (0, 1)");
  return 2.5 + 2 * std::log2(1 / std::min(std::fabs(x0), 0.5)) + std::log2(std::log2(1 / eps));
}

double mu_g(double n, double a, const ErrorModel& em) {
  return 0.5 * (7 + (6 + em.mu_mm(n)) * a * a) * a;
}

double n_sign(double eps, double b, double a_inv_norm, double n) {
  if (!(b > 0 && a_inv_norm > 0 && n >= 1)) throw DomainError("n_sign: positive arguments required");
  return n_scalar(1 / (a_inv_norm * b), eps / (8 * n));
}

double sign_precision(double eps, double b, double a_inv_norm, double n, const ErrorModel& em) {
  double big_n = n_sign(eps, b, a_inv_norm, n);
  double denom = 4 * std::max(big_n * n * mu_g(n, 1.1, em), n * n);
  return eps / (a_inv_norm * b * denom);
}

}  // namespace specbisect
