#include "specbisect/eigh/eigh.hpp"

#include <cmath>

namespace specbisect {

const char* to_string(NodeRecord::Kind k) {
  switch (k) {
    case NodeRecord::Kind::single: return "single";
    case NodeRecord::Kind::collapsed: return "collapsed";
    case NodeRecord::Kind::pass_plus: return "pass_plus";
    case NodeRecord::Kind::pass_minus: return "pass_minus";
    case NodeRecord::Kind::split: return "split";
  }
  return "?";
}

int eigh_precision(double eps, double theta, std::size_t n_int, const ErrorModel& em) {
  if (!(eps > 0 && eps < 1) || !(theta > 0 && theta < 1) || n_int == 0)
    throw DomainError("eigh_precision: parameters out of range");
  const double n = static_cast<double>(n_int);
  const double lg_inv_eps = std::log2(1 / eps);
  const double big = std::max({std::pow(n, 1.5) * em.mu_qr(n), std::pow(n, 2.0) * em.c_n(),
                               std::pow(n, 4.5) * em.mu_mm(n)});
  // lg lg(1/eps) is negative for eps > 1/2; clamp the inner logarithm at 1.
  const double lglg_eps = std::log2(std::max(lg_inv_eps, 1.0));
  const double bits = lg_inv_eps + std::log2(big) + 2 * lglg_eps + 1.5 * std::log2(1 / theta) +
                      std::log2(std::log2(std::max(n * lg_inv_eps / theta, 2.0))) + 23;
  return static_cast<int>(std::ceil(bits));
}

int root_ell(double eps) {
  if (!(eps > 0 && eps < 1)) throw DomainError("root_ell: eps must lie in (0, 1)");
  return static_cast<int>(std::ceil(std::log2(1 / eps))) + 5;
}

double node_delta(double rho, double eta, std::size_t n_int) {
  const double n = static_cast<double>(n_int);
  return 0.75 * (std::sqrt(rho) * eta / n) * (1.0 / 3) /
         (12 * std::sqrt(2.0) + 6 * std::sqrt(std::log(4 / rho) / n));
}

bool in_theorem_regime(double eps, double theta, std::size_t n_int) {
  const double n = static_cast<double>(n_int);
  return eps < 0x1p-15 && theta < 1 && theta > 16 * n * std::exp(-7.4 * n);
}

}  // namespace specbisect
