#include "specbisect/primitives/error_model.hpp"

#include <algorithm>
#include <cmath>

namespace specbisect {

double ErrorModel::mu_mm(double n) const { return std::max(mm_floor, mm_slope * n); }

double ErrorModel::mu_qr(double n) const { return qr_coef * std::pow(n, 1.5); }

std::uint64_t ErrorModel::t_mm(std::uint64_t n) { return 8 * n * n * n - 2 * n * n; }

// Generic input: every column but the last needs a reflector.
std::uint64_t ErrorModel::t_qr(std::uint64_t n) {
  return (32 * n * n * n + 63 * n * n + 25 * n - 84) / 3;
}

}  // namespace specbisect
