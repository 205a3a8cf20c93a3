#pragma once

#include <cstdint>

namespace specbisect {

// Error and cost constants of the four black-box primitives.
//
//   mu_mm(n) = max(mm_floor, mm_slope * n)
//   mu_qr(n) = qr_coef * n^1.5
//   c_normal
//
// The defaults are the frozen values used by every precision formula in the library;
// they were chosen above the worst ratios measured on the primitive test corpus.
// Flop counts are exact for this library's O(n^3) implementations, counting each rounded
// real operation (including exact halvings) as one flop.
struct ErrorModel {
  double mm_floor = 10.0;
  double mm_slope = 2.0;
  double qr_coef = 30.0;
  double c_normal = 2.0;

  double mu_mm(double n) const;
  double mu_qr(double n) const;
  double c_n() const { return c_normal; }

  // n x n times n x n complex schoolbook product: n^2 (n cmul + (n-1) cadd).
  static std::uint64_t t_mm(std::uint64_t n);
  // Householder QR of a generic n x n matrix with the full Q accumulated.
  static std::uint64_t t_qr(std::uint64_t n);
  static constexpr std::uint64_t t_unif = 1;
  static constexpr std::uint64_t t_normal = 2;

  static ErrorModel frozen() { return ErrorModel{}; }
};

}  // namespace specbisect
