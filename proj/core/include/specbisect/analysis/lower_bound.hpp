#pragma once

#include <cstddef>
#include <vector>

#include "specbisect/analysis/oracle.hpp"

namespace specbisect::analysis {

// Sylvester-Hadamard matrix of order n (a power of two), entries +-1.
CVec hadamard(std::size_t n);

// ceil(lg(1/eps) + 0.5 lg n - 2): fewer bits make a residual of eps ||A|| unattainable
// for some input.
int necessary_bits(double eps, std::size_t n);

struct LowerBoundReport {
  std::size_t n = 0;
  double u = 0;
  int mantissa_bits = 0;          // ceil(lg(1/u))
  int sign = 1;                   // B = sign * ones
  bool fl_identity = false;       // every entry of A + (u/2) B rounds to A
  double residual_a = 0;          // ||A - U D U*||
  double residual_perturbed = 0;  // ||A' - U D U*||
  double lower_bound = 0;         // u n / 4
  double eps = 0;
  double target = 0;              // sqrt(n) eps = eps ||A||
  double bits_required = 0;       // lg(1/eps) + 0.5 lg n - 2
  bool precision_sufficient = false;  // lg(1/u) >= bits_required
};

// Perturbs the Hadamard matrix A by (u/2) B with B = +-(all ones), the sign taken from the
// majority sign of the real parts of A - U D U*, and measures the decomposition against
// A' = A + (u/2) B, which rounds to A entrywise.
LowerBoundReport lower_bound_demo(std::size_t n, double u, const CVec& u_mat,
                                  const std::vector<double>& d, double eps);

}  // namespace specbisect::analysis
