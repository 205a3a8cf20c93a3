#pragma once

#include <vector>

#include "specbisect/analysis/oracle.hpp"

namespace specbisect::analysis {

// Double-precision checks (Eigen) used where the oracle is too slow.

std::vector<double> singular_values(const CVec& a, std::size_t rows, std::size_t cols);

struct FastEigh {
  std::vector<double> eigenvalues;  // ascending
  CVec eigenvectors;
};
FastEigh fast_eigh(const CVec& a, std::size_t n);

struct DecompositionCertificate {
  double residual = 0;  // ||U D U* - A||
  double a_norm = 0;    // ||A||
  double sv_min = 0;    // extreme singular values of U
  double sv_max = 0;
};

// U is n x n row-major, D the diagonal; norms are spectral.
DecompositionCertificate certify(const CVec& a, const CVec& u, const std::vector<double>& d,
                                 std::size_t n);

}  // namespace specbisect::analysis
