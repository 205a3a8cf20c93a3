#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "specbisect/primitives/matrix.hpp"

namespace specbisect::analysis {

using CVec = std::vector<std::complex<double>>;  // row-major dense matrix in double

// Eigendecomposition computed by cyclic complex Jacobi in ~266-bit arithmetic, iterated
// until the off-diagonal Frobenius mass is below 1e-50 ||A||_F. Results are rounded to
// double on the way out; the two defects are measured before rounding.
struct OracleDecomposition {
  std::size_t n = 0;
  std::vector<double> eigenvalues;  // ascending
  CVec eigenvectors;                // column j belongs to eigenvalues[j]
  double ortho_defect = 0;          // ||V*V - I||_F
  double residual = 0;              // ||AV - V Lambda||_F / ||A||_F (0 for A = 0)
  int sweeps = 0;
};

OracleDecomposition oracle_eigh(const SoftMatrix& a);
OracleDecomposition oracle_eigh(const CVec& a, std::size_t n);

// sign(A) = V sign(Lambda) V*, assembled at oracle precision. A zero eigenvalue
// (|lambda| <= 1e-60 ||A||) raises DomainError.
CVec oracle_sign(const SoftMatrix& a);
CVec oracle_sign(const CVec& a, std::size_t n);

// Orthonormal basis (rows x r, row-major) of the dominant r-dimensional left singular
// subspace, from the oracle eigendecomposition of A A* formed at oracle precision.
// `gap_ratio` receives sigma_r / sigma_{r+1} (infinity when sigma_{r+1} = 0).
CVec oracle_left_singular_basis(const CVec& a, std::size_t rows, std::size_t cols,
                                std::size_t r, double* gap_ratio = nullptr);

// min_j |lambda_j - c|: the distance from c to the spectrum. For Hermitian A, c lies
// outside the w-pseudospectrum exactly when this exceeds w.
double oracle_pseudospectrum_gap(const std::vector<double>& eigenvalues, double c);

}  // namespace specbisect::analysis
