#pragma once

#include <vector>

#include "specbisect/analysis/oracle.hpp"
#include "specbisect/primitives/rng.hpp"

namespace specbisect::analysis {

// Standard normal double by Box-Muller on the counter stream (test data only).
double gaussian_double(RngState& rng);

// Unitary from the QR factor of a complex Gaussian matrix, columns phase-normalized.
CVec random_unitary(std::size_t n, RngState& rng);

// U diag(lambda) U* for a random unitary U, made exactly Hermitian in double.
CVec hermitian_with_spectrum(const std::vector<double>& lambda, RngState& rng);

// (G + G*) / (2 sqrt(n)) with G complex Gaussian, E|g_ij|^2 = 2; spectrum fills about [-2, 2].
CVec gue(std::size_t n, RngState& rng);

// n values with |lambda| uniform in [lo, hi] and independent random signs.
std::vector<double> random_pm_spectrum(std::size_t n, double lo, double hi, RngState& rng);

}  // namespace specbisect::analysis
