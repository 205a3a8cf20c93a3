#include "specbisect/primitives/norms.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace specbisect {

double spectral_norm(const std::vector<std::complex<double>>& a, std::size_t rows,
                     std::size_t cols) {
  if (rows == 0 || cols == 0) return 0;
  Eigen::MatrixXcd m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = a[i * cols + j];
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues()(0);
}

double hermitian_spectral_norm(const std::vector<std::complex<double>>& a, std::size_t n) {
  if (n == 0) return 0;
  Eigen::MatrixXcd m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = a[i * n + j];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace specbisect
