#include "specbisect/analysis/certificates.hpp"

#include <Eigen/Dense>

#include "specbisect/errors.hpp"

namespace specbisect::analysis {

namespace {

Eigen::MatrixXcd to_eigen(const CVec& a, std::size_t rows, std::size_t cols) {
  if (a.size() != rows * cols) throw DimensionError("certificate: size mismatch");
  Eigen::MatrixXcd m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = a[i * cols + j];
  return m;
}

}  // namespace

std::vector<double> singular_values(const CVec& a, std::size_t rows, std::size_t cols) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(a, rows, cols));
  auto s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

FastEigh fast_eigh(const CVec& a, std::size_t n) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(a, n, n));
  FastEigh r;
  r.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
  r.eigenvectors.resize(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r.eigenvectors[i * n + j] = es.eigenvectors()(i, j);
  return r;
}

DecompositionCertificate certify(const CVec& a, const CVec& u, const std::vector<double>& d,
                                 std::size_t n) {
  if (d.size() != n) throw DimensionError("certificate: diagonal length mismatch");
  Eigen::MatrixXcd am = to_eigen(a, n, n), um = to_eigen(u, n, n);
  Eigen::VectorXd dv(n);
  for (std::size_t i = 0; i < n; ++i) dv(i) = d[i];
  Eigen::MatrixXcd r = um * dv.asDiagonal() * um.adjoint() - am;
  DecompositionCertificate c;
  if (n == 0) return c;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> er(r, Eigen::EigenvaluesOnly);
  c.residual = er.eigenvalues().cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ea(am, Eigen::EigenvaluesOnly);
  c.a_norm = ea.eigenvalues().cwiseAbs().maxCoeff();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(um);
  c.sv_max = svd.singularValues()(0);
  c.sv_min = svd.singularValues()(n - 1);
  return c;
}

}  // namespace specbisect::analysis
