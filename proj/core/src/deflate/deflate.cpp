#include "specbisect/deflate/deflate.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "specbisect/analysis/oracle.hpp"

namespace specbisect {

DeflateParams DeflateParams::convenient(std::size_t n, std::size_t r, double rho, double eta,
                                        double sigma_1, double sigma_r) {
  if (!(rho > 0 && rho < 1)) throw DomainError("deflate: rho must lie in (0, 1)");
  if (!(eta > 0 && eta <= 1.2)) throw DomainError("deflate: eta must lie in (0, 6/5]");
  if (n == 0 || r == 0) throw DomainError("deflate: n and r must be positive");
  DeflateParams p;
  p.n = n;
  p.r = r;
  p.rho = rho;
  p.eta = eta;
  const double dn = static_cast<double>(n), dr = static_cast<double>(r);
  p.x = std::sqrt(rho / dr);
  p.t = std::sqrt(std::log(4 / rho) / dn);
  p.beta = std::sqrt(rho) * eta / std::sqrt(dn * dr) * (sigma_r / (sigma_1 + 2)) /
           (12 * std::sqrt(2.0) + 6 * std::sqrt(std::log(4 / rho) / dn));
  return p;
}

DeflateParams DeflateParams::raw(std::size_t n, std::size_t r, double beta, double x, double t) {
  DeflateParams p;
  p.n = n;
  p.r = r;
  p.beta = beta;
  p.x = x;
  p.t = t;
  return p;
}

double DeflateParams::failure_probability() const {
  const double dn = static_cast<double>(n), dr = static_cast<double>(r);
  return 2 * std::exp(-dn * t * t) + dr / 2 * x * x;
}

double DeflateParams::ensure_bound(double sigma_1, double sigma_r) const {
  const double dn = static_cast<double>(n);
  return 6 * ((sigma_1 + 2) / sigma_r) * ((2 * std::sqrt(2.0) + t) * std::sqrt(dn) / x) * beta;
}

double DeflateParams::require_limit(double sigma_1, double sigma_r) const {
  const double dn = static_cast<double>(n);
  return 0.2 * (sigma_r / (sigma_1 + 2)) * x / ((2 * std::sqrt(2.0) + t) * std::sqrt(dn));
}

bool DeflateParams::require_holds(double sigma_1, double sigma_r) const {
  return require_diagnostic(sigma_1, sigma_r).empty();
}

std::string DeflateParams::require_diagnostic(double sigma_1, double sigma_r) const {
  double lim = require_limit(sigma_1, sigma_r);
  std::ostringstream os;
  if (!(beta > 0)) os << "beta must be positive; ";
  if (beta > lim) os << "beta = " << beta << " exceeds the admissible " << lim << "; ";
  if (lim > 1) os << "admissible bound " << lim << " exceeds 1; ";
  return os.str();
}

double deflate_precision(double beta, std::size_t n, const ErrorModel& em) {
  if (!(beta > 0)) throw DomainError("deflate_precision: beta must be positive");
  const double dn = static_cast<double>(n);
  return beta / (4 * em.mu_qr(dn) + 2 * std::sqrt(dn) * em.c_n() + 2 * em.mu_mm(dn));
}

double residual_subspace_distance(const std::vector<std::complex<double>>& u_tilde,
                                  const std::vector<std::complex<double>>& a, std::size_t n,
                                  std::size_t r) {
  if (u_tilde.size() != n * r || a.size() != n * n)
    throw DimensionError("residual_subspace_distance: shape mismatch");
  double ratio = 0;
  analysis::CVec basis = analysis::oracle_left_singular_basis(a, n, n, r, &ratio);
  if (!(ratio >= 1e6))
    throw DomainError("residual_subspace_distance: rank r is not numerically well defined");
  Eigen::MatrixXcd u(n, r), ut(n, r);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      u(i, j) = basis[i * r + j];
      ut(i, j) = u_tilde[i * r + j];
    }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(u.adjoint() * ut, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::MatrixXcd w = svd.matrixU() * svd.matrixV().adjoint();
  Eigen::JacobiSVD<Eigen::MatrixXcd> diff(ut - u * w);
  return diff.singularValues()(0);
}

}  // namespace specbisect
