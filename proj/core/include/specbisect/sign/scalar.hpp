#pragma once

#include "specbisect/primitives/error_model.hpp"

namespace specbisect {

// g(x) = (3x - x^3) / 2, the Newton-Schulz map.
double g_scalar(double x);

// m(x) = |1 - x^2|.
double potential_m(double x);

// N_SCALAR(x0, eps) = 2.5 + 2 lg(min(|x0|, 0.5)^-1) + lg lg(1/eps).
double n_scalar(double x0, double eps);

// mu_g(n, a) = (7 + (6 + mu_MM(n)) a^2) a / 2.
double mu_g(double n, double a, const ErrorModel& em = ErrorModel::frozen());

// N_SIGN = N_SCALAR(1/(|A^-1| b), eps/(8n)).
double n_sign(double eps, double b, double a_inv_norm, double n);

// u_SIGN = (1/(|A^-1| b)) eps / (4 max(N n mu_g(n, 1.1), n^2)).
double sign_precision(double eps, double b, double a_inv_norm, double n,
                      const ErrorModel& em = ErrorModel::frozen());

}  // namespace specbisect
