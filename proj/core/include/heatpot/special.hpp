#pragma once

#include <functional>

namespace heatpot::special {

/// Standard normal cdf N(x), evaluated through erfc for tail accuracy.
double std_normal_cdf(double x);

/// Standard normal density.
double std_normal_pdf(double x);

/// Inverse of std_normal_cdf on (0, 1): rational seed polished by one
/// Newton step.
double std_normal_cdf_inv(double p);

/// N^{-1}(1 - q) for small q, avoiding the 1 - q cancellation.
double std_normal_cdf_inv_upper(double q);

/// Tail expansion of N^{-1}(y) as y -> 1:
///   eta = -ln(2*sqrt(pi)*(1-y)),
///   f(eta) = eta - ln(eta)/2 + (ln(eta)-2)/(4 eta)
///          + ((ln eta)^2 - 6 ln(eta) + 14)/(16 eta^2),
///   N^{-1}(y) ~ sqrt(2 f(eta)).
/// Requires eta > 1; throws std::domain_error otherwise.
double tail_inverse_asymptotic(double p);

/// Same expansion written in terms of q = 1 - p.
double tail_inverse_asymptotic_upper(double q);

/// Bivariate normal cdf P(X <= x, Y <= y) with correlation rho.
/// Quadrature over the correlation parameter (Plackett identity),
/// absolute accuracy ~1e-12 away from |rho| = 1.
double bivariate_normal_cdf(double x, double y, double rho);

/// Dawson's integral D(x) = exp(-x^2) * int_0^x exp(y^2) dy.
double dawson(double x);

/// Scaled complementary error function exp(x^2) erfc(x), overflow-free
/// for large positive x.
double erfcx(double x);

/// Heat kernel H(t, x) = exp(-x^2/(2t)) / sqrt(2*pi*t); requires t > 0.
double heat_kernel(double t, double x);

/// Variance map of the standard OU process, (e^{2t} - 1)/2; requires t >= 0.
double ou_variance(double t);

/// Adaptive Simpson quadrature to absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol);

}  // namespace heatpot::special
