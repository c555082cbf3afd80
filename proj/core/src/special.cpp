#include "heatpot/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace heatpot::special {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;
constexpr double kTwoPi = 6.2831853071795864769;

// Acklam's rational approximation for the inverse normal cdf (seed only,
// ~1e-9 relative; one Newton step below brings it to machine level).
double inverse_cdf_seed(double p) {
    static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                -2.759285104469687e+02, 1.383577518672690e+02,
                                -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                -1.556989798598866e+02, 6.680131188771972e+01,
                                -1.328068155288572e+01};
    static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                -2.400758277161838e+00, -2.549732539343734e+00,
                                4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425, phigh = 1.0 - plow;
    if (p < plow) {
        double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > phigh) {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    double q = p - 0.5, r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

double adaptive_simpson_impl(const std::function<double(double)>& f, double a, double b,
                             double fa, double fm, double fb, double whole, double tol,
                             int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson_impl(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_impl(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

// Rybicki's sampling expansion of Dawson's integral: with spacing h the
// truncation error is ~exp(-(pi/(2h))^2); h = 0.2 keeps it far below 1e-12.
double dawson_rybicki(double x) {
    const double h = 0.2;
    const int n0 = 2 * static_cast<int>(std::floor(0.5 * x / h)) + 1;  // odd center
    const int width = 36;                                              // |x - n h| <= 7.2
    double sum = 0.0;
    for (int n = n0 - width; n <= n0 + width; n += 2) {
        double d = x - n * h;
        sum += std::exp(-d * d) / n;
    }
    return sum / kSqrtPi;
}

}  // namespace

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

double std_normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double std_normal_cdf_inv(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("std_normal_cdf_inv: p must lie in (0, 1)");
    double x = inverse_cdf_seed(p);
    // One Newton step on N(x) - p = 0. The residual is formed in whichever
    // tail is small so it keeps relative precision there.
    // Both branches evaluate to N(x) - p.
    double err = (p <= 0.5) ? (0.5 * std::erfc(-x / kSqrt2) - p)
                            : ((1.0 - p) - 0.5 * std::erfc(x / kSqrt2));
    x -= err / std_normal_pdf(x);
    return x;
}

double std_normal_cdf_inv_upper(double q) {
    if (!(q > 0.0 && q < 1.0))
        throw std::domain_error("std_normal_cdf_inv_upper: q must lie in (0, 1)");
    return -std_normal_cdf_inv(q);
}

double tail_inverse_asymptotic_upper(double q) {
    if (!(q > 0.0))
        throw std::domain_error("tail_inverse_asymptotic: need p < 1");
    double eta = -std::log(2.0 * kSqrtPi * q);
    if (!(eta > 1.0))
        throw std::domain_error("tail_inverse_asymptotic: expansion needs eta > 1");
    double ln_eta = std::log(eta);
    double f = eta - 0.5 * ln_eta + (ln_eta - 2.0) / (4.0 * eta) +
               (ln_eta * ln_eta - 6.0 * ln_eta + 14.0) / (16.0 * eta * eta);
    return std::sqrt(2.0 * f);
}

double tail_inverse_asymptotic(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("tail_inverse_asymptotic: p must lie in (0, 1)");
    return tail_inverse_asymptotic_upper(1.0 - p);
}

double bivariate_normal_cdf(double x, double y, double rho) {
    if (!(rho >= -1.0 && rho <= 1.0))
        throw std::domain_error("bivariate_normal_cdf: |rho| must be <= 1");
    if (std::isnan(x) || std::isnan(y))
        return std::numeric_limits<double>::quiet_NaN();
    // Degenerate correlations and effectively infinite arguments.
    if (rho >= 1.0)
        return std_normal_cdf(std::min(x, y));
    if (rho <= -1.0)
        return std::max(0.0, std_normal_cdf(x) + std_normal_cdf(y) - 1.0);
    const double cut = 40.0;
    if (x <= -cut || y <= -cut)
        return 0.0;
    if (x >= cut)
        return std_normal_cdf(y);
    if (y >= cut)
        return std_normal_cdf(x);
    // Plackett: d/dr BVN(x,y;r) is the bivariate normal density at (x,y),
    // so BVN(x,y;rho) = N(x)N(y) + int_0^rho phi2(x,y;r) dr.
    auto density = [x, y](double r) {
        double omr2 = 1.0 - r * r;
        return std::exp(-0.5 * (x * x - 2.0 * r * x * y + y * y) / omr2) /
               (kTwoPi * std::sqrt(omr2));
    };
    double integral = (rho == 0.0) ? 0.0 : adaptive_simpson(density, 0.0, rho, 1e-13);
    return std_normal_cdf(x) * std_normal_cdf(y) + integral;
}

double dawson(double x) {
    double ax = std::abs(x);
    if (ax < 0.1) {
        // Series: x - 2x^3/3 + 4x^5/15 - 8x^7/105 + ...
        double x2 = x * x;
        return x * (1.0 + x2 * (-2.0 / 3.0 + x2 * (4.0 / 15.0 + x2 * (-8.0 / 105.0 +
                    x2 * (16.0 / 945.0 - x2 * 32.0 / 10395.0)))));
    }
    if (ax > 50.0) {
        // Asymptotic 1/(2x) * (1 + 1/(2x^2) + 3/(4x^4) + 15/(8x^6) + ...)
        double ix2 = 1.0 / (x * x);
        return 0.5 / x *
               (1.0 + 0.5 * ix2 * (1.0 + 1.5 * ix2 * (1.0 + 2.5 * ix2 * (1.0 + 3.5 * ix2))));
    }
    double d = dawson_rybicki(ax);
    return x < 0.0 ? -d : d;
}

double erfcx(double x) {
    if (x < 0.0)
        return 2.0 * std::exp(x * x) - erfcx(-x);
    if (x > 26.0) {
        // erfcx(x) ~ 1/(x sqrt(pi)) * (1 - 1/(2x^2) + 3/(4x^4) - ...)
        double ix2 = 1.0 / (x * x);
        return (1.0 - 0.5 * ix2 * (1.0 - 1.5 * ix2 * (1.0 - 2.5 * ix2))) / (x * kSqrtPi);
    }
    return std::exp(x * x) * std::erfc(x);
}

double heat_kernel(double t, double x) {
    if (!(t > 0.0))
        throw std::domain_error("heat_kernel: t must be positive");
    return std::exp(-0.5 * x * x / t) / std::sqrt(kTwoPi * t);
}

double ou_variance(double t) {
    if (!(t >= 0.0))
        throw std::domain_error("ou_variance: t must be nonnegative");
    return 0.5 * std::expm1(2.0 * t);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol) {
    if (a == b)
        return 0.0;
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson_impl(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace heatpot::special
