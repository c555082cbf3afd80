#include "heatpot/volterra.hpp"

#include "heatpot/special.hpp"

#include <cmath>
#include <string>

namespace heatpot {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kSingularDenom = 1e-14;
}  // namespace

SingularStepError::SingularStepError(std::size_t step, double denom)
    : std::runtime_error("solve_linear: singular step k=" + std::to_string(step) +
                         " (denominator " + std::to_string(denom) + ")"),
      step_(step) {}

SampledSeries solve_linear(const WeaklySingularSystem& system, const TimeGrid& grid) {
    const std::size_t n = grid.size();
    QuadratureWeights pi(grid);
    std::vector<double> nu(n);
    std::vector<double> krow(n);  // kernel values against the current row

    nu[0] = system.rhs(grid[0]);
    for (std::size_t k = 1; k < n; ++k) {
        const double tk = grid[k];
        for (std::size_t l = 0; l <= k; ++l)
            krow[l] = system.kernel(tk, grid[l]);
        double sum = 0.0;
        for (std::size_t l = 1; l < k; ++l)
            sum += (krow[l] * nu[l] + krow[l - 1] * nu[l - 1]) * pi(k, l);
        const double sqrt_dk = std::sqrt(grid.delta(k, k - 1));
        sum += krow[k - 1] * nu[k - 1] * sqrt_dk;  // Pi_{k,k} = sqrt(Delta_{k,k-1})
        const double denom = 1.0 + krow[k] * sqrt_dk;
        if (std::abs(denom) <= kSingularDenom)
            throw SingularStepError(k, denom);
        nu[k] = (system.rhs(tk) - sum) / denom;
    }
    return SampledSeries(std::make_shared<TimeGrid>(grid), std::move(nu));
}

std::vector<double> discrete_residual(const WeaklySingularSystem& system,
                                      const SampledSeries& nu) {
    const TimeGrid& grid = nu.grid();
    const std::size_t n = grid.size();
    QuadratureWeights pi(grid);
    std::vector<double> res(n);
    res[0] = nu[0] - system.rhs(grid[0]);
    for (std::size_t k = 1; k < n; ++k) {
        double sum = nu[k];
        for (std::size_t l = 1; l <= k; ++l)
            sum += (system.kernel(grid[k], grid[l]) * nu[l] +
                    system.kernel(grid[k], grid[l - 1]) * nu[l - 1]) *
                   pi(k, l);
        res[k] = sum - system.rhs(grid[k]);
    }
    return res;
}

StepwiseSolution solve_stepwise_nonlinear(const TimeGrid& grid, const StepResidual& residual,
                                          double nu0, double mu0, const NewtonConfig& config) {
    const std::size_t n = grid.size();
    std::vector<double> nu(n, 0.0), mu(n, 0.0);
    nu[0] = nu0;
    mu[0] = mu0;

    SolveReport report;
    report.iterations.assign(n, 0);
    report.residuals.assign(n, 0.0);

    for (std::size_t k = 1; k < n; ++k) {
        std::span<const double> nu_prev(nu.data(), k);
        std::span<const double> mu_prev(mu.data(), k);
        double m = mu[k - 1];
        double nu_k = 0.0;
        double r = residual(k, m, nu_prev, mu_prev, nu_k);
        int iter = 0;
        bool ok = std::isfinite(r) && std::abs(r) <= config.tolerance;
        while (!ok && iter < config.max_iterations && std::isfinite(r)) {
            ++iter;
            double h = config.fd_step_rel * std::max(std::abs(m), 1.0);
            double nu_tmp = 0.0;
            double rp = residual(k, m + h, nu_prev, mu_prev, nu_tmp);
            double slope = (rp - r) / h;
            if (!std::isfinite(slope) || slope == 0.0)
                break;
            double step = -r / slope;
            // Halve the step until the residual decreases (stiff near blow-up).
            double m_new = m + step, r_new = r, nu_new = nu_k;
            int halvings = 0;
            while (halvings <= config.max_halvings) {
                r_new = residual(k, m_new, nu_prev, mu_prev, nu_new);
                if (std::isfinite(r_new) && std::abs(r_new) < std::abs(r))
                    break;
                step *= 0.5;
                m_new = m + step;
                ++halvings;
            }
            if (halvings > config.max_halvings)
                break;
            m = m_new;
            r = r_new;
            nu_k = nu_new;
            ok = std::abs(r) <= config.tolerance;
        }
        report.iterations[k] = iter;
        report.residuals[k] = r;
        if (!ok) {
            report.converged = false;
            report.failure_step = k;
            report.failure_time = grid[k];
            report.failure_residual = r;
            nu.resize(k);
            mu.resize(k);
            report.iterations.resize(k);
            report.residuals.resize(k);
            // Pad to full length with the last accepted values so callers can
            // still build series; flags mark where the march stopped.
            nu.resize(n, nu.empty() ? 0.0 : nu.back());
            mu.resize(n, mu.empty() ? 0.0 : mu.back());
            report.iterations.resize(n, 0);
            report.residuals.resize(n, 0.0);
            break;
        }
        nu[k] = nu_k;
        mu[k] = m;
    }

    auto shared = std::make_shared<TimeGrid>(grid);
    return StepwiseSolution{SampledSeries(shared, std::move(nu)),
                            SampledSeries(shared, std::move(mu)), std::move(report)};
}

SampledSeries abel_analytic(double xi, const std::function<double(double)>& f,
                            const TimeGrid& grid) {
    const std::size_t n = grid.size();
    QuadratureWeights pi(grid);
    std::vector<double> fv(n), big_f(n);
    for (std::size_t k = 0; k < n; ++k)
        fv[k] = f(grid[k]);

    // F(t_k) = f(t_k) - xi * int (product-trapezoidal, kernel 1)
    big_f[0] = fv[0];
    for (std::size_t k = 1; k < n; ++k) {
        double sum = 0.0;
        for (std::size_t l = 1; l <= k; ++l)
            sum += (fv[l] + fv[l - 1]) * pi(k, l);
        big_f[k] = fv[k] - xi * sum;
    }

    // y(t_k) = F(t_k) + pi xi^2 int_0^{t_k} exp(pi xi^2 (t_k - s)) F(s) ds;
    // the integrand is smooth, plain trapezoid suffices.
    const double c = kPi * xi * xi;
    std::vector<double> y(n);
    y[0] = big_f[0];
    for (std::size_t k = 1; k < n; ++k) {
        double sum = 0.0;
        for (std::size_t l = 1; l <= k; ++l) {
            double gl = std::exp(c * grid.delta(k, l)) * big_f[l];
            double glm = std::exp(c * grid.delta(k, l - 1)) * big_f[l - 1];
            sum += 0.5 * (gl + glm) * grid.delta(l, l - 1);
        }
        y[k] = big_f[k] + c * sum;
    }
    return SampledSeries(std::make_shared<TimeGrid>(grid), std::move(y));
}

double abel_flat_ou_nu(double b, double z, double theta) {
    if (!(theta > 0.0))
        throw std::domain_error("abel_flat_ou_nu: theta must be positive");
    if (!(z > b))
        throw std::domain_error("abel_flat_ou_nu: requires z > b");
    const double sq = std::sqrt(theta);
    double term1 = 0.0;
    if (b != 0.0) {
        // b e^{b^2 theta/2 + b(z-b)} N(-(b theta + z - b)/sqrt(theta)), written
        // through erfcx so the exponentials cannot overflow for small theta.
        double arg = (b * theta + z - b) / sq;
        double expo = 0.5 * b * b * theta + b * (z - b);
        if (arg >= 0.0)
            term1 = b * 0.5 * special::erfcx(arg / std::sqrt(2.0)) *
                    std::exp(expo - 0.5 * arg * arg);
        else
            term1 = b * std::exp(expo) * special::std_normal_cdf(-arg);
    }
    return term1 - special::heat_kernel(theta, b - z);
}

}  // namespace heatpot
