#pragma once

#include "heatpot/grid.hpp"

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace heatpot {

/// Second-kind Volterra system with a 1/sqrt(t - t') singularity:
///
///   nu(t) + int_{t_0}^{t} K(t, t') nu(t') / sqrt(t - t') dt' = f(t).
///
/// K must be finite on the closed triangle t_0 <= t' <= t <= T including
/// the diagonal limit K(t, t); the square-root factor lives in the solver.
struct WeaklySingularSystem {
    std::function<double(double, double)> kernel;
    std::function<double(double)> rhs;
};

/// Product-trapezoidal weights
///   Pi_{k,l} = Delta_{l,l-1} / (sqrt(Delta_{k,l-1}) + sqrt(Delta_{k,l})),
/// which integrate a linear interpolant against 1/sqrt(t_k - t') exactly
/// over [t_{l-1}, t_l]. Pi_{k,k} reduces to sqrt(Delta_{k,k-1}).
class QuadratureWeights {
public:
    explicit QuadratureWeights(const TimeGrid& grid) : grid_(&grid) {}

    double operator()(std::size_t k, std::size_t l) const {
        double dl = grid_->delta(l, l - 1);
        return dl / (std::sqrt(grid_->delta(k, l - 1)) + std::sqrt(grid_->delta(k, l)));
    }

private:
    const TimeGrid* grid_;
};

struct NewtonConfig {
    double tolerance = 1e-12;
    int max_iterations = 50;
    double fd_step_rel = 1e-7;  // relative finite-difference step for the derivative
    int max_halvings = 10;      // step damping when the residual fails to decrease
};

/// Per-step record of the nonlinear inductions. A failed step leaves the
/// arrays filled up to failure_step (exclusive) and converged == false.
struct SolveReport {
    bool converged = true;
    std::vector<int> iterations;
    std::vector<double> residuals;
    std::optional<std::size_t> failure_step;
    std::optional<double> failure_time;
    double failure_residual = 0.0;
    std::optional<double> blowup_time;

    double max_residual() const {
        double m = 0.0;
        for (double r : residuals)
            m = std::max(m, std::abs(r));
        return m;
    }
};

class SingularStepError : public std::runtime_error {
public:
    SingularStepError(std::size_t step, double denom);
    std::size_t step() const { return step_; }

private:
    std::size_t step_;
};

/// Solve the discrete system
///   f_k = nu_k + sum_{l=1..k} (K_{k,l} nu_l + K_{k,l-1} nu_{l-1}) Pi_{k,l}
/// by forward induction starting from nu_0 = f_0. The returned values
/// satisfy the identity to machine precision by construction.
SampledSeries solve_linear(const WeaklySingularSystem& system, const TimeGrid& grid);

/// Residual of the discrete identity above for a candidate solution;
/// used by tests, should be ~1e-15 for solve_linear output.
std::vector<double> discrete_residual(const WeaklySingularSystem& system,
                                      const SampledSeries& nu);

/// Per-step scalar residual for the nonlinear inductions. Given the step
/// index k, a trial value of the step unknown mu_k and the previously
/// accepted values, the callback returns the scalar residual and writes the
/// eliminated companion value nu_k(mu_k) through nu_out.
using StepResidual = std::function<double(std::size_t k, double mu_trial,
                                          std::span<const double> nu_prev,
                                          std::span<const double> mu_prev, double& nu_out)>;

struct StepwiseSolution {
    SampledSeries nu;
    SampledSeries mu;
    SolveReport report;
};

/// March the coupled pair (nu_k, mu_k) across the grid, solving the scalar
/// residual for mu_k at every step by damped Newton iteration seeded with
/// mu_{k-1}. Non-convergence stops the march and is reported, not thrown:
/// the callers interpret it as blow-up.
StepwiseSolution solve_stepwise_nonlinear(const TimeGrid& grid, const StepResidual& residual,
                                          double nu0, double mu0,
                                          const NewtonConfig& config = {});

/// Analytic solution of the Abel equation of the second kind
///   y(t) + xi * int_0^t y(s)/sqrt(t-s) ds = f(t)
/// in the Polyanin form
///   y(t) = F(t) + pi xi^2 int_0^t exp(pi xi^2 (t-s)) F(s) ds,
///   F(t) = f(t) - xi int_0^t f(s)/sqrt(t-s) ds,
/// with the inner integrals evaluated by the same product-trapezoidal rule.
SampledSeries abel_analytic(double xi, const std::function<double(double)>& f,
                            const TimeGrid& grid);

/// Closed-form small-theta layer density for the flat-boundary OU hitting
/// problem (Laplace-transform solution of the Abel approximation):
///   nu(theta) = b exp(b^2 theta/2 + b(z-b)) N(-(b theta + z - b)/sqrt(theta))
///             - exp(-(b-z)^2/(2 theta)) / sqrt(2 pi theta).
double abel_flat_ou_nu(double b, double z, double theta);

}  // namespace heatpot
