#include "heatpot/potentials.hpp"

#include "heatpot/special.hpp"

#include <cmath>
#include <stdexcept>

namespace heatpot {

namespace {
constexpr double kTwoPi = 6.2831853071795864769;
constexpr double kSqrt2Pi = 2.5066282746310005024;

void check_xi(double xi_value) {
    if (!(xi_value > 0.0 && xi_value <= 1.0 + 1e-12))
        throw std::logic_error("ChordKernels: Xi left (0, 1]");
}
}  // namespace

double ChordKernels::theta(double t, double tp) const {
    if (t == tp)
        return b_->derivative(t);
    return (b_->value(t) - b_->value(tp)) / (t - tp);
}

double ChordKernels::xi(double t, double tp) const {
    double th = theta(t, tp);
    double v = std::exp(-0.5 * (t - tp) * th * th);
    check_xi(v);
    return v;
}

std::pair<double, double> ChordKernels::theta_xi(double t, double tp) const {
    double th = theta(t, tp);
    double v = (t == tp) ? 1.0 : std::exp(-0.5 * (t - tp) * th * th);
    check_xi(v);
    return {th, v};
}

WeaklySingularSystem assemble_dirichlet_above(const BoundaryCurve& boundary,
                                              std::function<double(double)> f) {
    return WeaklySingularSystem{
        [b = boundary](double t, double tp) {
            ChordKernels ck(b);
            auto [th, xi] = ck.theta_xi(t, tp);
            return th * xi / kSqrt2Pi;
        },
        std::move(f)};
}

WeaklySingularSystem assemble_dirichlet_below(const BoundaryCurve& boundary,
                                              std::function<double(double)> f) {
    // -nu + int K nu = f  <=>  nu + int (-K) nu = -f; the solution of the
    // rewritten system is nu^< itself.
    return WeaklySingularSystem{
        [b = boundary](double t, double tp) {
            ChordKernels ck(b);
            auto [th, xi] = ck.theta_xi(t, tp);
            return -th * xi / kSqrt2Pi;
        },
        [g = std::move(f)](double t) { return -g(t); }};
}

FluxSeries flux_pointwise(const SampledSeries& nu, const BoundaryCurve& boundary) {
    const TimeGrid& grid = nu.grid();
    const std::size_t n = grid.size();
    const double t0 = grid.front();
    ChordKernels ck(boundary);
    QuadratureWeights pi(grid);

    std::vector<double> g(n, 0.0);
    bool singular0 = nu[0] != 0.0;
    g[0] = singular0 ? std::numeric_limits<double>::quiet_NaN() : 0.0;

    // W(t_k, t_l) = (Phi + Theta^2 Xi nu)(t_k, t_l) / sqrt(2 pi); the solver
    // weight supplies the remaining 1/sqrt(t_k - t_l).
    std::vector<double> w(n);
    for (std::size_t k = 1; k < n; ++k) {
        const double tk = grid[k];
        const double bp = boundary.derivative(tk);
        const double nu_prime = (nu[k] - nu[k - 1]) / grid.delta(k, k - 1);
        for (std::size_t l = 0; l < k; ++l) {
            auto [th, xi] = ck.theta_xi(tk, grid[l]);
            double phi = (nu[k] - xi * nu[l]) / grid.delta(k, l);
            w[l] = (phi + th * th * xi * nu[l]) / kSqrt2Pi;
        }
        w[k] = (nu_prime + 1.5 * bp * bp * nu[k]) / kSqrt2Pi;
        double sum = 0.0;
        for (std::size_t l = 1; l <= k; ++l)
            sum += (w[l] + w[l - 1]) * pi(k, l);
        g[k] = -(1.0 / std::sqrt(kTwoPi * (tk - t0)) + bp) * nu[k] - 0.5 * sum;
    }

    // Running integral of g; when g(t_0) is singular the first interval is
    // integrated with the right endpoint only (callers needing mass
    // accounting use cumulative_flux instead).
    std::vector<double> big_g(n, 0.0);
    for (std::size_t k = 1; k < n; ++k) {
        double left = (k == 1 && singular0) ? g[1] : g[k - 1];
        big_g[k] = big_g[k - 1] + 0.5 * (g[k] + left) * grid.delta(k, k - 1);
    }

    auto shared = nu.grid_ptr();
    return FluxSeries{SampledSeries(shared, std::move(g)),
                      SampledSeries(shared, std::move(big_g)), singular0};
}

SampledSeries cumulative_flux(const SampledSeries& nu, const BoundaryCurve& boundary) {
    const TimeGrid& grid = nu.grid();
    const std::size_t n = grid.size();
    ChordKernels ck(boundary);
    QuadratureWeights pi(grid);
    std::vector<double> big_g(n, 0.0), w(n);
    for (std::size_t k = 1; k < n; ++k) {
        const double tk = grid[k];
        for (std::size_t l = 0; l <= k; ++l)
            w[l] = ck.xi(tk, grid[l]) * nu[l] / kSqrt2Pi;
        double sum = 0.0;
        for (std::size_t l = 1; l <= k; ++l)
            sum += (w[l] + w[l - 1]) * pi(k, l);
        big_g[k] = -sum;
    }
    return SampledSeries(nu.grid_ptr(), std::move(big_g));
}

FluxSeries boundary_flux(const SampledSeries& nu, const BoundaryCurve& boundary) {
    FluxSeries out = flux_pointwise(nu, boundary);
    out.G = cumulative_flux(nu, boundary);
    return out;
}

double reconstruct_interior(const SampledSeries& nu, const BoundaryCurve& boundary, double t,
                            double x, bool above) {
    const TimeGrid& grid = nu.grid();
    if (t < grid.front() || t > grid.back())
        throw std::out_of_range("reconstruct_interior: t outside solver grid");
    const double bt = boundary.value(t);
    if (above ? !(x > bt) : !(x < bt))
        throw std::domain_error("reconstruct_interior: x not inside the domain");

    // Integrand (x - b(t')) exp(-(x-b(t'))^2/(2 s)) nu(t') / sqrt(2 pi s^3),
    // s = t - t'. Split off 1/sqrt(s) and integrate the remaining factor
    // with the product-trapezoidal weights; the diagonal limit is 0 because
    // x stays away from the boundary.
    auto kpart = [&](double tp) {
        double s = t - tp;
        if (s <= 0.0)
            return 0.0;
        double d = x - boundary.value(tp);
        return d * std::exp(-0.5 * d * d / s) / (kSqrt2Pi * s) * nu.interpolate(tp);
    };

    // Nodes of the grid below t, then a final partial segment up to t.
    double sum = 0.0;
    std::size_t k = 0;
    while (k + 1 < grid.size() && grid[k + 1] <= t)
        ++k;
    for (std::size_t l = 1; l <= k; ++l) {
        double dl = grid.delta(l, l - 1);
        double w = dl / (std::sqrt(t - grid[l - 1]) + std::sqrt(t - grid[l]));
        sum += (kpart(grid[l]) + kpart(grid[l - 1])) * w;
    }
    if (grid[k] < t) {
        double dl = t - grid[k];
        double w = dl / std::sqrt(dl);
        sum += (kpart(t) + kpart(grid[k])) * w;
    }
    return sum;
}

TwoSidedDensities solve_two_sided(const BoundaryCurve& lower, const BoundaryCurve& upper,
                                  const std::function<double(double)>& f_lower,
                                  const std::function<double(double)>& f_upper,
                                  const TimeGrid& grid) {
    const std::size_t n = grid.size();
    for (std::size_t k = 0; k < n; ++k)
        if (!(lower.value(grid[k]) < upper.value(grid[k])))
            throw std::invalid_argument("solve_two_sided: boundaries touch or cross");

    ChordKernels ck_ll(lower), ck_uu(upper);
    QuadratureWeights pi(grid);

    // Cross chords between distinct boundaries: the Gaussian factor kills
    // the diagonal, so the kernels vanish as t' -> t.
    auto cross = [](const BoundaryCurve& ba, const BoundaryCurve& bb, double t, double tp) {
        if (t == tp)
            return 0.0;
        double th = (ba.value(t) - bb.value(tp)) / (t - tp);
        return th * std::exp(-0.5 * (t - tp) * th * th) / kSqrt2Pi;
    };
    auto self = [](ChordKernels& ck, double t, double tp) {
        auto [th, xi] = ck.theta_xi(t, tp);
        return th * xi / kSqrt2Pi;
    };

    std::vector<double> nu_lo(n), nu_up(n);
    // k = 0: nu^> = f^>, -nu^< = f^<.
    nu_lo[0] = f_lower(grid[0]);
    nu_up[0] = -f_upper(grid[0]);

    std::vector<double> k_ll(n), k_lu(n), k_ul(n), k_uu(n);
    for (std::size_t k = 1; k < n; ++k) {
        const double tk = grid[k];
        for (std::size_t l = 0; l <= k; ++l) {
            k_ll[l] = self(ck_ll, tk, grid[l]);          // Theta^{>>}
            k_lu[l] = cross(lower, upper, tk, grid[l]);  // Theta^{><}
            k_ul[l] = cross(upper, lower, tk, grid[l]);  // Theta^{<>}
            k_uu[l] = self(ck_uu, tk, grid[l]);          // Theta^{<<}
        }
        const double sd = std::sqrt(grid.delta(k, k - 1));
        double s_lo = (k_ll[k - 1] * nu_lo[k - 1] + k_lu[k - 1] * nu_up[k - 1]) * sd;
        double s_up = (k_ul[k - 1] * nu_lo[k - 1] + k_uu[k - 1] * nu_up[k - 1]) * sd;
        for (std::size_t l = 1; l < k; ++l) {
            double w = pi(k, l);
            s_lo += (k_ll[l] * nu_lo[l] + k_ll[l - 1] * nu_lo[l - 1] + k_lu[l] * nu_up[l] +
                     k_lu[l - 1] * nu_up[l - 1]) *
                    w;
            s_up += (k_ul[l] * nu_lo[l] + k_ul[l - 1] * nu_lo[l - 1] + k_uu[l] * nu_up[l] +
                     k_uu[l - 1] * nu_up[l - 1]) *
                    w;
        }
        // 2x2 step system:
        //   (1 + K>> sd) nu_lo + (K>< sd) nu_up = f> - s_lo
        //   (K<> sd) nu_lo + (-1 + K<< sd) nu_up = f< - s_up
        double a11 = 1.0 + k_ll[k] * sd, a12 = k_lu[k] * sd;
        double a21 = k_ul[k] * sd, a22 = -1.0 + k_uu[k] * sd;
        double r1 = f_lower(tk) - s_lo, r2 = f_upper(tk) - s_up;
        double det = a11 * a22 - a12 * a21;
        if (std::abs(det) <= 1e-14)
            throw SingularStepError(k, det);
        nu_lo[k] = (r1 * a22 - a12 * r2) / det;
        nu_up[k] = (a11 * r2 - r1 * a21) / det;
    }

    auto shared = std::make_shared<TimeGrid>(grid);
    return TwoSidedDensities{SampledSeries(shared, std::move(nu_lo)),
                             SampledSeries(shared, std::move(nu_up))};
}

namespace {

// Smooth cross-layer flux contribution at boundary `at` from the layer on
// boundary `from`: 1/2 d/dx of that layer's potential, evaluated on `at`.
// The integrand (1/s - Theta_x^2) Xi_x nu / sqrt(2 pi s) vanishes at the
// diagonal because the boundaries stay apart.
std::vector<double> cross_flux(const SampledSeries& nu_from, const BoundaryCurve& from,
                               const BoundaryCurve& at) {
    const TimeGrid& grid = nu_from.grid();
    const std::size_t n = grid.size();
    QuadratureWeights pi(grid);
    std::vector<double> g(n, 0.0), w(n);
    for (std::size_t k = 1; k < n; ++k) {
        const double tk = grid[k];
        const double xk = at.value(tk);
        for (std::size_t l = 0; l < k; ++l) {
            double s = grid.delta(k, l);
            double th = (xk - from.value(grid[l])) / s;
            double xi = std::exp(-0.5 * s * th * th);
            w[l] = (1.0 / s - th * th) * xi * nu_from[l] / kSqrt2Pi;
        }
        w[k] = 0.0;
        double sum = 0.0;
        for (std::size_t l = 1; l <= k; ++l)
            sum += (w[l] + w[l - 1]) * pi(k, l);
        g[k] = 0.5 * sum;
    }
    return g;
}

}  // namespace

TwoSidedFluxes two_sided_fluxes(const TwoSidedDensities& densities, const BoundaryCurve& lower,
                                const BoundaryCurve& upper) {
    // Outflow through the lower boundary of the channel is +1/2 dF/dx there
    // (mass leaks downward); through the upper boundary it is -1/2 dF/dx.
    FluxSeries self_lo = flux_pointwise(densities.nu_lower, lower);
    // flux_pointwise computes +(1/2) dF/dx for the ">" orientation; for the
    // "<" layer on the upper boundary the jump relation flips sign.
    const TimeGrid& grid = densities.nu_lower.grid();
    const std::size_t n = grid.size();
    const double t0 = grid.front();
    ChordKernels ck_up(upper);
    QuadratureWeights pi(grid);

    // Self flux of the "<" layer: 1/2 dF^</dx at the upper boundary equals
    // +(1/sqrt(2 pi (t-t0)) + b') nu^< + 1/2 int (Phi + Theta^2 Xi nu^<)/sqrt(...)
    // with the same chord kernels; mirror of the ">" formula.
    std::vector<double> g_up(n, 0.0), w(n);
    const SampledSeries& nu_up = densities.nu_upper;
    for (std::size_t k = 1; k < n; ++k) {
        const double tk = grid[k];
        const double bp = upper.derivative(tk);
        const double nu_prime = (nu_up[k] - nu_up[k - 1]) / grid.delta(k, k - 1);
        for (std::size_t l = 0; l < k; ++l) {
            auto [th, xi] = ck_up.theta_xi(tk, grid[l]);
            double phi = (nu_up[k] - xi * nu_up[l]) / grid.delta(k, l);
            w[l] = (phi + th * th * xi * nu_up[l]) / kSqrt2Pi;
        }
        w[k] = (nu_prime + 1.5 * bp * bp * nu_up[k]) / kSqrt2Pi;
        double sum = 0.0;
        for (std::size_t l = 1; l <= k; ++l)
            sum += (w[l] + w[l - 1]) * pi(k, l);
        // Mirror (x -> -x) of the one-sided formula: the below-orientation
        // flips the sign of b' relative to the above case.
        g_up[k] = (1.0 / std::sqrt(kTwoPi * (tk - t0)) - bp) * nu_up[k] + 0.5 * sum;
    }

    auto add = [](std::vector<double> a, const std::vector<double>& b, double sign) {
        for (std::size_t i = 0; i < a.size(); ++i)
            a[i] += sign * b[i];
        return a;
    };

    // Cross contributions: 1/2 dF_other/dx evaluated at this boundary, with
    // the outflow sign of this boundary.
    auto cross_at_lower = cross_flux(densities.nu_upper, upper, lower);
    auto cross_at_upper = cross_flux(densities.nu_lower, lower, upper);

    std::vector<double> g_lo(self_lo.g.values().begin(), self_lo.g.values().end());
    if (!g_lo.empty() && std::isnan(g_lo[0]))
        g_lo[0] = 0.0;
    g_lo = add(std::move(g_lo), cross_at_lower, +1.0);
    // Upper boundary outflow = -(1/2) d(F_self + F_cross)/dx there.
    std::vector<double> g_up_total = add(std::move(g_up), cross_at_upper, -1.0);

    auto shared = densities.nu_lower.grid_ptr();
    return TwoSidedFluxes{SampledSeries(shared, std::move(g_lo)),
                          SampledSeries(shared, std::move(g_up_total))};
}

LemmaCheck verify_lemma(const std::function<double(double, double)>& psi,
                        const std::function<double(double, double)>& psi_t,
                        const std::function<double(double)>& nu,
                        const std::function<double(double)>& nu_prime, const TimeGrid& grid) {
    const double T = grid.back();
    const double t0 = grid.front();
    const std::size_t n = grid.size();
    QuadratureWeights pi(grid);

    // (a) Direct derivative: substitute t' = t - s^2 to smooth the kernel,
    //     I(t) = 2/sqrt(2 pi) int_0^{sqrt(t-t0)} Psi(t, t-s^2) nu(t-s^2) ds,
    //     then central-difference in t.
    auto smooth_integral = [&](double t) {
        auto integrand = [&](double s) { return psi(t, t - s * s) * nu(t - s * s); };
        return 2.0 / kSqrt2Pi *
               special::adaptive_simpson(integrand, 0.0, std::sqrt(t - t0), 1e-13);
    };
    const double h = 1e-4 * (T - t0);
    double direct = (smooth_integral(T + h) - smooth_integral(T - h)) / (2.0 * h);

    // (b) First form: nu(T)/sqrt(2 pi (T-t0)) +
    //     1/2 int [nu(T) - (Psi - 2 (T-t') Psi_t) nu(t')] / sqrt(2 pi (T-t')^3) dt'.
    //     The bracket vanishes linearly at t' = T; its ratio to (T-t') has
    //     the diagonal limit nu'(T) + Psi_t(T,T) nu(T)  (using
    //     Psi_t(t,t) + Psi_{t'}(t,t) = 0 from Psi(t,t) = 1).
    std::vector<double> w(n);
    for (std::size_t l = 0; l + 1 < n; ++l) {
        double tp = grid[l], s = T - tp;
        double bracket = nu(T) - (psi(T, tp) - 2.0 * s * psi_t(T, tp)) * nu(tp);
        w[l] = 0.5 * bracket / (s * kSqrt2Pi);
    }
    w[n - 1] = 0.5 * (nu_prime(T) + psi_t(T, T) * nu(T)) / kSqrt2Pi;
    double sum1 = 0.0;
    for (std::size_t l = 1; l < n; ++l)
        sum1 += (w[l] + w[l - 1]) * pi(n - 1, l);
    double first = nu(T) / std::sqrt(kTwoPi * (T - t0)) + sum1;

    // (c) Alternative form: int d/dt' [(Psi - 2 (T-t') Psi_t) nu(t')] /
    //     sqrt(2 pi (T-t')) dt', the t'-derivative by central difference.
    auto inner = [&](double tp) {
        double s = T - tp;
        return (psi(T, tp) - 2.0 * s * psi_t(T, tp)) * nu(tp);
    };
    const double hd = 1e-6 * std::max(1.0, T - t0);
    for (std::size_t l = 0; l < n; ++l) {
        double tp = grid[l];
        w[l] = (inner(tp + hd) - inner(tp - hd)) / (2.0 * hd) / kSqrt2Pi;
    }
    double sum2 = 0.0;
    for (std::size_t l = 1; l < n; ++l)
        sum2 += (w[l] + w[l - 1]) * pi(n - 1, l);
    double alt = sum2;

    double d1 = std::abs(direct - first), d2 = std::abs(direct - alt),
           d3 = std::abs(first - alt);
    return LemmaCheck{direct, first, alt, std::max({d1, d2, d3})};
}

}  // namespace heatpot
