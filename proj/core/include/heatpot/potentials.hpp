#pragma once

#include "heatpot/boundary.hpp"
#include "heatpot/grid.hpp"
#include "heatpot/volterra.hpp"

#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace heatpot {

/// Chord kernels of a moving boundary:
///   Theta(t,t') = (b(t) - b(t'))/(t - t'),  Theta(t,t) = b'(t),
///   Xi(t,t')    = exp(-(t-t') Theta^2 / 2), Xi(t,t)    = 1.
/// Xi must stay in (0,1]; a violation signals a broken boundary evaluation
/// and trips a hard check.
class ChordKernels {
public:
    explicit ChordKernels(const BoundaryCurve& boundary) : b_(&boundary) {}

    double theta(double t, double tp) const;
    double xi(double t, double tp) const;
    /// Theta * Xi in one evaluation (shared exponent).
    std::pair<double, double> theta_xi(double t, double tp) const;

    const BoundaryCurve& boundary() const { return *b_; }

private:
    const BoundaryCurve* b_;
};

/// Probability outflow rate g and cumulative outflow G of one problem.
struct FluxSeries {
    SampledSeries g;
    SampledSeries G;
    bool g0_singular = false;  // nu(t_0) != 0 makes g(t_0+) singular
};

/// Dirichlet single-layer system for the domain above the boundary,
///   nu(t) + int_{t0}^t Theta Xi nu / sqrt(2 pi (t-t')) dt' = f(t);
/// solve_linear on it yields the layer density nu^>.
WeaklySingularSystem assemble_dirichlet_above(const BoundaryCurve& boundary,
                                              std::function<double(double)> f);

/// Mirror system for the domain below the boundary,
///   -nu(t) + int_{t0}^t Theta Xi nu / sqrt(2 pi (t-t')) dt' = f(t),
/// rewritten with +nu so the same induction applies; the returned density
/// is nu^< of the original orientation.
WeaklySingularSystem assemble_dirichlet_below(const BoundaryCurve& boundary,
                                              std::function<double(double)> f);

/// Boundary flux of the single-layer potential,
///   g(t) = -(1/sqrt(2 pi (t - t0)) + b'(t)) nu(t)
///          - 1/2 int_{t0}^t (Phi + Theta^2 Xi nu) / sqrt(2 pi (t-t')) dt',
/// with Phi(t,t') = (nu(t) - Xi nu(t'))/(t-t') and the diagonal
/// Phi(t,t) = nu'(t) + (b'(t))^2 nu(t)/2, nu' by backward difference.
/// g at the first node is 0 when nu starts at 0 and flagged singular
/// otherwise. Equals (1/2) dF/dx on the boundary for the above-domain
/// orientation.
FluxSeries flux_pointwise(const SampledSeries& nu, const BoundaryCurve& boundary);

/// Cumulative outflow by the integrated formula
///   G(t) = -int_{t0}^t Xi(t,t') nu(t') / sqrt(2 pi (t-t')) dt'.
/// For a moving boundary with nonzero boundary data this differs from the
/// integral of g by int b' f dt'; the callers account for that where it
/// matters.
SampledSeries cumulative_flux(const SampledSeries& nu, const BoundaryCurve& boundary);

/// Both flux routes; G from the integrated formula.
FluxSeries boundary_flux(const SampledSeries& nu, const BoundaryCurve& boundary);

/// Single-layer potential evaluated strictly inside the domain:
///   F(t,x) = int_{t0}^t (x - b(t')) exp(-(x-b(t'))^2/(2(t-t')))
///            nu(t') / sqrt(2 pi (t-t')^3) dt'.
/// `above` selects the orientation check (x > b(t) or x < b(t)).
double reconstruct_interior(const SampledSeries& nu, const BoundaryCurve& boundary, double t,
                            double x, bool above = true);

/// Densities of the two-sided problem. nu_lower lives on the lower
/// boundary (domain above it, the ">" orientation of the one-sided
/// problem); nu_upper lives on the upper boundary ("<" orientation).
struct TwoSidedDensities {
    SampledSeries nu_lower;
    SampledSeries nu_upper;
};

/// Coupled two-boundary Dirichlet problem on the channel
/// lower(t) < x < upper(t); per-step 2x2 induction generalizing the
/// one-sided scheme. Throws std::invalid_argument if the boundaries touch
/// or cross on the grid.
TwoSidedDensities solve_two_sided(const BoundaryCurve& lower, const BoundaryCurve& upper,
                                  const std::function<double(double)>& f_lower,
                                  const std::function<double(double)>& f_upper,
                                  const TimeGrid& grid);

/// Fluxes through each boundary of the two-sided problem: the self-layer
/// contribution via the pointwise formula plus the smooth cross-layer term
///   1/2 int (1/(t-t') - Theta_x^2) Xi_x nu_other / sqrt(2 pi (t-t')) dt'
/// built from the cross chords. Signs are oriented so each flux is the
/// outflow through its own boundary.
struct TwoSidedFluxes {
    SampledSeries g_lower;
    SampledSeries g_upper;
};
TwoSidedFluxes two_sided_fluxes(const TwoSidedDensities& densities, const BoundaryCurve& lower,
                                const BoundaryCurve& upper);

/// Check the differentiation lemma for d/dt int Psi nu / sqrt(2pi(t-t')) dt':
/// evaluates (a) a central finite difference of the integral (smooth
/// substitution + adaptive quadrature), (b) the lemma's first form, (c) the
/// alternative form, all at t = grid.back(), and returns the three values
/// plus the maximum pairwise discrepancy.
struct LemmaCheck {
    double direct;
    double first_form;
    double alternative_form;
    double max_discrepancy;
};
LemmaCheck verify_lemma(const std::function<double(double, double)>& psi,
                        const std::function<double(double, double)>& psi_t,
                        const std::function<double(double)>& nu,
                        const std::function<double(double)>& nu_prime, const TimeGrid& grid);

}  // namespace heatpot
