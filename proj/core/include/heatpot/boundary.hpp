#pragma once

#include "heatpot/grid.hpp"

#include <memory>
#include <variant>
#include <vector>

namespace heatpot {

/// A moving boundary b(t) with value and derivative access.
///
/// Closed-form variants (flat, sinusoid, exponential pair) are exact;
/// tabulated curves interpolate linearly and carry node derivatives
/// built with one-sided differences at the endpoints and central
/// differences elsewhere, unless analytic derivatives are supplied.
class BoundaryCurve {
public:
    static BoundaryCurve flat(double level);

    /// level + amplitude*sin(omega*t)
    static BoundaryCurve sinusoid(double level, double amplitude, double omega);

    /// A*exp(-t) + B*exp(t)
    static BoundaryCurve exponential_pair(double a, double b);

    static BoundaryCurve tabulated(std::shared_ptr<const TimeGrid> grid,
                                   std::vector<double> values);

    /// Tabulated curve with caller-supplied node derivatives (used when the
    /// derivative is known analytically and finite differences would waste
    /// accuracy).
    static BoundaryCurve tabulated(std::shared_ptr<const TimeGrid> grid,
                                   std::vector<double> values,
                                   std::vector<double> derivatives);

    double value(double t) const;
    double derivative(double t) const;

    bool is_tabulated() const;
    /// Tabulation grid; throws for closed-form variants.
    const TimeGrid& tabulation_grid() const;

private:
    struct Flat {
        double level;
    };
    struct Sinusoid {
        double level, amplitude, omega;
    };
    struct ExponentialPair {
        double a, b;
    };
    struct Tabulated {
        std::shared_ptr<const TimeGrid> grid;
        std::vector<double> values;
        std::vector<double> derivatives;
    };

    using Variant = std::variant<Flat, Sinusoid, ExponentialPair, Tabulated>;
    explicit BoundaryCurve(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

}  // namespace heatpot
