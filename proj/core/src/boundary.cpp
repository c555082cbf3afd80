#include "heatpot/boundary.hpp"

#include <cmath>
#include <stdexcept>

namespace heatpot {

namespace {

// Slack for roundoff when querying tabulated curves at their endpoints.
constexpr double kEdgeSlack = 1e-12;

std::size_t locate(const TimeGrid& g, double t) {
    if (t < g.front() - kEdgeSlack * (1.0 + std::abs(g.front())) ||
        t > g.back() + kEdgeSlack * (1.0 + std::abs(g.back())))
        throw std::out_of_range("BoundaryCurve: t outside tabulated range");
    std::size_t lo = 0, hi = g.size() - 1;
    while (hi - lo > 1) {
        std::size_t mid = (lo + hi) / 2;
        (g[mid] <= t ? lo : hi) = mid;
    }
    return lo;
}

std::vector<double> fd_derivatives(const TimeGrid& g, const std::vector<double>& v) {
    const std::size_t n = g.size();
    std::vector<double> d(n);
    if (n == 2) {
        d[0] = d[1] = (v[1] - v[0]) / g.delta(1, 0);
        return d;
    }
    // Second-order one-sided differences at the ends, nonuniform central inside.
    {
        double h1 = g.delta(1, 0), h2 = g.delta(2, 1);
        d[0] = -(2.0 * h1 + h2) / (h1 * (h1 + h2)) * v[0] + (h1 + h2) / (h1 * h2) * v[1] -
               h1 / (h2 * (h1 + h2)) * v[2];
        double hm = g.delta(n - 2, n - 3), hn = g.delta(n - 1, n - 2);
        d[n - 1] = hn / (hm * (hm + hn)) * v[n - 3] - (hm + hn) / (hm * hn) * v[n - 2] +
                   (2.0 * hn + hm) / (hn * (hm + hn)) * v[n - 1];
    }
    for (std::size_t k = 1; k + 1 < n; ++k) {
        double hl = g.delta(k, k - 1), hr = g.delta(k + 1, k);
        d[k] = (v[k + 1] * hl * hl - v[k - 1] * hr * hr + v[k] * (hr * hr - hl * hl)) /
               (hl * hr * (hl + hr));
    }
    return d;
}

}  // namespace

BoundaryCurve BoundaryCurve::flat(double level) { return BoundaryCurve(Flat{level}); }

BoundaryCurve BoundaryCurve::sinusoid(double level, double amplitude, double omega) {
    return BoundaryCurve(Sinusoid{level, amplitude, omega});
}

BoundaryCurve BoundaryCurve::exponential_pair(double a, double b) {
    return BoundaryCurve(ExponentialPair{a, b});
}

BoundaryCurve BoundaryCurve::tabulated(std::shared_ptr<const TimeGrid> grid,
                                       std::vector<double> values) {
    if (!grid)
        throw std::invalid_argument("BoundaryCurve::tabulated: null grid");
    if (values.size() != grid->size())
        throw std::invalid_argument("BoundaryCurve::tabulated: value count must match grid");
    auto derivs = fd_derivatives(*grid, values);
    return BoundaryCurve(Tabulated{std::move(grid), std::move(values), std::move(derivs)});
}

BoundaryCurve BoundaryCurve::tabulated(std::shared_ptr<const TimeGrid> grid,
                                       std::vector<double> values,
                                       std::vector<double> derivatives) {
    if (!grid)
        throw std::invalid_argument("BoundaryCurve::tabulated: null grid");
    if (values.size() != grid->size() || derivatives.size() != grid->size())
        throw std::invalid_argument("BoundaryCurve::tabulated: value count must match grid");
    return BoundaryCurve(Tabulated{std::move(grid), std::move(values), std::move(derivatives)});
}

double BoundaryCurve::value(double t) const {
    return std::visit(
        [t](const auto& b) -> double {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, Flat>) {
                return b.level;
            } else if constexpr (std::is_same_v<T, Sinusoid>) {
                return b.level + b.amplitude * std::sin(b.omega * t);
            } else if constexpr (std::is_same_v<T, ExponentialPair>) {
                return b.a * std::exp(-t) + b.b * std::exp(t);
            } else {
                std::size_t lo = locate(*b.grid, t);
                double w = (t - (*b.grid)[lo]) / b.grid->delta(lo + 1, lo);
                w = std::min(1.0, std::max(0.0, w));
                return (1.0 - w) * b.values[lo] + w * b.values[lo + 1];
            }
        },
        v_);
}

double BoundaryCurve::derivative(double t) const {
    return std::visit(
        [t](const auto& b) -> double {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, Flat>) {
                return 0.0;
            } else if constexpr (std::is_same_v<T, Sinusoid>) {
                return b.amplitude * b.omega * std::cos(b.omega * t);
            } else if constexpr (std::is_same_v<T, ExponentialPair>) {
                return -b.a * std::exp(-t) + b.b * std::exp(t);
            } else {
                std::size_t lo = locate(*b.grid, t);
                double w = (t - (*b.grid)[lo]) / b.grid->delta(lo + 1, lo);
                w = std::min(1.0, std::max(0.0, w));
                return (1.0 - w) * b.derivatives[lo] + w * b.derivatives[lo + 1];
            }
        },
        v_);
}

bool BoundaryCurve::is_tabulated() const { return std::holds_alternative<Tabulated>(v_); }

const TimeGrid& BoundaryCurve::tabulation_grid() const {
    if (const auto* tab = std::get_if<Tabulated>(&v_))
        return *tab->grid;
    throw std::logic_error("BoundaryCurve: not a tabulated curve");
}

}  // namespace heatpot
