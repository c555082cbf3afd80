#include "heatpot/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace heatpot {

TimeGrid::TimeGrid(std::vector<double> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.size() < 2)
        throw std::invalid_argument("TimeGrid: need at least two nodes");
    for (std::size_t k = 1; k < nodes_.size(); ++k) {
        if (!(nodes_[k] > nodes_[k - 1]))
            throw std::invalid_argument("TimeGrid: nodes must be strictly increasing");
        if (!std::isfinite(nodes_[k]))
            throw std::invalid_argument("TimeGrid: nodes must be finite");
    }
}

TimeGrid TimeGrid::uniform(double horizon, std::size_t steps) {
    return uniform_from(0.0, horizon, steps);
}

TimeGrid TimeGrid::uniform_from(double t0, double length, std::size_t steps) {
    if (!(length > 0.0))
        throw std::invalid_argument("TimeGrid::uniform: horizon must be positive");
    if (steps < 1)
        throw std::invalid_argument("TimeGrid::uniform: need at least one step");
    std::vector<double> nodes(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k)
        nodes[k] = t0 + length * static_cast<double>(k) / static_cast<double>(steps);
    nodes.back() = t0 + length;
    return TimeGrid(std::move(nodes));
}

TimeGrid TimeGrid::graded(double horizon, std::size_t steps, double gamma) {
    if (!(horizon > 0.0))
        throw std::invalid_argument("TimeGrid::graded: horizon must be positive");
    if (steps < 1)
        throw std::invalid_argument("TimeGrid::graded: need at least one step");
    if (!(gamma >= 1.0))
        throw std::invalid_argument("TimeGrid::graded: grading exponent must be >= 1");
    std::vector<double> nodes(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k) {
        double s = static_cast<double>(k) / static_cast<double>(steps);
        nodes[k] = horizon * std::pow(s, gamma);
    }
    nodes.back() = horizon;
    return TimeGrid(std::move(nodes));
}

SampledSeries::SampledSeries(std::shared_ptr<const TimeGrid> grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (!grid_)
        throw std::invalid_argument("SampledSeries: null grid");
    if (values_.size() != grid_->size())
        throw std::invalid_argument("SampledSeries: value count must match grid node count");
}

SampledSeries SampledSeries::cumulative_trapezoid() const {
    std::vector<double> out(values_.size(), 0.0);
    for (std::size_t k = 1; k < values_.size(); ++k)
        out[k] = out[k - 1] + 0.5 * (values_[k] + values_[k - 1]) * grid_->delta(k, k - 1);
    return SampledSeries(grid_, std::move(out));
}

double SampledSeries::interpolate(double t) const {
    const auto& g = *grid_;
    if (t < g.front() || t > g.back())
        throw std::out_of_range("SampledSeries::interpolate: t outside grid range");
    std::size_t lo = 0, hi = g.size() - 1;
    while (hi - lo > 1) {
        std::size_t mid = (lo + hi) / 2;
        (g[mid] <= t ? lo : hi) = mid;
    }
    double w = (t - g[lo]) / g.delta(lo + 1, lo);
    return (1.0 - w) * values_[lo] + w * values_[lo + 1];
}

}  // namespace heatpot
