#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace heatpot {

/// Discretization nodes t_0 < t_1 < ... < t_N shared by all solvers.
/// Nodes are stored as absolute times; increments Delta_{k,l} = t_k - t_l
/// are formed on demand.
class TimeGrid {
public:
    explicit TimeGrid(std::vector<double> nodes);

    /// t_k = k*T/N on [0, T].
    static TimeGrid uniform(double horizon, std::size_t steps);

    /// t_k = T*(k/N)^gamma; gamma = 1 reduces to the uniform grid. The
    /// clustering near t = 0 resolves sqrt(t) startup layers.
    static TimeGrid graded(double horizon, std::size_t steps, double gamma);

    /// Uniform grid on [t0, t0 + length].
    static TimeGrid uniform_from(double t0, double length, std::size_t steps);

    std::size_t size() const { return nodes_.size(); }   // N+1 node count
    std::size_t steps() const { return nodes_.size() - 1; }
    double operator[](std::size_t k) const { return nodes_[k]; }
    double front() const { return nodes_.front(); }
    double back() const { return nodes_.back(); }
    std::span<const double> nodes() const { return nodes_; }

    /// Delta_{k,l} = t_k - t_l.
    double delta(std::size_t k, std::size_t l) const { return nodes_[k] - nodes_[l]; }

private:
    std::vector<double> nodes_;
};

/// Real values sampled on the nodes of a shared TimeGrid.
class SampledSeries {
public:
    SampledSeries() = default;
    SampledSeries(std::shared_ptr<const TimeGrid> grid, std::vector<double> values);

    const TimeGrid& grid() const { return *grid_; }
    std::shared_ptr<const TimeGrid> grid_ptr() const { return grid_; }
    std::span<const double> values() const { return values_; }
    double operator[](std::size_t k) const { return values_[k]; }
    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }

    /// Running integral by the trapezoidal rule, zero at the first node.
    SampledSeries cumulative_trapezoid() const;

    /// Linear interpolation inside the grid range.
    double interpolate(double t) const;

private:
    std::shared_ptr<const TimeGrid> grid_;
    std::vector<double> values_;
};

}  // namespace heatpot
