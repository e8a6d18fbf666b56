#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace epicampaign {

/// Per-degree-class function of time sampled on the scenario grid.
/// Storage is time-major: row j holds all class values at grid point j,
/// which keeps the per-step class reductions in the integrators contiguous.
class Trajectory {
public:
    Trajectory() = default;
    Trajectory(std::vector<double> grid, int num_classes, double fill = 0.0)
        : grid_(std::move(grid)),
          num_classes_(num_classes),
          values_(grid_.size() * num_classes, fill) {}

    int num_points() const { return static_cast<int>(grid_.size()); }
    int num_classes() const { return num_classes_; }
    const std::vector<double>& grid() const { return grid_; }

    double& at(int point, int cls) { return values_[static_cast<size_t>(point) * num_classes_ + cls]; }
    double at(int point, int cls) const {
        return values_[static_cast<size_t>(point) * num_classes_ + cls];
    }
    std::span<double> row(int point) {
        return {values_.data() + static_cast<size_t>(point) * num_classes_,
                static_cast<size_t>(num_classes_)};
    }
    std::span<const double> row(int point) const {
        return {values_.data() + static_cast<size_t>(point) * num_classes_,
                static_cast<size_t>(num_classes_)};
    }
    std::vector<double>& values() { return values_; }
    const std::vector<double>& values() const { return values_; }

    double max_abs() const {
        double m = 0.0;
        for (double v : values_) m = std::max(m, std::abs(v));
        return m;
    }

private:
    std::vector<double> grid_;
    int num_classes_ = 0;
    std::vector<double> values_;
};

/// Adjoint trajectories share the sampled-function representation.
using AdjointTrajectory = Trajectory;

/// Population-level infected fraction i(t) = sum_k p_k i_k(t).
struct AggregateSeries {
    std::vector<double> grid;
    std::vector<double> i_total;
};

}  // namespace epicampaign
