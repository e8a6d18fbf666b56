#pragma once

#include <span>
#include <utility>
#include <vector>

namespace epicampaign {

/// Time-varying rate profile on [0, T]: constant, logistic sigmoid
/// peak / (1 + exp(-a (t - t0))), or piecewise-linear through knots.
class TimeProfile {
public:
    enum class Kind { Constant, Sigmoid, PiecewiseLinear };

    static TimeProfile constant(double value);
    static TimeProfile sigmoid(double peak, double steepness, double midpoint);
    static TimeProfile piecewise_linear(std::vector<std::pair<double, double>> knots);

    double value(double t) const;
    Kind kind() const { return kind_; }

    /// Same shape with all values multiplied by `factor` (used for the
    /// gamma = 10 * beta default).
    TimeProfile scaled(double factor) const;

    double constant_value() const { return c_; }
    double peak() const { return c_; }
    double steepness() const { return a_; }
    double midpoint() const { return t0_; }
    const std::vector<std::pair<double, double>>& knots() const { return knots_; }

private:
    Kind kind_ = Kind::Constant;
    double c_ = 0.0;   // constant value, or sigmoid peak
    double a_ = 0.0;   // sigmoid steepness
    double t0_ = 0.0;  // sigmoid midpoint
    std::vector<std::pair<double, double>> knots_;
};

/// Pointwise evaluation on a grid.
std::vector<double> sample_profile(const TimeProfile& profile, std::span<const double> grid);

}  // namespace epicampaign
