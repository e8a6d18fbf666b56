#include "epicampaign/time_profile.hpp"

#include <algorithm>
#include <cmath>

#include "epicampaign/errors.hpp"

namespace epicampaign {

TimeProfile TimeProfile::constant(double value) {
    if (!std::isfinite(value) || value < 0.0)
        throw ParameterError("constant profile value must be finite and >= 0");
    TimeProfile p;
    p.kind_ = Kind::Constant;
    p.c_ = value;
    return p;
}

TimeProfile TimeProfile::sigmoid(double peak, double steepness, double midpoint) {
    if (!std::isfinite(peak) || peak < 0.0)
        throw ParameterError("sigmoid peak must be finite and >= 0");
    if (!std::isfinite(steepness) || !std::isfinite(midpoint))
        throw ParameterError("sigmoid parameters must be finite");
    TimeProfile p;
    p.kind_ = Kind::Sigmoid;
    p.c_ = peak;
    p.a_ = steepness;
    p.t0_ = midpoint;
    return p;
}

TimeProfile TimeProfile::piecewise_linear(std::vector<std::pair<double, double>> knots) {
    if (knots.size() < 2) throw ParameterError("piecewise profile needs at least two knots");
    for (size_t i = 0; i < knots.size(); ++i) {
        if (!std::isfinite(knots[i].first) || !std::isfinite(knots[i].second) ||
            knots[i].second < 0.0)
            throw ParameterError("piecewise knots must be finite with values >= 0");
        if (i > 0 && knots[i].first <= knots[i - 1].first)
            throw ParameterError("piecewise knot times must be strictly increasing");
    }
    TimeProfile p;
    p.kind_ = Kind::PiecewiseLinear;
    p.knots_ = std::move(knots);
    return p;
}

double TimeProfile::value(double t) const {
    switch (kind_) {
        case Kind::Constant:
            return c_;
        case Kind::Sigmoid:
            return c_ / (1.0 + std::exp(-a_ * (t - t0_)));
        case Kind::PiecewiseLinear: {
            if (t <= knots_.front().first) return knots_.front().second;
            if (t >= knots_.back().first) return knots_.back().second;
            auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                                       [](double tt, const auto& kn) { return tt < kn.first; });
            const auto& [t1, v1] = *it;
            const auto& [t0, v0] = *(it - 1);
            double w = (t - t0) / (t1 - t0);
            return v0 + w * (v1 - v0);
        }
    }
    return 0.0;
}

TimeProfile TimeProfile::scaled(double factor) const {
    TimeProfile p = *this;
    p.c_ *= factor;
    for (auto& kn : p.knots_) kn.second *= factor;
    return p;
}

std::vector<double> sample_profile(const TimeProfile& profile, std::span<const double> grid) {
    std::vector<double> out(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) out[i] = profile.value(grid[i]);
    return out;
}

}  // namespace epicampaign
