#include "epicampaign/heuristics.hpp"

#include <cmath>
#include <functional>

#include "epicampaign/dynamics.hpp"
#include "epicampaign/errors.hpp"

namespace epicampaign {

namespace {

double sum_cost_coefficients(const Scenario& scn) {
    double s = 0.0;
    for (int c = 0; c < scn.dist.num_classes(); ++c)
        s += scn.cost.coefficient(scn.dist.p(c));
    return s;
}

double spread_of(const Scenario& scn, const Trajectory& u, std::span<const double> i0) {
    auto states = integrate_state(scn, u, i0);
    auto last = states.row(states.num_points() - 1);
    double s = 0.0;
    for (int c = 0; c < scn.dist.num_classes(); ++c) s += scn.dist.p(c) * last[c];
    return s;
}

// Exact cost of the scalar family: the integrand is piecewise constant, so
// quadrature reduces to the closed form (avoids smearing the two-stage jump
// over a grid cell).
double scalar_cost(const Scenario& scn, double level, bool two_stage) {
    double horizon = two_stage ? scn.T / 2.0 : scn.T;
    return sum_cost_coefficients(scn) * level * level * horizon;
}

double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double tol) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

HeuristicResult best_scalar(const Scenario& scn, std::span<const double> i0, bool two_stage) {
    auto J_of = [&](double level) {
        Trajectory u = two_stage ? two_stage_control(scn, level) : constant_control(scn, level);
        return spread_of(scn, u, i0) - scalar_cost(scn, level, two_stage);
    };

    // Bracket the maximum by doubling until the reward decreases.
    double prev = J_of(0.0);
    double lo = 0.0, hi = 1e-3;
    double cur = J_of(hi);
    int steps = 0;
    while (cur > prev && steps < 60) {
        prev = cur;
        lo = steps == 0 ? 0.0 : hi / 2.0;
        hi *= 2.0;
        cur = J_of(hi);
        ++steps;
    }

    HeuristicResult res;
    res.kind = two_stage ? HeuristicResult::Kind::TwoStage : HeuristicResult::Kind::Static;
    res.level = golden_section_max(J_of, lo, hi, 1e-7);
    res.J = J_of(res.level);
    res.resource_used = scalar_cost(scn, res.level, two_stage);
    return res;
}

}  // namespace

Trajectory constant_control(const Scenario& scn, double level) {
    return Trajectory(scn.time_grid(), scn.dist.num_classes(), level);
}

Trajectory two_stage_control(const Scenario& scn, double level) {
    Trajectory u(scn.time_grid(), scn.dist.num_classes(), 0.0);
    const auto& grid = u.grid();
    for (int j = 0; j < u.num_points(); ++j) {
        if (grid[j] <= scn.T / 2.0) {
            auto row = u.row(j);
            for (auto& v : row) v = level;
        }
    }
    return u;
}

HeuristicResult best_static(const Scenario& scn, std::span<const double> i0) {
    return best_scalar(scn, i0, false);
}

HeuristicResult best_two_stage(const Scenario& scn, std::span<const double> i0) {
    return best_scalar(scn, i0, true);
}

std::pair<HeuristicResult, HeuristicResult> fixed_budget_heuristics(const Scenario& scn,
                                                                    std::span<const double> i0,
                                                                    double B) {
    if (B < 0.0) throw ParameterError("budget B must be non-negative");
    const double sum_c = sum_cost_coefficients(scn);

    HeuristicResult st;
    st.kind = HeuristicResult::Kind::Static;
    st.level = std::sqrt(B / (sum_c * scn.T));
    st.J = spread_of(scn, constant_control(scn, st.level), i0);
    st.resource_used = scalar_cost(scn, st.level, false);

    HeuristicResult ts;
    ts.kind = HeuristicResult::Kind::TwoStage;
    ts.level = std::sqrt(2.0 * B / (sum_c * scn.T));
    ts.J = spread_of(scn, two_stage_control(scn, ts.level), i0);
    ts.resource_used = scalar_cost(scn, ts.level, true);

    return {st, ts};
}

}  // namespace epicampaign
