#include "epicampaign/dynamics.hpp"

#include <cmath>
#include <string>

#include "epicampaign/errors.hpp"

namespace epicampaign {

namespace {

constexpr double kClampSlack = 1e-9;

// d i_k = beta k (1 - i_k) S + gamma u_k (1 - i_k), with S = sum_l q_l i_l.
void state_rhs(const DegreeDistribution& dist, double beta, double gamma,
               std::span<const double> u, std::span<const double> iv, std::span<double> out) {
    const int K = dist.num_classes();
    double S = 0.0;
    for (int c = 0; c < K; ++c) S += dist.q(c) * iv[c];
    for (int c = 0; c < K; ++c) {
        double s = 1.0 - iv[c];
        out[c] = beta * dist.degree_of(c) * s * S + gamma * u[c] * s;
    }
}

}  // namespace

Trajectory integrate_state(const Scenario& scn, const Trajectory& controls,
                           std::span<const double> i0) {
    const auto grid = scn.time_grid();
    const int K = scn.dist.num_classes();
    const int n = scn.n_grid;
    if (controls.num_points() != n || controls.num_classes() != K)
        throw ParameterError("controls are not sampled on the scenario grid");
    if (static_cast<int>(i0.size()) != K)
        throw ParameterError("initial state size does not match the degree support");
    for (double v : i0)
        if (!(v >= 0.0 && v <= 1.0)) throw ParameterError("initial state must lie in [0, 1]");

    const auto bg = sample_profile(scn.beta, grid);
    const auto gg = sample_profile(scn.gamma, grid);

    Trajectory states(grid, K);
    for (int c = 0; c < K; ++c) states.at(0, c) = i0[c];

    std::vector<double> k1(K), k2(K), k3(K), k4(K), tmp(K), uh(K);
    const double h = scn.T / (n - 1);
    for (int j = 0; j + 1 < n; ++j) {
        auto y = states.row(j);
        auto uj = controls.row(j);
        auto uj1 = controls.row(j + 1);
        for (int c = 0; c < K; ++c) uh[c] = 0.5 * (uj[c] + uj1[c]);
        const double bh = 0.5 * (bg[j] + bg[j + 1]);
        const double gh = 0.5 * (gg[j] + gg[j + 1]);

        state_rhs(scn.dist, bg[j], gg[j], uj, y, k1);
        for (int c = 0; c < K; ++c) tmp[c] = y[c] + 0.5 * h * k1[c];
        state_rhs(scn.dist, bh, gh, uh, tmp, k2);
        for (int c = 0; c < K; ++c) tmp[c] = y[c] + 0.5 * h * k2[c];
        state_rhs(scn.dist, bh, gh, uh, tmp, k3);
        for (int c = 0; c < K; ++c) tmp[c] = y[c] + h * k3[c];
        state_rhs(scn.dist, bg[j + 1], gg[j + 1], uj1, tmp, k4);

        auto yn = states.row(j + 1);
        for (int c = 0; c < K; ++c) {
            double v = y[c] + h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
            if (!std::isfinite(v))
                throw IntegrationError("state integration blew up at t=" +
                                       std::to_string(grid[j + 1]) + ", degree class " +
                                       std::to_string(scn.dist.degree_of(c)));
            if (v < 0.0 || v > 1.0) {
                if (v >= -kClampSlack && v <= 1.0 + kClampSlack) {
                    v = v < 0.0 ? 0.0 : 1.0;
                } else {
                    throw IntegrationError(
                        "state left [0,1] beyond clamping slack at t=" +
                        std::to_string(grid[j + 1]) + ", degree class " +
                        std::to_string(scn.dist.degree_of(c)) + " (value " + std::to_string(v) +
                        ")");
                }
            }
            yn[c] = v;
        }
    }
    return states;
}

Trajectory zero_controls(const Scenario& scn) {
    return Trajectory(scn.time_grid(), scn.dist.num_classes(), 0.0);
}

AggregateSeries aggregate(const DegreeDistribution& dist, const Trajectory& states) {
    AggregateSeries out;
    out.grid = states.grid();
    out.i_total.resize(states.num_points());
    for (int j = 0; j < states.num_points(); ++j) {
        double s = 0.0;
        auto row = states.row(j);
        for (int c = 0; c < dist.num_classes(); ++c) s += dist.p(c) * row[c];
        out.i_total[j] = s;
    }
    return out;
}

}  // namespace epicampaign
