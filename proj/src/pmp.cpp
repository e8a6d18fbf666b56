#include "epicampaign/pmp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "epicampaign/dynamics.hpp"
#include "epicampaign/errors.hpp"

namespace epicampaign {

namespace {

// dlambda_k = beta k lambda_k S - beta q_k W + gamma u_k lambda_k,
// with S = sum_l q_l i_l and W = sum_j j lambda_j s_j.
void adjoint_rhs(const DegreeDistribution& dist, double beta, double gamma,
                 std::span<const double> u, std::span<const double> iv,
                 std::span<const double> lv, std::span<double> out) {
    const int K = dist.num_classes();
    double S = 0.0, W = 0.0;
    for (int c = 0; c < K; ++c) {
        S += dist.q(c) * iv[c];
        W += dist.degree_of(c) * lv[c] * (1.0 - iv[c]);
    }
    for (int c = 0; c < K; ++c)
        out[c] = beta * dist.degree_of(c) * lv[c] * S - beta * dist.q(c) * W + gamma * u[c] * lv[c];
}

double trapezoid(std::span<const double> grid, std::span<const double> f) {
    double s = 0.0;
    for (size_t j = 0; j + 1 < grid.size(); ++j)
        s += 0.5 * (grid[j + 1] - grid[j]) * (f[j] + f[j + 1]);
    return s;
}

double max_profile(const Scenario& scn, const TimeProfile& p) {
    auto v = sample_profile(p, scn.time_grid());
    return *std::max_element(v.begin(), v.end());
}

// min c_k and related extrema over populated classes (p_k > 0).
struct DistExtrema {
    double c_min;
    double sum_k;
    double q_max;
};

DistExtrema dist_extrema(const Scenario& scn) {
    DistExtrema e{std::numeric_limits<double>::infinity(), 0.0, 0.0};
    const auto& d = scn.dist;
    for (int c = 0; c < d.num_classes(); ++c) {
        e.q_max = std::max(e.q_max, d.q(c));
        if (d.p(c) > 0.0) {
            e.c_min = std::min(e.c_min, scn.cost.coefficient(d.p(c)));
            e.sum_k += d.degree_of(c);
        }
    }
    return e;
}

}  // namespace

AdjointTrajectory integrate_adjoint(const Scenario& scn, const Trajectory& states,
                                    const Trajectory& controls) {
    const auto& grid = states.grid();
    const int K = scn.dist.num_classes();
    const int n = scn.n_grid;
    if (states.num_points() != n || controls.num_points() != n)
        throw ParameterError("states/controls are not sampled on the scenario grid");

    const auto bg = sample_profile(scn.beta, grid);
    const auto gg = sample_profile(scn.gamma, grid);

    AdjointTrajectory lam(grid, K);
    for (int c = 0; c < K; ++c) lam.at(n - 1, c) = scn.dist.p(c);

    std::vector<double> k1(K), k2(K), k3(K), k4(K), tmp(K), ih(K), uh(K);
    const double h = scn.T / (n - 1);
    for (int j = n - 2; j >= 0; --j) {
        auto y = lam.row(j + 1);
        auto i1 = states.row(j + 1);
        auto i0 = states.row(j);
        auto u1 = controls.row(j + 1);
        auto u0 = controls.row(j);
        for (int c = 0; c < K; ++c) {
            ih[c] = 0.5 * (i0[c] + i1[c]);
            uh[c] = 0.5 * (u0[c] + u1[c]);
        }
        const double bh = 0.5 * (bg[j] + bg[j + 1]);
        const double gh = 0.5 * (gg[j] + gg[j + 1]);

        adjoint_rhs(scn.dist, bg[j + 1], gg[j + 1], u1, i1, y, k1);
        for (int c = 0; c < K; ++c) tmp[c] = y[c] - 0.5 * h * k1[c];
        adjoint_rhs(scn.dist, bh, gh, uh, ih, tmp, k2);
        for (int c = 0; c < K; ++c) tmp[c] = y[c] - 0.5 * h * k2[c];
        adjoint_rhs(scn.dist, bh, gh, uh, ih, tmp, k3);
        for (int c = 0; c < K; ++c) tmp[c] = y[c] - h * k3[c];
        adjoint_rhs(scn.dist, bg[j], gg[j], u0, i0, tmp, k4);

        auto yn = lam.row(j);
        for (int c = 0; c < K; ++c) {
            double v = y[c] - h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
            if (!std::isfinite(v))
                throw IntegrationError("adjoint integration blew up at t=" +
                                       std::to_string(grid[j]) + ", degree class " +
                                       std::to_string(scn.dist.degree_of(c)));
            yn[c] = v;
        }
    }
    return lam;
}

Trajectory maximize_hamiltonian(const Scenario& scn, const Trajectory& states,
                                const AdjointTrajectory& adjoints, double mu) {
    const int K = scn.dist.num_classes();
    const int n = scn.n_grid;
    const auto gg = sample_profile(scn.gamma, states.grid());
    Trajectory u(states.grid(), K);
    for (int c = 0; c < K; ++c) {
        const double pk = scn.dist.p(c);
        if (pk == 0.0) continue;  // empty class: nothing to recruit
        const double ck = scn.cost.coefficient(pk);
        if (!(ck > 0.0))
            throw ParameterError("cost coefficient must be positive for populated classes");
        const double denom = 2.0 * ck * mu;
        for (int j = 0; j < n; ++j)
            u.at(j, c) = gg[j] * adjoints.at(j, c) * (1.0 - states.at(j, c)) / denom;
    }
    return u;
}

double control_cost(const Scenario& scn, const Trajectory& controls) {
    const int K = scn.dist.num_classes();
    std::vector<double> integrand(controls.num_points());
    for (int j = 0; j < controls.num_points(); ++j) {
        double s = 0.0;
        auto row = controls.row(j);
        for (int c = 0; c < K; ++c) {
            double ck = scn.cost.coefficient(scn.dist.p(c));
            s += ck * row[c] * row[c];
        }
        integrand[j] = s;
    }
    return trapezoid(controls.grid(), integrand);
}

RewardBreakdown evaluate_reward(const Scenario& scn, const Trajectory& controls,
                                std::span<const double> i0) {
    auto states = integrate_state(scn, controls, i0);
    RewardBreakdown r;
    auto last = states.row(states.num_points() - 1);
    for (int c = 0; c < scn.dist.num_classes(); ++c) r.spread += scn.dist.p(c) * last[c];
    r.cost = control_cost(scn, controls);
    r.J = r.spread - r.cost;
    return r;
}

SolveReport fbs_solve(const Scenario& scn, std::span<const double> i0, double mu) {
    const int K = scn.dist.num_classes();
    const double tol = scn.sweep.fixed_point_tol;
    const double damping = scn.sweep.damping;

    Trajectory u = zero_controls(scn);
    int iterations = 0;
    bool converged = false;
    for (int it = 0; it < scn.sweep.n_sweep; ++it) {
        auto states = integrate_state(scn, u, i0);
        auto adjoints = integrate_adjoint(scn, states, u);
        Trajectory unew = maximize_hamiltonian(scn, states, adjoints, mu);
        if (damping != 1.0) {
            for (size_t idx = 0; idx < unew.values().size(); ++idx)
                unew.values()[idx] =
                    (1.0 - damping) * u.values()[idx] + damping * unew.values()[idx];
        }
        double diff = 0.0, scale = 0.0;
        for (size_t idx = 0; idx < unew.values().size(); ++idx) {
            diff = std::max(diff, std::abs(unew.values()[idx] - u.values()[idx]));
            scale = std::max(scale, std::abs(unew.values()[idx]));
        }
        u = std::move(unew);
        iterations = it + 1;
        if (diff <= tol * std::max(scale, 1e-300)) {
            converged = true;
            break;
        }
    }

    SolveReport rep;
    rep.states = integrate_state(scn, u, i0);
    rep.adjoints = integrate_adjoint(scn, rep.states, u);
    rep.iterations = iterations;
    rep.converged = converged;

    const auto gg = sample_profile(scn.gamma, u.grid());
    double resid = 0.0;
    for (int j = 0; j < scn.n_grid; ++j) {
        for (int c = 0; c < K; ++c) {
            const double pk = scn.dist.p(c);
            if (pk == 0.0) continue;
            const double ck = scn.cost.coefficient(pk);
            double target = gg[j] * rep.adjoints.at(j, c) * (1.0 - rep.states.at(j, c)) / mu;
            resid = std::max(resid, std::abs(2.0 * ck * u.at(j, c) - target));
        }
    }
    rep.stationarity_residual = resid;

    auto last = rep.states.row(scn.n_grid - 1);
    for (int c = 0; c < K; ++c) rep.spread_reward += scn.dist.p(c) * last[c];
    rep.control_cost = control_cost(scn, u);
    rep.J = rep.spread_reward - rep.control_cost;
    rep.controls = std::move(u);
    return rep;
}

std::vector<double> normalized_resource(const Scenario& scn, const Trajectory& controls) {
    const int K = scn.dist.num_classes();
    std::vector<double> r(K, 0.0);
    std::vector<double> integrand(controls.num_points());
    for (int c = 0; c < K; ++c) {
        for (int j = 0; j < controls.num_points(); ++j) {
            double uc = controls.at(j, c);
            integrand[j] = scn.cost.b * uc * uc;
        }
        r[c] = trapezoid(controls.grid(), integrand);
    }
    return r;
}

BoundCheck check_convergence_bound(const Scenario& scn, double u_M, double Lambda) {
    const double beta_M = max_profile(scn, scn.beta);
    const double gamma_M = max_profile(scn, scn.gamma);
    const auto ex = dist_extrema(scn);
    const double K_max = scn.dist.k_max();
    const double T = scn.T;

    const double a = beta_M * ex.sum_k * ex.q_max;
    const double b = beta_M * K_max;
    double bracket;
    if (std::abs(a - b) < 1e-12 * std::max(1.0, std::max(std::abs(a), std::abs(b))))
        bracket = T * std::exp(a * T);  // limit of (e^{aT} - e^{bT}) / (a - b)
    else
        bracket = (std::exp(a * T) - std::exp(b * T)) / (a - b);

    BoundCheck out;
    out.lhs = gamma_M * gamma_M * Lambda / (2.0 * ex.c_min) *
              std::exp((beta_M * K_max + gamma_M * u_M) * T) * bracket;
    out.holds = out.lhs < 1.0;
    return out;
}

BoundCheck check_uniqueness(const Scenario& scn, double Lambda) {
    const auto ex = dist_extrema(scn);
    const double K_max = scn.dist.k_max();
    const double d1 = std::max(ex.sum_k * Lambda * ex.q_max + K_max * Lambda, 2.0 * K_max);
    const double d2 = Lambda / ex.c_min * std::max(1.0, Lambda / 2.0);

    const auto grid = scn.time_grid();
    auto bv = sample_profile(scn.beta, grid);
    auto gv = sample_profile(scn.gamma, grid);
    for (double& g : gv) g = g * g;
    const double beta_l1 = trapezoid(grid, bv);
    const double gamma2_l1 = trapezoid(grid, gv);

    BoundCheck out;
    out.lhs = d1 * beta_l1 + d2 * gamma2_l1;
    out.holds = out.lhs < 1.0;
    return out;
}

StructureCheck check_control_structure(const Scenario& scn, const SolveReport& report) {
    StructureCheck out;
    const auto& u = report.controls;
    const int n = u.num_points();
    const int K = u.num_classes();

    out.adjoint_min = *std::min_element(report.adjoints.values().begin(),
                                        report.adjoints.values().end());
    out.adjoint_nonneg = out.adjoint_min >= -1e-9;

    const auto grid = scn.time_grid();
    auto gv = sample_profile(scn.gamma, grid);
    auto bv = sample_profile(scn.beta, grid);
    const double eps = 1e-12;
    bool gamma_noninc = true, beta_noninc = true, gamma_convex = true;
    for (int j = 0; j + 1 < n; ++j) {
        if (gv[j + 1] > gv[j] + eps) gamma_noninc = false;
        if (bv[j + 1] > bv[j] + eps) beta_noninc = false;
    }
    for (int j = 0; j + 2 < n; ++j)
        if (gv[j + 2] - 2.0 * gv[j + 1] + gv[j] < -eps) gamma_convex = false;

    out.monotone_applicable = gamma_noninc;
    out.convex_applicable = gamma_noninc && beta_noninc && gamma_convex;

    double max_inc = -std::numeric_limits<double>::infinity();
    double min_d2 = std::numeric_limits<double>::infinity();
    for (int c = 0; c < K; ++c) {
        for (int j = 0; j + 1 < n; ++j)
            max_inc = std::max(max_inc, u.at(j + 1, c) - u.at(j, c));
        for (int j = 0; j + 2 < n; ++j)
            min_d2 = std::min(min_d2, u.at(j + 2, c) - 2.0 * u.at(j + 1, c) + u.at(j, c));
    }
    out.max_step_increase = max_inc;
    out.min_second_difference = min_d2;
    out.monotone = max_inc <= 1e-9;
    out.convex = min_d2 >= -1e-8;
    return out;
}

}  // namespace epicampaign
