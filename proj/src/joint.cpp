#include "epicampaign/joint.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "epicampaign/errors.hpp"

namespace epicampaign {

namespace {

double budget_of(const DegreeDistribution& dist, std::span<const double> x) {
    double s = 0.0;
    for (int c = 0; c < dist.num_classes(); ++c) s += dist.p(c) * x[c];
    return s;
}

std::vector<double> project_raw(std::span<const double> v, const DegreeDistribution& dist,
                                double B) {
    const int K = dist.num_classes();
    std::vector<double> x(K);
    auto eval = [&](double tau) {
        double s = 0.0;
        for (int c = 0; c < K; ++c) {
            double xc = std::clamp(v[c] - tau * dist.p(c), 0.0, 1.0);
            x[c] = xc;
            s += dist.p(c) * xc;
        }
        return s;
    };
    // sum_k p_k x_k(tau) is continuous and non-increasing in tau; expand a
    // bracket then bisect.
    double lo = -1.0, hi = 1.0;
    while (eval(lo) < B && lo > -1e12) lo *= 2.0;
    while (eval(hi) > B && hi < 1e12) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (eval(mid) > B)
            lo = mid;
        else
            hi = mid;
    }
    eval(0.5 * (lo + hi));
    return x;
}

}  // namespace

SeedVector project_to_seed_simplex(std::span<const double> v, const DegreeDistribution& dist,
                                   double B_i0) {
    if (!(B_i0 > 0.0) || B_i0 > 1.0)
        throw ParameterError("seed budget B_i0 must lie in (0, 1]");
    if (static_cast<int>(v.size()) != dist.num_classes())
        throw ParameterError("seed vector size does not match the degree support");
    SeedVector out;
    out.i0 = project_raw(v, dist, B_i0);
    out.seed_budget = B_i0;
    return out;
}

JointResult joint_solve(const Scenario& scn, double B_i0, const JointOptions& opt) {
    if (!(B_i0 > 0.0) || B_i0 > 1.0)
        throw ParameterError("seed budget B_i0 must lie in (0, 1]");
    const auto& dist = scn.dist;
    const int K = dist.num_classes();

    long long evals = 0;
    auto solve_at = [&](const std::vector<double>& x) {
        ++evals;
        return fbs_solve(scn, x);
    };

    auto run_from = [&](std::vector<double> x, int& outer_used, double& grad_norm_out) {
        SolveReport rep = solve_at(x);
        double J = rep.J;
        double alpha = 1.0;
        std::vector<double> g(K, 0.0);
        outer_used = 0;
        grad_norm_out = 0.0;

        for (int outer = 0; outer < opt.max_outer; ++outer) {
            outer_used = outer + 1;
            // Forward-difference gradient of the ambient objective; classes
            // with no nodes are pinned at zero seed and skipped.
            for (int c = 0; c < K; ++c) {
                if (dist.p(c) == 0.0) {
                    g[c] = 0.0;
                    continue;
                }
                std::vector<double> xp = x;
                if (xp[c] + opt.fd_step <= 1.0) {
                    xp[c] += opt.fd_step;
                    g[c] = (solve_at(xp).J - J) / opt.fd_step;
                } else {
                    xp[c] -= opt.fd_step;
                    g[c] = (J - solve_at(xp).J) / opt.fd_step;
                }
            }

            const double probe = 1e-3;
            std::vector<double> xg(K);
            for (int c = 0; c < K; ++c) xg[c] = x[c] + probe * g[c];
            auto proj = project_raw(xg, dist, B_i0);
            double pgn = 0.0;
            for (int c = 0; c < K; ++c) pgn = std::max(pgn, std::abs(proj[c] - x[c]) / probe);
            grad_norm_out = pgn;
            if (pgn < opt.grad_tol) break;

            // Backtracking line search along the projected gradient path.
            bool accepted = false;
            double gain = 0.0;
            double a = alpha;
            for (int ls = 0; ls < 60 && a > 1e-14; ++ls, a *= 0.5) {
                std::vector<double> xn(K);
                for (int c = 0; c < K; ++c) xn[c] = x[c] + a * g[c];
                xn = project_raw(xn, dist, B_i0);
                SolveReport rn = solve_at(xn);
                if (rn.J > J) {
                    gain = rn.J - J;
                    x = std::move(xn);
                    J = rn.J;
                    rep = std::move(rn);
                    alpha = std::min(a * 2.0, 1e9);
                    accepted = true;
                    break;
                }
            }

            if (!accepted) {
                // Gradient step stalled: try moving budget mass between the
                // best and worst per-budget classes (keeps sum p x exact).
                int best = -1, worst = -1;
                double ebest = -1e300, eworst = 1e300;
                for (int c = 0; c < K; ++c) {
                    if (dist.p(c) == 0.0) continue;
                    double e = g[c] / dist.p(c);
                    if (x[c] < 1.0 - 1e-12 && e > ebest) ebest = e, best = c;
                    if (x[c] > 1e-12 && e < eworst) eworst = e, worst = c;
                }
                if (best >= 0 && worst >= 0 && best != worst && ebest > eworst) {
                    double m_max = std::min((1.0 - x[best]) * dist.p(best),
                                            x[worst] * dist.p(worst));
                    double m = m_max;
                    for (int ls = 0; ls < 30 && m > 1e-14; ++ls, m *= 0.5) {
                        std::vector<double> xn = x;
                        xn[best] = std::min(1.0, xn[best] + m / dist.p(best));
                        xn[worst] = std::max(0.0, xn[worst] - m / dist.p(worst));
                        SolveReport rn = solve_at(xn);
                        if (rn.J > J) {
                            gain = rn.J - J;
                            x = std::move(xn);
                            J = rn.J;
                            rep = std::move(rn);
                            accepted = true;
                            break;
                        }
                    }
                }
                if (!accepted) break;
            }
            if (gain < opt.improvement_tol) break;
        }

        return std::make_pair(std::move(x), std::move(rep));
    };

    // Uniform feasible start; empty classes hold no seed mass.
    std::vector<double> x0(K, B_i0);
    for (int c = 0; c < K; ++c)
        if (dist.p(c) == 0.0) x0[c] = 0.0;
    x0 = project_raw(x0, dist, B_i0);

    JointResult result;
    int outer = 0;
    double gnorm = 0.0;
    auto [xbest, repbest] = run_from(x0, outer, gnorm);
    result.seed.i0 = std::move(xbest);
    result.seed.seed_budget = B_i0;
    result.report = std::move(repbest);
    result.outer_iterations = outer;
    result.grad_norm = gnorm;

    // Optional additional random feasible starts (deterministic stream).
    std::mt19937_64 eng(opt.start_seed);
    for (int s = 1; s < opt.multi_starts; ++s) {
        std::vector<double> xr(K);
        for (int c = 0; c < K; ++c) {
            xr[c] = dist.p(c) == 0.0
                        ? 0.0
                        : static_cast<double>(eng() >> 11) * 0x1.0p-53;
        }
        xr = project_raw(xr, dist, B_i0);
        int o2 = 0;
        double g2 = 0.0;
        auto [x2, rep2] = run_from(xr, o2, g2);
        if (rep2.J > result.report.J) {
            result.seed.i0 = std::move(x2);
            result.report = std::move(rep2);
            result.outer_iterations = o2;
            result.grad_norm = g2;
        }
    }
    result.evaluations = evals;
    return result;
}

}  // namespace epicampaign
