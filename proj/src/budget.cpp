#include "epicampaign/budget.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <vector>

#include "epicampaign/errors.hpp"

namespace epicampaign {

namespace {

// Plain Algorithm-1 inner solve; at small mu (cheap effective cost) the
// undamped iteration can oscillate, so retry with a damped control update.
// Damping changes the iteration, not the fixed point.
SolveReport inner_solve(const Scenario& scn, std::span<const double> i0, double mu) {
    SolveReport rep = fbs_solve(scn, i0, mu);
    if (rep.converged) return rep;
    for (auto [damping, factor] : {std::pair{0.5, 4}, std::pair{0.25, 8}}) {
        Scenario damped = scn;
        damped.sweep.damping = damping;
        damped.sweep.n_sweep = scn.sweep.n_sweep * factor;
        rep = fbs_solve(damped, i0, mu);
        if (rep.converged) return rep;
    }
    return rep;
}

}  // namespace

BudgetReport budget_solve(const Scenario& scn, std::span<const double> i0, double B,
                          const BudgetOptions& opt) {
    if (!(B > 0.0)) throw ParameterError("budget B must be positive");
    const double B_th = std::min(1e-3 * B, 1e-6);

    double mu_low = opt.mu_low;
    double mu_high = opt.mu_high;

    // r_mu must decrease as mu grows; remember visited (mu, r) pairs to
    // assert it. A violation means the inner sweep is not converging and the
    // bisection direction is unreliable.
    std::vector<std::pair<double, double>> visited;

    // Below some multiplier the controls grow until the state integrator
    // rejects the trajectory; such a mu overspends any finite budget, so it
    // acts as r = +inf for the bisection direction.
    constexpr double kInf = std::numeric_limits<double>::infinity();
    auto spend_at = [&](double mu) -> std::pair<double, std::optional<SolveReport>> {
        try {
            SolveReport rep = inner_solve(scn, i0, mu);
            return {rep.control_cost, std::move(rep)};
        } catch (const IntegrationError&) {
            return {kInf, std::nullopt};
        }
    };

    BudgetReport out;
    out.budget = B;
    for (int it = 1; it <= opt.max_bisections; ++it) {
        const double mu = 0.5 * (mu_low + mu_high);
        auto [r_mu, rep_opt] = spend_at(mu);

        visited.emplace_back(mu, r_mu);
        for (const auto& [m, r] : visited) {
            if ((m < mu && r < r_mu - B_th) || (m > mu && r > r_mu + B_th)) {
                std::ostringstream ss;
                ss << "resource is not monotone in mu: r(" << m << ")=" << r << " vs r(" << mu
                   << ")=" << r_mu << "; inner sweep likely not converged";
                throw BracketError(ss.str());
            }
        }

        if (rep_opt.has_value() && std::abs(r_mu - B) < B_th) {
            out.base = std::move(*rep_opt);
            out.mu_star = mu;
            out.resource_used = r_mu;
            out.gap = std::abs(r_mu - B);
            out.bisections = it;
            return out;
        }
        if (r_mu > B)
            mu_low = mu;
        else
            mu_high = mu;

        // Interval numerically collapsed without meeting the budget: the
        // target is outside what [mu_low, mu_high] can spend.
        if (mu_high - mu_low < 1e-15 * std::max(1.0, mu_high)) break;
    }

    const double r_low = spend_at(opt.mu_low).first;
    const double r_high = spend_at(opt.mu_high).first;
    std::ostringstream ss;
    ss << "budget " << B << " unreachable in mu bracket [" << opt.mu_low << ", " << opt.mu_high
       << "]: r(mu_low)=" << r_low << ", r(mu_high)=" << r_high << ", B_th=" << B_th;
    throw BracketError(ss.str());
}

bool structural_check_budget(const Scenario& scn, const BudgetReport& report) {
    StructureCheck chk = check_control_structure(scn, report.base);
    if (!chk.adjoint_nonneg) return false;
    if (!chk.monotone_applicable) return true;  // hypothesis fails: not applicable
    return chk.monotone;
}

}  // namespace epicampaign
