#pragma once

#include <span>

#include "epicampaign/pmp.hpp"

namespace epicampaign {

struct BudgetOptions {
    double mu_low = 1e-3;
    double mu_high = 100.0;
    int max_bisections = 200;
};

/// Fixed-budget solve result. The objective for this variant is the spread
/// alone; `base.J` still carries spread - cost for reporting symmetry.
struct BudgetReport {
    SolveReport base;
    double mu_star = 0.0;
    double resource_used = 0.0;
    double budget = 0.0;
    double gap = 0.0;  // |resource_used - budget|
    int bisections = 0;
};

/// Bisection on the relaxation multiplier mu around the sweep: the inner
/// solve replaces the control update by u_k = gamma lambda_k s_k / (2 c_k mu),
/// and the outer loop drives the spent resource r_mu to the budget within
/// B_th = min(1e-3 B, 1e-6). Throws BracketError when the target cannot be
/// met inside [mu_low, mu_high], reporting r at the final bracket endpoints.
/// r_mu is asserted non-increasing across the visited multipliers.
BudgetReport budget_solve(const Scenario& scn, std::span<const double> i0, double B,
                          const BudgetOptions& opt = {});

/// True when the budgeted solution satisfies the same structural properties
/// as the unconstrained one (adjoint positivity, monotone controls). Returns
/// true vacuously when the monotonicity hypothesis dgamma/dt <= 0 fails.
bool structural_check_budget(const Scenario& scn, const BudgetReport& report);

}  // namespace epicampaign
