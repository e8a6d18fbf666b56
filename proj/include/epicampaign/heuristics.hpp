#pragma once

#include <span>
#include <utility>

#include "epicampaign/pmp.hpp"

namespace epicampaign {

/// Baseline scalar strategies: one control level applied to every degree
/// class, either over the whole horizon (static) or over [0, T/2] with zero
/// afterwards (two-stage).
struct HeuristicResult {
    enum class Kind { Static, TwoStage };
    Kind kind = Kind::Static;
    double level = 0.0;
    double J = 0.0;
    double resource_used = 0.0;
};

/// Control trajectory u_k(t) = level everywhere.
Trajectory constant_control(const Scenario& scn, double level);

/// Control trajectory u_k(t) = level for t <= T/2, 0 afterwards.
Trajectory two_stage_control(const Scenario& scn, double level);

/// Best static control by golden-section search on the level; the bracket is
/// grown by doubling until the reward turns down. Level tolerance 1e-7.
HeuristicResult best_static(const Scenario& scn, std::span<const double> i0);

HeuristicResult best_two_stage(const Scenario& scn, std::span<const double> i0);

/// Fixed-budget variants have closed-form levels from spending exactly B:
/// level = sqrt(B / (sum_k c_k T)) (static), sqrt(2B / (sum_k c_k T))
/// (two-stage). J is the spread alone.
std::pair<HeuristicResult, HeuristicResult> fixed_budget_heuristics(const Scenario& scn,
                                                                    std::span<const double> i0,
                                                                    double B);

}  // namespace epicampaign
