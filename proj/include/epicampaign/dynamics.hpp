#pragma once

#include <span>

#include "epicampaign/scenario.hpp"
#include "epicampaign/trajectory.hpp"

namespace epicampaign {

/// Forward RK4 integration of the controlled SI state equations
///   di_k/dt = beta(t) k s_k sum_l q_l i_l + gamma(t) u_k(t) s_k,  s_k = 1 - i_k,
/// on the scenario grid. Half-step values of beta, gamma and u come from
/// linear interpolation of their grid samples. States that leave [0,1] by
/// less than 1e-9 are clamped; larger excursions or non-finite values raise
/// IntegrationError.
Trajectory integrate_state(const Scenario& scn, const Trajectory& controls,
                           std::span<const double> i0);

/// All-zero control trajectory on the scenario grid.
Trajectory zero_controls(const Scenario& scn);

/// i(t) = sum_k p_k i_k(t) per grid point.
AggregateSeries aggregate(const DegreeDistribution& dist, const Trajectory& states);

}  // namespace epicampaign
