#pragma once

// Shared scenario builders for the test suites: the default ER / PL2
// configurations most runs use, plus a two-class desk-scale instance.

#include <vector>

#include "epicampaign/scenario.hpp"

namespace epicampaign::testing {

inline Scenario make_scenario(DegreeDistribution dist, double beta, double b, int n_grid = 201,
                              double T = 1.0) {
    Scenario s;
    s.network.type = NetworkSpec::Type::Powerlaw;
    s.dist = std::move(dist);
    s.T = T;
    s.n_grid = n_grid;
    s.beta = TimeProfile::constant(beta);
    s.gamma = TimeProfile::constant(10.0 * beta);
    s.gamma_overridden = false;
    s.cost.b = b;
    s.seed.mode = SeedSpec::Mode::Uniform;
    s.seed.i0 = 0.01;
    return s;
}

inline Scenario er_default(double beta = 0.07, double b = 25.0, int n_grid = 201) {
    return make_scenario(build_poisson_truncated(33.45, 13, 54), beta, b, n_grid);
}

inline Scenario pl2_default(double beta = 0.07, double b = 25.0, int n_grid = 201) {
    return make_scenario(build_powerlaw(2.0, 14, 120), beta, b, n_grid);
}

// Two-class desk-scale scenario: support {1, 2}, p = {1/2, 1/2}. Converges
// well inside the sweep's contraction region.
inline Scenario toy_two_class(int n_grid = 21, double beta = 0.3, double b = 10.0) {
    auto s = make_scenario(DegreeDistribution::from_probabilities(1, {0.5, 0.5}), beta, b, n_grid);
    s.seed.i0 = 0.05;
    return s;
}

inline std::vector<double> uniform_seed(const Scenario& s, double i0) {
    return std::vector<double>(s.dist.num_classes(), i0);
}

}  // namespace epicampaign::testing
