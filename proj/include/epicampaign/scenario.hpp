#pragma once

#include <optional>
#include <string>
#include <vector>

#include "epicampaign/degree_distribution.hpp"
#include "epicampaign/time_profile.hpp"

namespace epicampaign {

/// Quadratic control cost g_k(u) = c_k u^2 with c_k = b p_k. The solver only
/// touches g through g' and its inverse, so other strictly convex even costs
/// can slot in later.
struct CostModel {
    double b = 25.0;
    double coefficient(double p_k) const { return b * p_k; }
};

struct SeedSpec {
    enum class Mode { Uniform, Vector, Optimize };
    Mode mode = Mode::Uniform;
    double i0 = 0.01;                // Uniform
    std::vector<double> i0_vector;   // Vector, one entry per degree class
    double seed_budget = 0.01;       // Optimize: B_i0
};

struct Variant {
    enum class Type { FixedSeed, FixedBudget, Joint };
    Type type = Type::FixedSeed;
    double budget = 0.1;  // FixedBudget: B
};

struct SweepSettings {
    int n_sweep = 30;
    double fixed_point_tol = 1e-6;
    double damping = 1.0;  // control-update relaxation; 1 = direct replacement
};

/// How the degree distribution was specified (kept for serialization).
struct NetworkSpec {
    enum class Type { Poisson, Powerlaw, Empirical };
    Type type = Type::Powerlaw;
    double lambda = 0.0;  // Poisson
    double alpha = 0.0;   // Powerlaw
    int k_min = 0;
    int k_max = 0;
    std::string edge_list_path;  // Empirical
};

/// Full problem description: network, horizon, grid, rate profiles, cost,
/// seeding and problem variant. Immutable after construction; shareable
/// across concurrent solves.
struct Scenario {
    NetworkSpec network;
    DegreeDistribution dist;
    double T = 1.0;
    int n_grid = 201;
    TimeProfile beta = TimeProfile::constant(0.07);
    TimeProfile gamma = TimeProfile::constant(0.7);
    bool gamma_overridden = false;  // false: gamma tracks 10 * beta
    CostModel cost;
    SeedSpec seed;
    Variant variant;
    SweepSettings sweep;

    std::vector<double> time_grid() const;

    /// Resolve the seed spec to a per-class initial state. For Optimize mode
    /// this is the uniform feasible start i0_k = B_i0.
    std::vector<double> initial_state() const;

    /// Total initial infected fraction sum_k p_k i0_k.
    double initial_fraction() const;

    void validate() const;
};

/// Load and validate a scenario from the JSON schema described in README.
Scenario load_scenario(const std::string& path);
Scenario parse_scenario_json(const std::string& text);
std::string scenario_to_json(const Scenario& scn);

}  // namespace epicampaign
