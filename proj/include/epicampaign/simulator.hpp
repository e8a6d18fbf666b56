#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "epicampaign/degree_distribution.hpp"
#include "epicampaign/scenario.hpp"
#include "epicampaign/trajectory.hpp"

namespace epicampaign {

/// Undirected multigraph in adjacency-list form. Self-loops and parallel
/// edges are kept, matching configuration-model semantics.
struct Graph {
    int n = 0;
    std::vector<int> offsets;    // size n + 1
    std::vector<int> neighbors;  // flattened adjacency
    std::vector<int> degree;     // degree[v] == offsets[v+1] - offsets[v]
};

/// Half-edge pairing: sample n degrees i.i.d. from the distribution, give
/// each node that many half edges, pair half edges uniformly at random; an
/// odd leftover half edge is dropped.
Graph build_configuration_graph(const DegreeDistribution& dist, int n, std::uint64_t rng_seed);

/// Graph from string-id edge pairs (ids mapped to dense indices).
Graph graph_from_edge_list(const std::vector<Edge>& edges);

struct SeedRule {
    static SeedRule uniform(double i0);
    /// Per-class probabilities indexed over the distribution support; node
    /// degrees outside the support are never seeded.
    static SeedRule per_class(const DegreeDistribution& dist, std::vector<double> i0k);

    double probability_for_degree(int k) const;

    bool is_uniform = true;
    double i0 = 0.0;
    int k_min = 0;
    std::vector<double> i0k;
};

struct SimOptions {
    int n_runs = 20;
    std::uint64_t rng_seed = 1;
    /// Draw a fresh configuration-model graph each run (ignored when
    /// simulating on a fixed graph).
    bool fresh_graph_per_run = true;
};

struct SimOutcome {
    std::vector<double> grid;
    std::vector<double> mean_i;
    std::vector<double> std_i;  // sample std across runs
    int n_runs = 0;
    std::uint64_t rng_seed = 0;
};

/// Discrete-time SI simulation with step dt = grid spacing. Per step, a
/// susceptible node with m infected neighbors becomes infected with
/// probability 1 - (1 - beta(t) dt)^m; independently, recruitment fires with
/// probability min(gamma(t) u_k(t) dt, 1). Updates are synchronous (nodes
/// infected in a step start spreading the next step). Controls may be null
/// for the uncontrolled process.
SimOutcome simulate_si(const Graph& graph, const Scenario& scn, const Trajectory* controls,
                       const SeedRule& seeds, const SimOptions& opt);

/// Same process on configuration-model draws from `dist` with n nodes;
/// honors opt.fresh_graph_per_run.
SimOutcome simulate_si_config(const DegreeDistribution& dist, int n, const Scenario& scn,
                              const Trajectory* controls, const SeedRule& seeds,
                              const SimOptions& opt);

}  // namespace epicampaign
