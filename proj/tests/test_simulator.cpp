#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "epicampaign/errors.hpp"
#include "epicampaign/heuristics.hpp"
#include "epicampaign/pmp.hpp"
#include "epicampaign/simulator.hpp"
#include "helpers.hpp"

using namespace epicampaign;
using namespace epicampaign::testing;

TEST_CASE("regular degree sampling yields a 2-regular multigraph") {
    auto d = DegreeDistribution::from_probabilities(2, {1.0});
    auto g = build_configuration_graph(d, 10, 42);
    REQUIRE(g.n == 10);
    int total = std::accumulate(g.degree.begin(), g.degree.end(), 0);
    CHECK(total == 20);  // 2 per node, even half-edge count, nothing dropped
    for (int v = 0; v < g.n; ++v) CHECK(g.degree[v] == 2);
}

TEST_CASE("graph generation is deterministic in the seed") {
    auto d = build_powerlaw(2.0, 3, 20);
    auto g1 = build_configuration_graph(d, 500, 7);
    auto g2 = build_configuration_graph(d, 500, 7);
    CHECK(g1.neighbors == g2.neighbors);
    auto g3 = build_configuration_graph(d, 500, 8);
    CHECK(g1.neighbors != g3.neighbors);
}

TEST_CASE("sampled degree histogram stays close to the target distribution") {
    auto d = build_powerlaw(2.0, 14, 120);
    auto g = build_configuration_graph(d, 10000, 123);
    std::vector<double> hist(d.num_classes(), 0.0);
    int in_support = 0;
    for (int v = 0; v < g.n; ++v) {
        int k = g.degree[v];
        // One node may have lost the dropped half edge.
        if (k >= d.k_min() && k <= d.k_max()) {
            hist[k - d.k_min()] += 1.0;
            ++in_support;
        }
    }
    CHECK(g.n - in_support <= 1);
    double tv = 0.0;
    for (int c = 0; c < d.num_classes(); ++c)
        tv += std::abs(hist[c] / in_support - d.p(c));
    CHECK(tv / 2.0 < 0.05);
}

TEST_CASE("edge-list graphs keep self-loops and multi-edges") {
    auto g = graph_from_edge_list({{"a", "b"}, {"a", "b"}, {"c", "c"}});
    REQUIRE(g.n == 3);
    CHECK(g.degree[0] == 2);
    CHECK(g.degree[1] == 2);
    CHECK(g.degree[2] == 2);  // self-loop counts twice
}

TEST_CASE("frozen dynamics when beta = 0 and no controls") {
    auto s = toy_two_class(21, 0.0);
    auto d = DegreeDistribution::from_probabilities(3, {1.0});
    auto g = build_configuration_graph(d, 300, 5);
    SimOptions opt;
    opt.n_runs = 4;
    opt.rng_seed = 9;
    auto out = simulate_si(g, s, nullptr, SeedRule::uniform(0.2), opt);
    for (double v : out.mean_i) CHECK(v == doctest::Approx(out.mean_i.front()).epsilon(1e-15));
}

TEST_CASE("saturated start stays saturated") {
    auto s = er_default(0.07, 25.0, 21);
    auto g = build_configuration_graph(s.dist, 200, 11);
    SimOptions opt;
    opt.n_runs = 2;
    opt.rng_seed = 4;
    auto out = simulate_si(g, s, nullptr, SeedRule::uniform(1.0), opt);
    for (double v : out.mean_i) CHECK(v == doctest::Approx(1.0));
}

TEST_CASE("mean infected fraction is non-decreasing and reproducible") {
    auto s = pl2_default(0.07, 25.0, 101);
    SimOptions opt;
    opt.n_runs = 5;
    opt.rng_seed = 31;
    opt.fresh_graph_per_run = true;
    auto a = simulate_si_config(s.dist, 2000, s, nullptr, SeedRule::uniform(0.01), opt);
    auto b = simulate_si_config(s.dist, 2000, s, nullptr, SeedRule::uniform(0.01), opt);
    CHECK(a.mean_i == b.mean_i);
    CHECK(a.std_i == b.std_i);
    for (size_t j = 0; j + 1 < a.mean_i.size(); ++j) CHECK(a.mean_i[j + 1] >= a.mean_i[j]);
}

TEST_CASE("monte carlo error shrinks roughly as one over sqrt(runs)") {
    auto s = er_default(0.14, 25.0, 101);
    auto g = build_configuration_graph(s.dist, 1000, 77);

    auto batch_std = [&](int runs_per_batch, int batches, std::uint64_t seed0) {
        std::vector<double> means;
        for (int b = 0; b < batches; ++b) {
            SimOptions opt;
            opt.n_runs = runs_per_batch;
            opt.rng_seed = seed0 + b;
            auto out = simulate_si(g, s, nullptr, SeedRule::uniform(0.01), opt);
            means.push_back(out.mean_i.back());
        }
        double m = std::accumulate(means.begin(), means.end(), 0.0) / means.size();
        double v = 0.0;
        for (double x : means) v += (x - m) * (x - m);
        return std::sqrt(v / (means.size() - 1));
    };

    double s5 = batch_std(5, 12, 1000);
    double s20 = batch_std(20, 12, 5000);
    double ratio = s5 / s20;  // expect about sqrt(4) = 2
    CHECK(ratio > 1.2);
    CHECK(ratio < 3.5);
}

TEST_CASE("per-class seeding only touches the requested classes") {
    auto s = pl2_default(0.07, 25.0, 21);
    auto g = build_configuration_graph(s.dist, 3000, 13);
    std::vector<double> i0k(s.dist.num_classes(), 0.0);
    i0k.back() = 1.0;  // only the top degree class is seeded
    SimOptions opt;
    opt.n_runs = 1;
    opt.rng_seed = 2;
    auto s0 = s;
    s0.beta = TimeProfile::constant(0.0);
    s0.gamma = TimeProfile::constant(0.0);
    s0.gamma_overridden = true;
    auto out = simulate_si(g, s0, nullptr, SeedRule::per_class(s.dist, i0k), opt);
    int top = 0;
    for (int v = 0; v < g.n; ++v)
        if (g.degree[v] == s.dist.k_max()) ++top;
    CHECK(out.mean_i.front() == doctest::Approx(static_cast<double>(top) / g.n).epsilon(1e-12));
}

TEST_CASE("recruitment control infects susceptibles without contact spread") {
    auto s = toy_two_class(101, 0.0);  // beta = 0: only recruitment acts
    s.gamma = TimeProfile::constant(1.0);
    s.gamma_overridden = true;
    auto d = s.dist;
    auto g = build_configuration_graph(d, 4000, 21);
    Trajectory u(s.time_grid(), d.num_classes(), 0.5);
    SimOptions opt;
    opt.n_runs = 8;
    opt.rng_seed = 17;
    auto out = simulate_si(g, s, &u, SeedRule::uniform(0.0), opt);
    // Hazard gamma*u = 0.5 over T = 1: expect about 1 - exp(-0.5) infected.
    CHECK(out.mean_i.front() == 0.0);
    CHECK(out.mean_i.back() == doctest::Approx(1.0 - std::exp(-0.5)).epsilon(0.05));
}

TEST_CASE("step-size guard rejects beta dt > 1") {
    auto s = toy_two_class(3, 300.0);  // dt = 0.5, beta dt = 150
    auto g = build_configuration_graph(s.dist, 50, 3);
    SimOptions opt;
    opt.n_runs = 1;
    CHECK_THROWS_AS(static_cast<void>(simulate_si(g, s, nullptr, SeedRule::uniform(0.1), opt)),
                    ParameterError);
}

TEST_CASE("simulated reward ordering: optimal vs static controls (PL2 defaults)") {
    auto s = pl2_default(0.07, 25.0, 201);
    auto i0 = uniform_seed(s, 0.01);
    auto rep = fbs_solve(s, i0);
    auto st = best_static(s, i0);
    auto u_static = constant_control(s, st.level);

    SimOptions opt;
    opt.n_runs = 40;
    opt.rng_seed = 71;
    opt.fresh_graph_per_run = true;
    auto seeds = SeedRule::uniform(0.01);
    auto sim_opt = simulate_si_config(s.dist, 2000, s, &rep.controls, seeds, opt);
    auto sim_st = simulate_si_config(s.dist, 2000, s, &u_static, seeds, opt);

    double j_opt = sim_opt.mean_i.back() - rep.control_cost;
    double j_st = sim_st.mean_i.back() - st.resource_used;
    double mc = 3.0 * (sim_opt.std_i.back() + sim_st.std_i.back()) / std::sqrt(40.0);
    CHECK(j_opt >= j_st - mc);
}
