#include "epicampaign/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <unordered_map>

#include "epicampaign/errors.hpp"

namespace epicampaign {

namespace {

// splitmix64; used to derive independent per-run streams from (seed, index).
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    return mix64(base ^ mix64(index + 1));
}

// Explicit uniform helpers keep results identical across standard libraries.
double uniform01(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

std::uint64_t uniform_below(std::mt19937_64& eng, std::uint64_t n) {
    // Rejection sampling on the top range to avoid modulo bias.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v;
    do {
        v = eng();
    } while (v >= limit);
    return v % n;
}

Graph graph_from_degree_sequence(const std::vector<int>& deg, std::mt19937_64& eng) {
    const int n = static_cast<int>(deg.size());
    std::vector<int> half;
    std::size_t total = 0;
    for (int d : deg) total += d;
    half.reserve(total);
    for (int v = 0; v < n; ++v)
        for (int r = 0; r < deg[v]; ++r) half.push_back(v);

    // Fisher-Yates; pairing consecutive entries of a uniform shuffle is a
    // uniform pairing of half edges.
    for (std::size_t i = half.size(); i > 1; --i) {
        std::size_t j = uniform_below(eng, i);
        std::swap(half[i - 1], half[j]);
    }
    std::size_t m = half.size() / 2;  // odd leftover half edge is ignored

    Graph g;
    g.n = n;
    g.degree.assign(n, 0);
    for (std::size_t e = 0; e < m; ++e) {
        ++g.degree[half[2 * e]];
        ++g.degree[half[2 * e + 1]];
    }
    g.offsets.assign(n + 1, 0);
    for (int v = 0; v < n; ++v) g.offsets[v + 1] = g.offsets[v] + g.degree[v];
    g.neighbors.resize(g.offsets.back());
    std::vector<int> cursor(g.offsets.begin(), g.offsets.end() - 1);
    for (std::size_t e = 0; e < m; ++e) {
        int a = half[2 * e], b = half[2 * e + 1];
        g.neighbors[cursor[a]++] = b;
        g.neighbors[cursor[b]++] = a;
    }
    return g;
}

}  // namespace

Graph build_configuration_graph(const DegreeDistribution& dist, int n, std::uint64_t rng_seed) {
    if (n < 2) throw ParameterError("configuration graph needs n >= 2 nodes");
    std::mt19937_64 eng(derive_seed(rng_seed, 0));

    std::vector<double> cdf(dist.num_classes());
    double acc = 0.0;
    for (int c = 0; c < dist.num_classes(); ++c) {
        acc += dist.p(c);
        cdf[c] = acc;
    }
    cdf.back() = 1.0;

    std::vector<int> deg(n);
    for (int v = 0; v < n; ++v) {
        double r = uniform01(eng);
        int c = static_cast<int>(std::lower_bound(cdf.begin(), cdf.end(), r) - cdf.begin());
        deg[v] = dist.degree_of(std::min(c, dist.num_classes() - 1));
    }
    return graph_from_degree_sequence(deg, eng);
}

Graph graph_from_edge_list(const std::vector<Edge>& edges) {
    if (edges.empty()) throw IngestionError("edge list is empty");
    std::unordered_map<std::string, int> ids;
    auto id_of = [&](const std::string& name) {
        auto [it, inserted] = ids.emplace(name, static_cast<int>(ids.size()));
        return it->second;
    };
    std::vector<std::pair<int, int>> es;
    es.reserve(edges.size());
    for (const auto& [a, b] : edges) es.emplace_back(id_of(a), id_of(b));

    Graph g;
    g.n = static_cast<int>(ids.size());
    g.degree.assign(g.n, 0);
    for (auto [a, b] : es) {
        ++g.degree[a];
        ++g.degree[b];
    }
    g.offsets.assign(g.n + 1, 0);
    for (int v = 0; v < g.n; ++v) g.offsets[v + 1] = g.offsets[v] + g.degree[v];
    g.neighbors.resize(g.offsets.back());
    std::vector<int> cursor(g.offsets.begin(), g.offsets.end() - 1);
    for (auto [a, b] : es) {
        g.neighbors[cursor[a]++] = b;
        g.neighbors[cursor[b]++] = a;
    }
    return g;
}

SeedRule SeedRule::uniform(double i0) {
    if (i0 < 0.0 || i0 > 1.0) throw ParameterError("seed probability must lie in [0, 1]");
    SeedRule r;
    r.is_uniform = true;
    r.i0 = i0;
    return r;
}

SeedRule SeedRule::per_class(const DegreeDistribution& dist, std::vector<double> i0k) {
    if (static_cast<int>(i0k.size()) != dist.num_classes())
        throw ParameterError("per-class seed vector size does not match the degree support");
    SeedRule r;
    r.is_uniform = false;
    r.k_min = dist.k_min();
    r.i0k = std::move(i0k);
    return r;
}

double SeedRule::probability_for_degree(int k) const {
    if (is_uniform) return i0;
    int c = k - k_min;
    if (c < 0 || c >= static_cast<int>(i0k.size())) return 0.0;
    return i0k[c];
}

namespace {

struct RunAccumulator {
    std::vector<double> sum;
    std::vector<double> sumsq;
    void add(const std::vector<double>& series) {
        if (sum.empty()) {
            sum.assign(series.size(), 0.0);
            sumsq.assign(series.size(), 0.0);
        }
        for (std::size_t j = 0; j < series.size(); ++j) {
            sum[j] += series[j];
            sumsq[j] += series[j] * series[j];
        }
    }
};

std::vector<double> run_once(const Graph& g, const Scenario& scn, const Trajectory* controls,
                             const SeedRule& seeds, std::mt19937_64& eng,
                             const std::vector<double>& beta_grid,
                             const std::vector<double>& gamma_grid) {
    const auto grid = scn.time_grid();
    const int n_pts = static_cast<int>(grid.size());
    const double dt = scn.T / (n_pts - 1);
    const int kmin = scn.dist.k_min();
    const int kmax = scn.dist.k_max();

    std::vector<char> infected(g.n, 0);
    std::vector<int> inf_neighbors(g.n, 0);
    std::vector<int> newly;

    int count = 0;
    for (int v = 0; v < g.n; ++v) {
        if (uniform01(eng) < seeds.probability_for_degree(g.degree[v])) {
            infected[v] = 1;
            ++count;
        }
    }
    for (int v = 0; v < g.n; ++v)
        if (infected[v])
            for (int e = g.offsets[v]; e < g.offsets[v + 1]; ++e) ++inf_neighbors[g.neighbors[e]];

    std::vector<double> series(n_pts);
    series[0] = static_cast<double>(count) / g.n;

    for (int j = 0; j + 1 < n_pts; ++j) {
        const double bdt = beta_grid[j] * dt;
        newly.clear();
        for (int v = 0; v < g.n; ++v) {
            if (infected[v]) continue;
            bool hit = false;
            if (inf_neighbors[v] > 0) {
                double p_contact = 1.0 - std::pow(1.0 - bdt, inf_neighbors[v]);
                hit = uniform01(eng) < p_contact;
            }
            if (!hit && controls != nullptr) {
                int k = g.degree[v];
                if (k >= kmin && k <= kmax) {
                    double u = controls->at(j, k - kmin);
                    if (u > 0.0) {
                        double p_rec = std::min(gamma_grid[j] * u * dt, 1.0);
                        hit = uniform01(eng) < p_rec;
                    }
                }
            }
            if (hit) newly.push_back(v);
        }
        for (int v : newly) {
            infected[v] = 1;
            ++count;
            for (int e = g.offsets[v]; e < g.offsets[v + 1]; ++e) ++inf_neighbors[g.neighbors[e]];
        }
        series[j + 1] = static_cast<double>(count) / g.n;
    }
    return series;
}

SimOutcome simulate_core(const Graph* fixed_graph, const DegreeDistribution* dist, int n,
                         const Scenario& scn, const Trajectory* controls, const SeedRule& seeds,
                         const SimOptions& opt) {
    if (opt.n_runs < 1) throw ParameterError("n_runs must be >= 1");
    const auto grid = scn.time_grid();
    const double dt = scn.T / (scn.n_grid - 1);
    const auto beta_grid = sample_profile(scn.beta, grid);
    const auto gamma_grid = sample_profile(scn.gamma, grid);
    for (double b : beta_grid)
        if (b * dt > 1.0)
            throw ParameterError(
                "beta(t) * dt exceeds 1; refine the time grid before simulating");
    if (controls != nullptr &&
        (controls->num_points() != scn.n_grid ||
         controls->num_classes() != scn.dist.num_classes()))
        throw ParameterError("controls are not sampled on the scenario grid");

    Graph shared;
    if (fixed_graph == nullptr && !opt.fresh_graph_per_run)
        shared = build_configuration_graph(*dist, n, derive_seed(opt.rng_seed, 0x67726170ULL));

    RunAccumulator acc;
    for (int run = 0; run < opt.n_runs; ++run) {
        std::mt19937_64 eng(derive_seed(opt.rng_seed, 1000 + run));
        const Graph* g = fixed_graph;
        Graph fresh;
        if (g == nullptr) {
            if (opt.fresh_graph_per_run) {
                fresh = build_configuration_graph(*dist, n,
                                                  derive_seed(opt.rng_seed, 2000 + run));
                g = &fresh;
            } else {
                g = &shared;
            }
        }
        acc.add(run_once(*g, scn, controls, seeds, eng, beta_grid, gamma_grid));
    }

    SimOutcome out;
    out.grid = grid;
    out.n_runs = opt.n_runs;
    out.rng_seed = opt.rng_seed;
    out.mean_i.resize(grid.size());
    out.std_i.assign(grid.size(), 0.0);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        double mean = acc.sum[j] / opt.n_runs;
        out.mean_i[j] = mean;
        if (opt.n_runs > 1) {
            double var = (acc.sumsq[j] - opt.n_runs * mean * mean) / (opt.n_runs - 1);
            out.std_i[j] = std::sqrt(std::max(var, 0.0));
        }
    }
    return out;
}

}  // namespace

SimOutcome simulate_si(const Graph& graph, const Scenario& scn, const Trajectory* controls,
                       const SeedRule& seeds, const SimOptions& opt) {
    return simulate_core(&graph, nullptr, 0, scn, controls, seeds, opt);
}

SimOutcome simulate_si_config(const DegreeDistribution& dist, int n, const Scenario& scn,
                              const Trajectory* controls, const SeedRule& seeds,
                              const SimOptions& opt) {
    return simulate_core(nullptr, &dist, n, scn, controls, seeds, opt);
}

}  // namespace epicampaign
