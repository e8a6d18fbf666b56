#include "epicampaign/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "epicampaign/errors.hpp"

namespace epicampaign {

using nlohmann::json;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // '\n' line endings everywhere
    if (!out) throw ConfigError("cannot open output file: " + path);
    return out;
}

}  // namespace

std::uint64_t fnv1a_hash(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj,
                          const DegreeDistribution& dist, const std::string& prefix,
                          const AggregateSeries* total) {
    auto out = open_out(path);
    out << "t";
    for (int c = 0; c < dist.num_classes(); ++c)
        out << "," << prefix << "_" << dist.degree_of(c);
    if (total != nullptr) out << ",i_total";
    out << "\n";
    for (int j = 0; j < traj.num_points(); ++j) {
        out << fmt(traj.grid()[j]);
        for (int c = 0; c < traj.num_classes(); ++c) out << "," << fmt(traj.at(j, c));
        if (total != nullptr) out << "," << fmt(total->i_total[j]);
        out << "\n";
    }
}

void write_distribution_csv_file(const std::string& path, const DegreeDistribution& dist) {
    auto out = open_out(path);
    write_distribution_csv(out, dist);
}

void write_resource_csv(const std::string& path, const DegreeDistribution& dist,
                        const std::vector<double>& r_norm) {
    auto out = open_out(path);
    out << "k,r_norm_k\n";
    for (int c = 0; c < dist.num_classes(); ++c)
        out << dist.degree_of(c) << "," << fmt(r_norm[c]) << "\n";
}

void write_seed_csv(const std::string& path, const DegreeDistribution& dist,
                    const std::vector<double>& i0) {
    auto out = open_out(path);
    out << "k,i0_k\n";
    for (int c = 0; c < dist.num_classes(); ++c)
        out << dist.degree_of(c) << "," << fmt(i0[c]) << "\n";
}

void write_sim_csv(const std::string& path, const SimOutcome& outcome) {
    auto out = open_out(path);
    out << "t,mean_i,std_i\n";
    for (std::size_t j = 0; j < outcome.grid.size(); ++j)
        out << fmt(outcome.grid[j]) << "," << fmt(outcome.mean_i[j]) << ","
            << fmt(outcome.std_i[j]) << "\n";
}

std::string solve_summary_json(const SolveReport& rep) {
    json j;
    j["J"] = rep.J;
    j["spread_reward"] = rep.spread_reward;
    j["control_cost"] = rep.control_cost;
    j["iterations"] = rep.iterations;
    j["converged"] = rep.converged;
    j["stationarity_residual"] = rep.stationarity_residual;
    return j.dump(2);
}

std::string budget_summary_json(const BudgetReport& rep) {
    json j = json::parse(solve_summary_json(rep.base));
    j["mu_star"] = rep.mu_star;
    j["resource_used"] = rep.resource_used;
    j["budget"] = rep.budget;
    j["gap"] = rep.gap;
    j["bisections"] = rep.bisections;
    return j.dump(2);
}

std::string joint_summary_json(const JointResult& res) {
    json j = json::parse(solve_summary_json(res.report));
    j["outer_iterations"] = res.outer_iterations;
    j["grad_norm"] = res.grad_norm;
    j["seed_budget"] = res.seed.seed_budget;
    j["evaluations"] = res.evaluations;
    return j.dump(2);
}

std::string heuristic_json(const HeuristicResult& res) {
    json j;
    j["kind"] = res.kind == HeuristicResult::Kind::Static ? "static" : "two_stage";
    j["level"] = res.level;
    j["J"] = res.J;
    j["resource_used"] = res.resource_used;
    return j.dump(2);
}

void write_text_file(const std::string& path, const std::string& content) {
    auto out = open_out(path);
    out << content;
    if (content.empty() || content.back() != '\n') out << "\n";
}

void write_provenance(const std::string& data_path, std::uint64_t scenario_hash,
                      std::uint64_t rng_seed, const std::string& scenario_path) {
    json j;
    std::ostringstream hex;
    hex << std::hex << scenario_hash;
    j["scenario_hash"] = hex.str();
    j["scenario_path"] = scenario_path;
    j["rng_seed"] = rng_seed;
    j["version"] = kVersion;
    write_text_file(data_path + ".prov.json", j.dump(2));
}

}  // namespace epicampaign
