#pragma once

#include <cstdint>
#include <string>

#include "epicampaign/budget.hpp"
#include "epicampaign/heuristics.hpp"
#include "epicampaign/joint.hpp"
#include "epicampaign/pmp.hpp"
#include "epicampaign/simulator.hpp"

namespace epicampaign {

inline constexpr const char* kVersion = "1.0.0";

/// FNV-1a over raw bytes; identifies scenario content in provenance records.
std::uint64_t fnv1a_hash(const std::string& bytes);

/// Write `t,<prefix>_<kmin>,...,<prefix>_<kmax>[,i_total]` rows. Doubles are
/// formatted with %.12g so identical inputs give byte-identical files.
void write_trajectory_csv(const std::string& path, const Trajectory& traj,
                          const DegreeDistribution& dist, const std::string& prefix,
                          const AggregateSeries* total = nullptr);

void write_distribution_csv_file(const std::string& path, const DegreeDistribution& dist);

/// `k,r_norm_k` rows.
void write_resource_csv(const std::string& path, const DegreeDistribution& dist,
                        const std::vector<double>& r_norm);

/// `k,i0_k` rows.
void write_seed_csv(const std::string& path, const DegreeDistribution& dist,
                    const std::vector<double>& i0);

/// `t,mean_i,std_i` rows.
void write_sim_csv(const std::string& path, const SimOutcome& outcome);

std::string solve_summary_json(const SolveReport& rep);
std::string budget_summary_json(const BudgetReport& rep);
std::string joint_summary_json(const JointResult& res);
std::string heuristic_json(const HeuristicResult& res);

void write_text_file(const std::string& path, const std::string& content);

/// Provenance record written next to every output file:
/// {scenario_hash, rng_seed, version, scenario_path}.
void write_provenance(const std::string& data_path, std::uint64_t scenario_hash,
                      std::uint64_t rng_seed, const std::string& scenario_path);

}  // namespace epicampaign
