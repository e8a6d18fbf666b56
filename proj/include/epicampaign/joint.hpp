#pragma once

#include <span>
#include <vector>

#include "epicampaign/pmp.hpp"

namespace epicampaign {

struct SeedVector {
    std::vector<double> i0;  // per degree class, in [0, 1]
    double seed_budget = 0.0;  // B_i0 = sum_k p_k i0_k
};

struct JointOptions {
    int max_outer = 100;
    double fd_step = 1e-4;
    double grad_tol = 1e-5;       // projected-gradient norm stop
    double improvement_tol = 1e-8;
    int multi_starts = 1;         // extra random feasible starts beyond uniform
    unsigned long long start_seed = 1;
};

struct JointResult {
    SeedVector seed;
    SolveReport report;
    int outer_iterations = 0;
    double grad_norm = 0.0;  // projected-gradient norm at the final iterate
    long long evaluations = 0;  // inner fbs_solve calls
};

/// Euclidean projection of v onto {0 <= x_k <= 1, sum_k p_k x_k = B_i0},
/// computed by bisection on the shift tau in x_k = clip(v_k - tau p_k, 0, 1).
SeedVector project_to_seed_simplex(std::span<const double> v, const DegreeDistribution& dist,
                                   double B_i0);

/// Joint seed-and-control optimization: projected finite-difference gradient
/// ascent on J(i0) with backtracking line search, polished by coordinate-pair
/// budget exchanges; every objective evaluation is a full fbs_solve from
/// u = 0. Deterministic given the options. Starts from the uniform feasible
/// seed i0_k = B_i0.
JointResult joint_solve(const Scenario& scn, double B_i0, const JointOptions& opt = {});

}  // namespace epicampaign
