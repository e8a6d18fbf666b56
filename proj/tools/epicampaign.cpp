// Command-line front end: loads a scenario, dispatches solver / simulator
// runs, and writes machine-readable CSV/JSON tables plus provenance records.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "epicampaign/budget.hpp"
#include "epicampaign/dynamics.hpp"
#include "epicampaign/errors.hpp"
#include "epicampaign/heuristics.hpp"
#include "epicampaign/io.hpp"
#include "epicampaign/joint.hpp"
#include "epicampaign/pmp.hpp"
#include "epicampaign/scenario.hpp"
#include "epicampaign/simulator.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace epicampaign;

namespace {

struct RunContext {
    Scenario scn;
    std::string scenario_path;
    std::uint64_t scenario_hash = 0;
    fs::path out_dir;
    std::uint64_t rng_seed = 1;

    void emit(const std::string& name, const std::string& content) const {
        auto path = (out_dir / name).string();
        write_text_file(path, content);
        write_provenance(path, scenario_hash, rng_seed, scenario_path);
    }
    std::string path_of(const std::string& name) const { return (out_dir / name).string(); }
    void provenance_for(const std::string& name) const {
        write_provenance(path_of(name), scenario_hash, rng_seed, scenario_path);
    }
};

RunContext make_context(const std::string& scenario_path, const std::string& out_dir,
                        std::uint64_t seed) {
    RunContext ctx;
    ctx.scenario_path = scenario_path;
    std::ifstream in(scenario_path, std::ios::binary);
    if (!in) throw ConfigError("cannot open scenario file: " + scenario_path);
    std::ostringstream ss;
    ss << in.rdbuf();
    ctx.scenario_hash = fnv1a_hash(ss.str());
    ctx.scn = parse_scenario_json(ss.str());
    ctx.out_dir = out_dir;
    fs::create_directories(ctx.out_dir);
    ctx.rng_seed = seed;
    return ctx;
}

void write_solve_outputs(const RunContext& ctx, const SolveReport& rep,
                         const std::string& summary) {
    const auto& scn = ctx.scn;
    auto agg = aggregate(scn.dist, rep.states);
    ctx.emit("summary.json", summary);
    write_trajectory_csv(ctx.path_of("states.csv"), rep.states, scn.dist, "i", &agg);
    ctx.provenance_for("states.csv");
    write_trajectory_csv(ctx.path_of("controls.csv"), rep.controls, scn.dist, "u");
    ctx.provenance_for("controls.csv");
    write_trajectory_csv(ctx.path_of("adjoints.csv"), rep.adjoints, scn.dist, "lambda");
    ctx.provenance_for("adjoints.csv");
    write_resource_csv(ctx.path_of("resource.csv"), scn.dist,
                       normalized_resource(scn, rep.controls));
    ctx.provenance_for("resource.csv");
    write_distribution_csv_file(ctx.path_of("distribution.csv"), scn.dist);
    ctx.provenance_for("distribution.csv");
}

int cmd_solve(const RunContext& ctx) {
    auto i0 = ctx.scn.initial_state();
    SolveReport rep = fbs_solve(ctx.scn, i0);
    write_solve_outputs(ctx, rep, solve_summary_json(rep));
    std::printf("J=%.10g spread=%.10g cost=%.10g iterations=%d converged=%d\n", rep.J,
                rep.spread_reward, rep.control_cost, rep.iterations, rep.converged ? 1 : 0);
    return 0;
}

int cmd_solve_budget(const RunContext& ctx) {
    if (ctx.scn.variant.type != Variant::Type::FixedBudget)
        throw ConfigError("solve-budget requires variant.type = fixed_budget");
    auto i0 = ctx.scn.initial_state();
    BudgetReport rep = budget_solve(ctx.scn, i0, ctx.scn.variant.budget);
    write_solve_outputs(ctx, rep.base, budget_summary_json(rep));
    std::printf("spread=%.10g mu_star=%.10g resource=%.10g gap=%.3g bisections=%d\n",
                rep.base.spread_reward, rep.mu_star, rep.resource_used, rep.gap, rep.bisections);
    return 0;
}

int cmd_solve_joint(const RunContext& ctx) {
    if (ctx.scn.seed.mode != SeedSpec::Mode::Optimize)
        throw ConfigError("solve-joint requires seed.mode = optimize");
    JointResult res = joint_solve(ctx.scn, ctx.scn.seed.seed_budget);
    write_solve_outputs(ctx, res.report, joint_summary_json(res));
    write_seed_csv(ctx.path_of("seed.csv"), ctx.scn.dist, res.seed.i0);
    ctx.provenance_for("seed.csv");
    std::printf("J=%.10g outer_iterations=%d grad_norm=%.3g evaluations=%lld\n", res.report.J,
                res.outer_iterations, res.grad_norm, res.evaluations);
    return 0;
}

int cmd_heuristic(const RunContext& ctx) {
    auto i0 = ctx.scn.initial_state();
    json j;
    if (ctx.scn.variant.type == Variant::Type::FixedBudget) {
        auto [st, ts] = fixed_budget_heuristics(ctx.scn, i0, ctx.scn.variant.budget);
        j["static"] = json::parse(heuristic_json(st));
        j["two_stage"] = json::parse(heuristic_json(ts));
    } else {
        j["static"] = json::parse(heuristic_json(best_static(ctx.scn, i0)));
        j["two_stage"] = json::parse(heuristic_json(best_two_stage(ctx.scn, i0)));
    }
    ctx.emit("heuristics.json", j.dump(2));
    std::printf("static J=%.10g two_stage J=%.10g\n", j["static"]["J"].get<double>(),
                j["two_stage"]["J"].get<double>());
    return 0;
}

SimOutcome run_simulation(const RunContext& ctx, const Trajectory* controls, int nodes, int runs,
                          int fresh_graph) {
    const auto& scn = ctx.scn;
    SimOptions opt;
    opt.n_runs = runs;
    opt.rng_seed = ctx.rng_seed;
    SeedRule seeds = scn.seed.mode == SeedSpec::Mode::Uniform
                         ? SeedRule::uniform(scn.seed.i0)
                         : SeedRule::per_class(scn.dist, scn.initial_state());
    if (scn.network.type == NetworkSpec::Type::Empirical) {
        opt.fresh_graph_per_run = false;
        Graph g = graph_from_edge_list(load_edge_list(scn.network.edge_list_path));
        return simulate_si(g, scn, controls, seeds, opt);
    }
    opt.fresh_graph_per_run = fresh_graph != 0;
    return simulate_si_config(scn.dist, nodes, scn, controls, seeds, opt);
}

int cmd_simulate(const RunContext& ctx, int nodes, int runs, int fresh_graph, bool controlled) {
    SolveReport rep;
    const Trajectory* controls = nullptr;
    if (controlled) {
        rep = fbs_solve(ctx.scn, ctx.scn.initial_state());
        controls = &rep.controls;
    }
    SimOutcome out = run_simulation(ctx, controls, nodes, runs, fresh_graph);
    write_sim_csv(ctx.path_of("sim.csv"), out);
    ctx.provenance_for("sim.csv");
    json j;
    j["n_runs"] = out.n_runs;
    j["rng_seed"] = out.rng_seed;
    j["mean_i_T"] = out.mean_i.back();
    j["std_i_T"] = out.std_i.back();
    j["controlled"] = controlled;
    ctx.emit("simulate.json", j.dump(2));
    std::printf("mean_i(T)=%.6g std_i(T)=%.6g runs=%d\n", out.mean_i.back(), out.std_i.back(),
                out.n_runs);
    return 0;
}

int cmd_validate(const RunContext& ctx, int nodes, int runs, int fresh_graph) {
    const auto& scn = ctx.scn;
    auto states = integrate_state(scn, zero_controls(scn), scn.initial_state());
    auto agg = aggregate(scn.dist, states);
    SimOutcome out = run_simulation(ctx, nullptr, nodes, runs, fresh_graph);

    write_trajectory_csv(ctx.path_of("model.csv"), states, scn.dist, "i", &agg);
    ctx.provenance_for("model.csv");
    write_sim_csv(ctx.path_of("sim.csv"), out);
    ctx.provenance_for("sim.csv");

    double gap = std::abs(out.mean_i.back() - agg.i_total.back());
    double tol = 3.0 * (out.std_i.back() / std::sqrt(static_cast<double>(out.n_runs)) + 0.005);
    json j;
    j["model_i_T"] = agg.i_total.back();
    j["sim_mean_i_T"] = out.mean_i.back();
    j["terminal_gap"] = gap;
    j["tolerance"] = tol;
    j["pass"] = gap < tol;
    ctx.emit("validate.json", j.dump(2));
    std::printf("model i(T)=%.6g sim mean=%.6g gap=%.6g tol=%.6g pass=%d\n",
                agg.i_total.back(), out.mean_i.back(), gap, tol, gap < tol ? 1 : 0);
    return 0;
}

int cmd_check(const RunContext& ctx) {
    auto i0 = ctx.scn.initial_state();
    SolveReport rep = fbs_solve(ctx.scn, i0);
    double u_M = rep.controls.max_abs();
    double Lambda = rep.adjoints.max_abs();
    auto conv = check_convergence_bound(ctx.scn, u_M, Lambda);
    auto uniq = check_uniqueness(ctx.scn, Lambda);
    json j;
    j["u_M"] = u_M;
    j["Lambda"] = Lambda;
    j["convergence"] = {{"lhs", conv.lhs}, {"sufficient_condition_holds", conv.holds}};
    j["uniqueness"] = {{"lhs", uniq.lhs}, {"sufficient_condition_holds", uniq.holds}};
    ctx.emit("check.json", j.dump(2));
    std::printf("convergence lhs=%.6g holds=%d; uniqueness lhs=%.6g holds=%d\n", conv.lhs,
                conv.holds ? 1 : 0, uniq.lhs, uniq.holds ? 1 : 0);
    return 0;
}

std::string fmt_or_empty(double v, bool present) {
    if (!present) return "";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

Scenario scenario_with_param(const Scenario& base, const std::string& param, double value) {
    Scenario s = base;
    if (param == "b") {
        s.cost.b = value;
    } else if (param == "beta") {
        if (base.beta.kind() != TimeProfile::Kind::Constant)
            throw ConfigError("sweep over beta requires a constant beta profile");
        s.beta = TimeProfile::constant(value);
        if (!s.gamma_overridden) s.gamma = s.beta.scaled(10.0);
    } else if (param == "i0") {
        if (base.seed.mode != SeedSpec::Mode::Uniform)
            throw ConfigError("sweep over i0 requires seed.mode = uniform");
        s.seed.i0 = value;
    } else if (param == "B") {
        if (base.variant.type != Variant::Type::FixedBudget)
            throw ConfigError("sweep over B requires variant.type = fixed_budget");
        s.variant.budget = value;
    } else if (param == "B_i0") {
        if (base.seed.mode != SeedSpec::Mode::Optimize)
            throw ConfigError("sweep over B_i0 requires seed.mode = optimize");
        s.seed.seed_budget = value;
    } else {
        throw ConfigError("unknown sweep parameter '" + param + "' (use b|beta|i0|B|B_i0)");
    }
    s.validate();
    return s;
}

std::string pct_improvement(double j_opt, double j_heur) {
    char buf[40];
    // Guard the vanishing denominator: report the absolute difference there.
    if (std::abs(j_heur) < 1e-12)
        std::snprintf(buf, sizeof(buf), "%.12g", j_opt - j_heur);
    else
        std::snprintf(buf, sizeof(buf), "%.12g", 100.0 * (j_opt - j_heur) / std::abs(j_heur));
    return buf;
}

int cmd_sweep(const RunContext& ctx, const std::string& param, const std::string& values_csv) {
    std::vector<double> values;
    std::stringstream vs(values_csv);
    std::string tok;
    while (std::getline(vs, tok, ',')) {
        if (tok.empty()) continue;
        values.push_back(std::stod(tok));
    }
    if (values.empty()) throw ConfigError("sweep requires --sweep-values");

    std::ostringstream csv;
    csv << "param,value,J_uncontrolled,J_static,J_two_stage,J_optimal,J_joint,"
           "pct_opt_over_static,pct_opt_over_two_stage\n";
    for (double v : values) {
        Scenario s = scenario_with_param(ctx.scn, param, v);
        auto i0 = s.initial_state();
        const bool budgeted = s.variant.type == Variant::Type::FixedBudget;

        double j_unc = evaluate_reward(s, zero_controls(s), i0).spread;
        double j_static, j_two, j_opt;
        double j_joint = 0.0;
        bool have_joint = false;
        json point;

        if (budgeted) {
            auto [st, ts] = fixed_budget_heuristics(s, i0, s.variant.budget);
            BudgetReport rep = budget_solve(s, i0, s.variant.budget);
            j_static = st.J;
            j_two = ts.J;
            j_opt = rep.base.spread_reward;
            point["optimal"] = json::parse(budget_summary_json(rep));
        } else {
            auto st = best_static(s, i0);
            auto ts = best_two_stage(s, i0);
            SolveReport rep = fbs_solve(s, i0);
            for (double damping : {0.5, 0.25}) {
                if (rep.converged) break;
                s.sweep.damping = damping;
                s.sweep.n_sweep = damping == 0.5 ? 120 : 240;
                rep = fbs_solve(s, i0);
            }
            j_static = st.J;
            j_two = ts.J;
            j_opt = rep.J;
            JointResult jr = joint_solve(s, s.initial_fraction());
            j_joint = jr.report.J;
            have_joint = true;
            point["optimal"] = json::parse(solve_summary_json(rep));
            point["joint"] = json::parse(joint_summary_json(jr));
        }
        point["param"] = param;
        point["value"] = v;
        point["J_uncontrolled"] = j_unc;
        point["J_static"] = j_static;
        point["J_two_stage"] = j_two;

        char row[512];
        std::snprintf(row, sizeof(row), "%s,%.12g,%.12g,%.12g,%.12g,%.12g", param.c_str(), v,
                      j_unc, j_static, j_two, j_opt);
        csv << row << "," << fmt_or_empty(j_joint, have_joint) << ","
            << pct_improvement(j_opt, j_static) << "," << pct_improvement(j_opt, j_two) << "\n";

        char name[128];
        std::snprintf(name, sizeof(name), "point_%s_%.12g.json", param.c_str(), v);
        ctx.emit(name, point.dump(2));
    }
    write_text_file(ctx.path_of("sweep.csv"), csv.str());
    ctx.provenance_for("sweep.csv");
    std::printf("sweep over %s: %zu points written\n", param.c_str(), values.size());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optimal campaigning-resource allocation over time and degree classes"};
    app.require_subcommand(1);

    std::string scenario_path, out_dir = ".", sweep_param, sweep_values;
    std::uint64_t seed = 1;
    int nodes = 10000, runs = 20, fresh_graph = 1;
    bool controlled = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--scenario", scenario_path, "scenario JSON file")->required();
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--seed", seed, "RNG seed");
    };

    auto* solve = app.add_subcommand("solve", "fixed-seed optimal control");
    auto* solve_budget = app.add_subcommand("solve-budget", "fixed-budget optimal control");
    auto* solve_joint = app.add_subcommand("solve-joint", "joint seed and control optimization");
    auto* heuristic = app.add_subcommand("heuristic", "best static and two-stage baselines");
    auto* simulate = app.add_subcommand("simulate", "agent-based SI simulation");
    auto* validate = app.add_subcommand("validate", "mean-field model vs simulation");
    auto* check = app.add_subcommand("check", "convergence and uniqueness bounds");
    auto* sweep = app.add_subcommand("sweep", "parameter sweep producing J-vs-parameter CSV");

    for (auto* sub : {solve, solve_budget, solve_joint, heuristic, simulate, validate, check, sweep})
        add_common(sub);
    for (auto* sub : {simulate, validate}) {
        sub->add_option("--nodes", nodes, "nodes in generated graphs");
        sub->add_option("--runs", runs, "Monte Carlo runs");
        sub->add_option("--fresh-graph", fresh_graph, "redraw the graph each run (0/1)");
    }
    simulate->add_flag("--controlled", controlled, "apply optimal controls during simulation");
    sweep->add_option("--sweep-param", sweep_param, "parameter name (b|beta|i0|B|B_i0)")
        ->required();
    sweep->add_option("--sweep-values", sweep_values, "comma-separated values")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        RunContext ctx = make_context(scenario_path, out_dir, seed);
        if (solve->parsed()) return cmd_solve(ctx);
        if (solve_budget->parsed()) return cmd_solve_budget(ctx);
        if (solve_joint->parsed()) return cmd_solve_joint(ctx);
        if (heuristic->parsed()) return cmd_heuristic(ctx);
        if (simulate->parsed()) return cmd_simulate(ctx, nodes, runs, fresh_graph, controlled);
        if (validate->parsed()) return cmd_validate(ctx, nodes, runs, fresh_graph);
        if (check->parsed()) return cmd_check(ctx);
        if (sweep->parsed()) return cmd_sweep(ctx, sweep_param, sweep_values);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const BracketError& e) {
        std::cerr << "bracket error: " << e.what() << "\n";
        return 3;
    } catch (const IntegrationError& e) {
        std::cerr << "integration error: " << e.what() << "\n";
        return 4;
    } catch (const IngestionError& e) {
        std::cerr << "ingestion error: " << e.what() << "\n";
        return 5;
    } catch (const ParameterError& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return 6;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
