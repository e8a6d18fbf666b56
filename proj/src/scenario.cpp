#include "epicampaign/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "epicampaign/errors.hpp"

namespace epicampaign {

using nlohmann::json;

std::vector<double> Scenario::time_grid() const {
    std::vector<double> g(n_grid);
    double h = T / (n_grid - 1);
    for (int j = 0; j < n_grid; ++j) g[j] = j * h;
    g.back() = T;
    return g;
}

std::vector<double> Scenario::initial_state() const {
    int K = dist.num_classes();
    switch (seed.mode) {
        case SeedSpec::Mode::Uniform:
            return std::vector<double>(K, seed.i0);
        case SeedSpec::Mode::Vector:
            return seed.i0_vector;
        case SeedSpec::Mode::Optimize:
            return std::vector<double>(K, seed.seed_budget);
    }
    return {};
}

double Scenario::initial_fraction() const {
    auto i0 = initial_state();
    double s = 0.0;
    for (int c = 0; c < dist.num_classes(); ++c) s += dist.p(c) * i0[c];
    return s;
}

void Scenario::validate() const {
    if (!(T > 0.0) || !std::isfinite(T)) throw ConfigError("field 'T' must be positive");
    if (n_grid < 2) throw ConfigError("field 'n_grid' must be >= 2");
    if (!(cost.b > 0.0) || !std::isfinite(cost.b))
        throw ConfigError("field 'cost.b' must be positive");
    if (sweep.n_sweep < 1) throw ConfigError("field 'sweep.n_sweep' must be >= 1");
    if (!(sweep.fixed_point_tol > 0.0))
        throw ConfigError("field 'sweep.fixed_point_tol' must be positive");
    if (!(sweep.damping > 0.0) || sweep.damping > 1.0)
        throw ConfigError("field 'sweep.damping' must lie in (0, 1]");

    switch (seed.mode) {
        case SeedSpec::Mode::Uniform:
            if (seed.i0 < 0.0 || seed.i0 > 1.0)
                throw ConfigError("field 'seed.i0' must lie in [0, 1]");
            break;
        case SeedSpec::Mode::Vector:
            if (static_cast<int>(seed.i0_vector.size()) != dist.num_classes())
                throw ConfigError("field 'seed.i0_vector' length must match the degree support");
            for (double v : seed.i0_vector)
                if (v < 0.0 || v > 1.0)
                    throw ConfigError("field 'seed.i0_vector' entries must lie in [0, 1]");
            break;
        case SeedSpec::Mode::Optimize:
            if (!(seed.seed_budget > 0.0) || seed.seed_budget > 1.0)
                throw ConfigError("field 'seed.B_i0' must lie in (0, 1]");
            break;
    }
    if (variant.type == Variant::Type::FixedBudget && !(variant.budget > 0.0))
        throw ConfigError("field 'variant.B' must be positive");
    if (variant.type == Variant::Type::Joint && seed.mode != SeedSpec::Mode::Optimize)
        throw ConfigError("variant 'joint' requires seed mode 'optimize'");

    // Profiles must be finite and non-negative over the horizon.
    const int probe = 8 * n_grid;
    for (int j = 0; j <= probe; ++j) {
        double t = T * j / probe;
        double bv = beta.value(t), gv = gamma.value(t);
        if (!std::isfinite(bv) || bv < 0.0)
            throw ConfigError("field 'beta' must be finite and >= 0 on [0, T]");
        if (!std::isfinite(gv) || gv < 0.0)
            throw ConfigError("field 'gamma' must be finite and >= 0 on [0, T]");
    }
}

namespace {

const json& require(const json& obj, const char* field, const char* ctx) {
    auto it = obj.find(field);
    if (it == obj.end())
        throw ConfigError(std::string("missing field '") + ctx + field + "'");
    return *it;
}

double require_num(const json& obj, const char* field, const char* ctx) {
    const json& v = require(obj, field, ctx);
    if (!v.is_number())
        throw ConfigError(std::string("field '") + ctx + field + "' must be a number");
    return v.get<double>();
}

TimeProfile parse_profile(const json& j, const std::string& name) {
    if (!j.is_object()) throw ConfigError("field '" + name + "' must be an object");
    std::string type = require(j, "type", name.c_str()).get<std::string>();
    const char* ctx = name == "beta" ? "beta." : "gamma.";
    if (type == "constant") return TimeProfile::constant(require_num(j, "value", ctx));
    if (type == "sigmoid")
        return TimeProfile::sigmoid(require_num(j, "peak", ctx), require_num(j, "a", ctx),
                                    require_num(j, "t0", ctx));
    if (type == "piecewise") {
        const json& kn = require(j, "knots", ctx);
        if (!kn.is_array()) throw ConfigError("field '" + name + ".knots' must be an array");
        std::vector<std::pair<double, double>> knots;
        for (const auto& e : kn) {
            if (!e.is_array() || e.size() != 2)
                throw ConfigError("field '" + name + ".knots' entries must be [t, value] pairs");
            knots.emplace_back(e[0].get<double>(), e[1].get<double>());
        }
        return TimeProfile::piecewise_linear(std::move(knots));
    }
    throw ConfigError("field '" + name + ".type' must be constant|sigmoid|piecewise");
}

json profile_to_json(const TimeProfile& p) {
    json j;
    switch (p.kind()) {
        case TimeProfile::Kind::Constant:
            j["type"] = "constant";
            j["value"] = p.constant_value();
            break;
        case TimeProfile::Kind::Sigmoid:
            j["type"] = "sigmoid";
            j["peak"] = p.peak();
            j["a"] = p.steepness();
            j["t0"] = p.midpoint();
            break;
        case TimeProfile::Kind::PiecewiseLinear: {
            j["type"] = "piecewise";
            json kn = json::array();
            for (const auto& [t, v] : p.knots()) kn.push_back({t, v});
            j["knots"] = kn;
            break;
        }
    }
    return j;
}

}  // namespace

Scenario parse_scenario_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("scenario is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("scenario root must be a JSON object");

    Scenario s;

    const json& nw = require(j, "network", "");
    std::string nt = require(nw, "type", "network.").get<std::string>();
    if (nt == "poisson") {
        s.network.type = NetworkSpec::Type::Poisson;
        s.network.lambda = require_num(nw, "lambda", "network.");
        s.network.k_min = static_cast<int>(require_num(nw, "k_min", "network."));
        s.network.k_max = static_cast<int>(require_num(nw, "k_max", "network."));
        s.dist = build_poisson_truncated(s.network.lambda, s.network.k_min, s.network.k_max);
    } else if (nt == "powerlaw") {
        s.network.type = NetworkSpec::Type::Powerlaw;
        s.network.alpha = require_num(nw, "alpha", "network.");
        s.network.k_min = static_cast<int>(require_num(nw, "k_min", "network."));
        s.network.k_max = static_cast<int>(require_num(nw, "k_max", "network."));
        s.dist = build_powerlaw(s.network.alpha, s.network.k_min, s.network.k_max);
    } else if (nt == "empirical") {
        s.network.type = NetworkSpec::Type::Empirical;
        s.network.edge_list_path =
            require(nw, "edge_list_path", "network.").get<std::string>();
        s.dist = build_empirical(load_edge_list(s.network.edge_list_path));
        s.network.k_min = s.dist.k_min();
        s.network.k_max = s.dist.k_max();
    } else {
        throw ConfigError("field 'network.type' must be poisson|powerlaw|empirical");
    }

    s.T = require_num(j, "T", "");
    if (j.contains("n_grid")) s.n_grid = static_cast<int>(require_num(j, "n_grid", ""));

    s.beta = parse_profile(require(j, "beta", ""), "beta");
    if (j.contains("gamma")) {
        s.gamma = parse_profile(j["gamma"], "gamma");
        s.gamma_overridden = true;
    } else {
        s.gamma = s.beta.scaled(10.0);
        s.gamma_overridden = false;
    }

    s.cost.b = require_num(require(j, "cost", ""), "b", "cost.");

    const json& sd = require(j, "seed", "");
    std::string mode = require(sd, "mode", "seed.").get<std::string>();
    if (mode == "uniform") {
        s.seed.mode = SeedSpec::Mode::Uniform;
        s.seed.i0 = require_num(sd, "i0", "seed.");
    } else if (mode == "vector") {
        s.seed.mode = SeedSpec::Mode::Vector;
        const json& v = require(sd, "i0_vector", "seed.");
        if (!v.is_array()) throw ConfigError("field 'seed.i0_vector' must be an array");
        s.seed.i0_vector = v.get<std::vector<double>>();
    } else if (mode == "optimize") {
        s.seed.mode = SeedSpec::Mode::Optimize;
        s.seed.seed_budget = require_num(sd, "B_i0", "seed.");
    } else {
        throw ConfigError("field 'seed.mode' must be uniform|vector|optimize");
    }

    if (j.contains("variant")) {
        const json& vr = j["variant"];
        std::string vt = require(vr, "type", "variant.").get<std::string>();
        if (vt == "fixed_seed") {
            s.variant.type = Variant::Type::FixedSeed;
        } else if (vt == "fixed_budget") {
            s.variant.type = Variant::Type::FixedBudget;
            s.variant.budget = require_num(vr, "B", "variant.");
        } else if (vt == "joint") {
            s.variant.type = Variant::Type::Joint;
            if (vr.contains("B_i0") && s.seed.mode == SeedSpec::Mode::Optimize &&
                vr["B_i0"].get<double>() != s.seed.seed_budget)
                throw ConfigError("field 'variant.B_i0' conflicts with 'seed.B_i0'");
        } else {
            throw ConfigError("field 'variant.type' must be fixed_seed|fixed_budget|joint");
        }
    }

    if (j.contains("sweep")) {
        const json& sw = j["sweep"];
        if (sw.contains("n_sweep")) s.sweep.n_sweep = static_cast<int>(sw["n_sweep"].get<double>());
        if (sw.contains("fixed_point_tol"))
            s.sweep.fixed_point_tol = sw["fixed_point_tol"].get<double>();
        if (sw.contains("damping")) s.sweep.damping = sw["damping"].get<double>();
    }

    s.validate();
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario_json(ss.str());
}

std::string scenario_to_json(const Scenario& s) {
    json j;
    json nw;
    switch (s.network.type) {
        case NetworkSpec::Type::Poisson:
            nw["type"] = "poisson";
            nw["lambda"] = s.network.lambda;
            nw["k_min"] = s.network.k_min;
            nw["k_max"] = s.network.k_max;
            break;
        case NetworkSpec::Type::Powerlaw:
            nw["type"] = "powerlaw";
            nw["alpha"] = s.network.alpha;
            nw["k_min"] = s.network.k_min;
            nw["k_max"] = s.network.k_max;
            break;
        case NetworkSpec::Type::Empirical:
            nw["type"] = "empirical";
            nw["edge_list_path"] = s.network.edge_list_path;
            break;
    }
    j["network"] = nw;
    j["T"] = s.T;
    j["n_grid"] = s.n_grid;
    j["beta"] = profile_to_json(s.beta);
    if (s.gamma_overridden) j["gamma"] = profile_to_json(s.gamma);
    j["cost"] = {{"b", s.cost.b}};
    json sd;
    switch (s.seed.mode) {
        case SeedSpec::Mode::Uniform:
            sd = {{"mode", "uniform"}, {"i0", s.seed.i0}};
            break;
        case SeedSpec::Mode::Vector:
            sd = {{"mode", "vector"}, {"i0_vector", s.seed.i0_vector}};
            break;
        case SeedSpec::Mode::Optimize:
            sd = {{"mode", "optimize"}, {"B_i0", s.seed.seed_budget}};
            break;
    }
    j["seed"] = sd;
    json vr;
    switch (s.variant.type) {
        case Variant::Type::FixedSeed:
            vr = {{"type", "fixed_seed"}};
            break;
        case Variant::Type::FixedBudget:
            vr = {{"type", "fixed_budget"}, {"B", s.variant.budget}};
            break;
        case Variant::Type::Joint:
            vr = {{"type", "joint"}};
            break;
    }
    j["variant"] = vr;
    j["sweep"] = {{"n_sweep", s.sweep.n_sweep},
                  {"fixed_point_tol", s.sweep.fixed_point_tol},
                  {"damping", s.sweep.damping}};
    return j.dump(2);
}

}  // namespace epicampaign
