#include "epicampaign/degree_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "epicampaign/errors.hpp"

namespace epicampaign {

namespace {

void check_range(int k_min, int k_max) {
    if (k_min <= 0 || k_max <= 0)
        throw ParameterError("degree bounds must be positive integers");
    if (k_min > k_max)
        throw ParameterError("k_min exceeds k_max");
}

}  // namespace

DegreeDistribution DegreeDistribution::from_probabilities(int k_min, std::vector<double> p) {
    if (p.empty()) throw ParameterError("degree distribution has empty support");
    if (k_min < 0) throw ParameterError("k_min must be non-negative");
    double sum = 0.0;
    for (double v : p) {
        if (!std::isfinite(v) || v < 0.0)
            throw ParameterError("degree probabilities must be finite and non-negative");
        sum += v;
    }
    if (sum <= 0.0) throw ParameterError("degree probabilities sum to zero");
    for (double& v : p) v /= sum;

    DegreeDistribution d;
    d.k_min_ = k_min;
    d.p_ = std::move(p);
    double kbar = 0.0;
    for (size_t i = 0; i < d.p_.size(); ++i) kbar += (k_min + static_cast<int>(i)) * d.p_[i];
    if (kbar <= 0.0) throw ParameterError("mean degree must be positive");
    d.mean_degree_ = kbar;

    d.q_.assign(d.p_.size(), 0.0);
    for (size_t i = 0; i + 1 < d.p_.size(); ++i) {
        int k = k_min + static_cast<int>(i);
        d.q_[i] = (k + 1) * d.p_[i + 1] / kbar;
    }
    return d;
}

double DegreeDistribution::p_of_degree(int k) const {
    if (k < k_min_ || k > k_max()) return 0.0;
    return p_[k - k_min_];
}

DegreeDistribution build_poisson_truncated(double lambda, int k_min, int k_max) {
    check_range(k_min, k_max);
    if (!std::isfinite(lambda) || lambda <= 0.0)
        throw ParameterError("poisson lambda must be finite and positive");
    // Work with log weights to stay stable for large lambda / k.
    std::vector<double> logw(k_max - k_min + 1);
    for (int k = k_min; k <= k_max; ++k)
        logw[k - k_min] = k * std::log(lambda) - std::lgamma(static_cast<double>(k) + 1.0);
    double m = *std::max_element(logw.begin(), logw.end());
    std::vector<double> w(logw.size());
    for (size_t i = 0; i < w.size(); ++i) w[i] = std::exp(logw[i] - m);
    return DegreeDistribution::from_probabilities(k_min, std::move(w));
}

DegreeDistribution build_powerlaw(double alpha, int k_min, int k_max) {
    check_range(k_min, k_max);
    if (!std::isfinite(alpha) || alpha <= 0.0)
        throw ParameterError("power-law exponent must be finite and positive");
    std::vector<double> w(k_max - k_min + 1);
    for (int k = k_min; k <= k_max; ++k)
        w[k - k_min] = std::pow(static_cast<double>(k), -alpha);
    return DegreeDistribution::from_probabilities(k_min, std::move(w));
}

DegreeDistribution build_empirical(const std::vector<Edge>& edges) {
    if (edges.empty()) throw IngestionError("edge list is empty");
    std::unordered_map<std::string, long long> deg;
    for (const auto& [a, b] : edges) {
        deg[a] += 1;
        deg[b] += 1;
    }
    int dmin = std::numeric_limits<int>::max();
    int dmax = 0;
    for (const auto& [node, d] : deg) {
        dmin = std::min<long long>(dmin, d);
        dmax = std::max<long long>(dmax, d);
    }
    std::vector<double> counts(dmax - dmin + 1, 0.0);
    for (const auto& [node, d] : deg) counts[d - dmin] += 1.0;
    return DegreeDistribution::from_probabilities(dmin, std::move(counts));
}

std::vector<Edge> parse_edge_list(std::istream& in) {
    std::vector<Edge> edges;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (line[start] == '#') continue;
        std::istringstream ls(line);
        std::string a, b, extra;
        if (!(ls >> a >> b))
            throw IngestionError("edge list parse error at line " + std::to_string(line_no) +
                                 ": expected two node identifiers");
        if (ls >> extra)
            throw IngestionError("edge list parse error at line " + std::to_string(line_no) +
                                 ": trailing tokens");
        edges.emplace_back(std::move(a), std::move(b));
    }
    return edges;
}

std::vector<Edge> load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IngestionError("cannot open edge list file: " + path);
    auto edges = parse_edge_list(in);
    if (edges.empty()) throw IngestionError("edge list file has no edges: " + path);
    return edges;
}

std::map<int, double> excess_distribution(const DegreeDistribution& dist) {
    std::map<int, double> q;
    int lo = std::max(dist.k_min() - 1, 0);
    for (int k = lo; k <= dist.k_max(); ++k) {
        double pk1 = dist.p_of_degree(k + 1);
        q[k] = (k + 1) * pk1 / dist.mean_degree();
    }
    return q;
}

std::vector<double> neighbor_distribution(const DegreeDistribution& dist) {
    std::vector<double> r(dist.num_classes());
    for (int c = 0; c < dist.num_classes(); ++c)
        r[c] = dist.degree_of(c) * dist.p(c) / dist.mean_degree();
    return r;
}

void write_distribution_csv(std::ostream& out, const DegreeDistribution& dist) {
    out << "k,p_k,q_k\n";
    char buf[64];
    for (int c = 0; c < dist.num_classes(); ++c) {
        std::snprintf(buf, sizeof(buf), "%d,%.12g,%.12g\n", dist.degree_of(c), dist.p(c),
                      dist.q(c));
        out << buf;
    }
}

}  // namespace epicampaign
