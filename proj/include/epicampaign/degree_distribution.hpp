#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace epicampaign {

/// Degree distribution of a configuration-model network over the contiguous
/// class set K = {k_min, ..., k_max}, together with the derived excess-degree
/// distribution q_k = (k+1) p_{k+1} / mean_degree used by the contagion term.
/// q is indexed by the same degree keys as p; q at k_max is 0 because
/// p_{k_max+1} lies outside the support.
class DegreeDistribution {
public:
    DegreeDistribution() = default;  // empty until assigned from a builder

    static DegreeDistribution from_probabilities(int k_min, std::vector<double> p);

    int k_min() const { return k_min_; }
    int k_max() const { return k_min_ + static_cast<int>(p_.size()) - 1; }
    int num_classes() const { return static_cast<int>(p_.size()); }
    double mean_degree() const { return mean_degree_; }

    int degree_of(int cls) const { return k_min_ + cls; }
    double p(int cls) const { return p_[cls]; }
    double q(int cls) const { return q_[cls]; }
    const std::vector<double>& p_values() const { return p_; }
    const std::vector<double>& q_values() const { return q_; }

    /// Probability of degree k, 0 outside the support.
    double p_of_degree(int k) const;

private:
    int k_min_ = 0;
    std::vector<double> p_;
    std::vector<double> q_;
    double mean_degree_ = 0.0;
};

/// Truncated Poisson weights e^{-lambda} lambda^k / k! on [k_min, k_max],
/// renormalized by direct summation.
DegreeDistribution build_poisson_truncated(double lambda, int k_min, int k_max);

/// Power law p_k proportional to k^{-alpha} on [k_min, k_max].
DegreeDistribution build_powerlaw(double alpha, int k_min, int k_max);

using Edge = std::pair<std::string, std::string>;

/// Empirical distribution p_k = N_k / N from an edge list. Self-loops and
/// duplicate edges count toward degree; the support is the contiguous range
/// [min observed degree, max observed degree] (interior holes get p_k = 0).
DegreeDistribution build_empirical(const std::vector<Edge>& edges);

/// Parse a whitespace-separated edge-list file ('#' lines ignored).
std::vector<Edge> parse_edge_list(std::istream& in);
std::vector<Edge> load_edge_list(const std::string& path);

/// Excess-degree map q_k = (k+1) p_{k+1} / mean_degree. Keys cover
/// max(k_min - 1, 0) .. k_max so the entry below the support (which the
/// state equations never consume) is still reported.
std::map<int, double> excess_distribution(const DegreeDistribution& dist);

/// Neighbor-degree distribution r_k = k p_k / mean_degree over the support.
std::vector<double> neighbor_distribution(const DegreeDistribution& dist);

/// CSV export, header "k,p_k,q_k".
void write_distribution_csv(std::ostream& out, const DegreeDistribution& dist);

}  // namespace epicampaign
