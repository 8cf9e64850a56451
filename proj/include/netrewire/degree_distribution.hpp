#pragma once

#include <span>
#include <vector>

#include "netrewire/graph.hpp"

namespace netrewire {

// p[k]: fraction of nodes with degree k.
// q[k]: excess degree distribution, (k+1) p[k+1] / <k>, i.e. the remaining
// degree of a node reached by following a random edge.
struct DegreeDistribution {
    std::vector<double> p;
    std::vector<double> q;
    double mean_degree = 0.0;
    double mean_excess = 0.0;
    double variance_excess = 0.0;
};

DegreeDistribution degree_distribution(const Graph& g);

struct TailFit {
    double slope = 0.0;
    double intercept = 0.0;
    std::size_t bins = 0;
};

// Least-squares line through log p(k) vs log k on a logarithmically binned
// histogram of `degrees`, restricted to k in [k_min, k_max/2]. Bin edges grow
// by `bin_ratio`. Fewer than two non-empty bins yields slope NaN.
TailFit fit_degree_tail(std::span<const std::size_t> degrees, std::size_t k_min = 4, double bin_ratio = 1.5);

} // namespace netrewire
