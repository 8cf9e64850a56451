#include "netrewire/degree_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "netrewire/error.hpp"

namespace netrewire {

DegreeDistribution degree_distribution(const Graph& g) {
    if (g.edge_count() == 0) throw DataError("degree distribution of a graph without edges");
    DegreeDistribution d;
    const auto n = static_cast<double>(g.node_count());
    std::size_t kmax = 0;
    for (NodeId v = 0; v < g.node_count(); ++v) kmax = std::max(kmax, g.degree(v));

    std::vector<std::size_t> counts(kmax + 1, 0);
    for (NodeId v = 0; v < g.node_count(); ++v) ++counts[g.degree(v)];
    d.p.resize(kmax + 1);
    for (std::size_t k = 0; k <= kmax; ++k) d.p[k] = static_cast<double>(counts[k]) / n;

    d.mean_degree = g.mean_degree();
    d.q.assign(kmax, 0.0);
    for (std::size_t k = 0; k < kmax; ++k)
        d.q[k] = static_cast<double>(k + 1) * d.p[k + 1] / d.mean_degree;

    double m1 = 0.0, m2 = 0.0;
    for (std::size_t k = 0; k < kmax; ++k) {
        m1 += static_cast<double>(k) * d.q[k];
        m2 += static_cast<double>(k * k) * d.q[k];
    }
    d.mean_excess = m1;
    d.variance_excess = std::max(0.0, m2 - m1 * m1);
    return d;
}

TailFit fit_degree_tail(std::span<const std::size_t> degrees, std::size_t k_min, double bin_ratio) {
    TailFit fit;
    fit.slope = std::numeric_limits<double>::quiet_NaN();
    fit.intercept = fit.slope;
    if (degrees.empty() || bin_ratio <= 1.0) return fit;
    std::size_t kmax = *std::max_element(degrees.begin(), degrees.end());
    std::size_t upper = kmax / 2;
    if (upper < k_min) return fit;

    std::vector<std::size_t> counts(kmax + 1, 0);
    for (auto k : degrees) ++counts[k];
    const auto n = static_cast<double>(degrees.size());

    std::vector<double> xs, ys;
    double lo = static_cast<double>(k_min);
    while (lo <= static_cast<double>(upper)) {
        double hi = lo * bin_ratio;
        auto k_lo = static_cast<std::size_t>(std::ceil(lo));
        auto k_hi = static_cast<std::size_t>(std::ceil(hi)); // exclusive
        if (k_hi <= k_lo) k_hi = k_lo + 1;
        k_hi = std::min(k_hi, upper + 1);
        std::size_t c = 0;
        for (std::size_t k = k_lo; k < k_hi; ++k) c += counts[k];
        if (c > 0) {
            double width = static_cast<double>(k_hi - k_lo);
            double centre = std::sqrt(static_cast<double>(k_lo) * static_cast<double>(k_hi - 1));
            xs.push_back(std::log(centre));
            ys.push_back(std::log(static_cast<double>(c) / (n * width)));
        }
        lo = static_cast<double>(k_hi);
    }
    fit.bins = xs.size();
    if (xs.size() < 2) return fit;

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    return fit;
}

} // namespace netrewire
