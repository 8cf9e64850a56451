#include "netrewire/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "netrewire/csv.hpp"
#include "netrewire/error.hpp"
#include "netrewire/meso.hpp"
#include "netrewire/traffic.hpp"

namespace netrewire {

std::string MetricsRow::csv_header() {
    return "nodes,edges,g_max,lambda_c,r_deg,avg_clustering,anc,apl,anb,rc,cp,u_max";
}

std::string MetricsRow::csv_fields() const {
    CsvRow row;
    row << nodes << edges << g_max << lambda_c << r_deg << avg_clustering << anc << apl << anb << rc << cp << u_max;
    return row.str();
}

double average_clustering(const Graph& g) {
    const std::size_t n = g.node_count();
    if (n == 0) return 0.0;
    std::vector<char> mark(n, 0);
    double total = 0.0;
    for (NodeId v = 0; v < n; ++v) {
        const std::size_t k = g.degree(v);
        if (k < 2) continue;
        for (NodeId w : g.neighbors(v)) mark[w] = 1;
        std::size_t links = 0;
        for (NodeId w : g.neighbors(v))
            for (NodeId x : g.neighbors(w))
                if (x > w && mark[x]) ++links;
        for (NodeId w : g.neighbors(v)) mark[w] = 0;
        total += 2.0 * static_cast<double>(links) / (static_cast<double>(k) * static_cast<double>(k - 1));
    }
    return total / static_cast<double>(n);
}

MetricsRow compute_metrics(const Graph& g, const CentralityBundle& c, double beta) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    MetricsRow m;
    m.nodes = g.node_count();
    m.edges = g.edge_count();
    m.g_max = c.bc.empty() ? 0.0 : *std::max_element(c.bc.begin(), c.bc.end());
    m.anb = c.bc.empty() ? 0.0 : std::accumulate(c.bc.begin(), c.bc.end(), 0.0) / static_cast<double>(c.bc.size());
    m.apl = c.average_path_length;
    m.r_deg = c.r_deg.value_or(nan);
    m.avg_clustering = average_clustering(g);

    auto cores = kcore_degree(g);
    m.anc = g.node_count() == 0 ? 0.0
                                : std::accumulate(cores.core_index.begin(), cores.core_index.end(), 0.0) /
                                      static_cast<double>(g.node_count());
    m.rc = rich_club_profile(g).rc;
    try {
        m.cp = core_periphery_coefficient(g);
    } catch (const UndefinedCorrelationError&) {
        m.cp = nan;
    }
    try {
        m.lambda_c = critical_rate(c.bc_raw, allocate_capacity(c, beta));
        m.u_max = node_utilization(g, c.bc).u_max;
    } catch (const NumericError&) {
        m.lambda_c = nan;
        m.u_max = nan;
    }
    return m;
}

MetricsRow compute_metrics(const Graph& g, double beta) {
    if (!is_connected(g)) throw DisconnectedGraphError();
    return compute_metrics(g, compute_centralities(g), beta);
}

} // namespace netrewire
