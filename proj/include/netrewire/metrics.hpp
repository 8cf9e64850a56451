#pragma once

#include <string>

#include "netrewire/centrality.hpp"
#include "netrewire/graph.hpp"

namespace netrewire {

// Network-level measures of one graph. Quantities that are undefined for the
// graph at hand (r_deg of a regular graph, CP of a complete graph) are NaN.
struct MetricsRow {
    std::size_t nodes = 0;
    std::size_t edges = 0;
    double g_max = 0.0;
    double lambda_c = 0.0;
    double r_deg = 0.0;
    double avg_clustering = 0.0;
    double anc = 0.0; // average degree-based coreness
    double apl = 0.0;
    double anb = 0.0; // average normalized betweenness
    double rc = 0.0;
    double cp = 0.0;
    double u_max = 0.0;

    static std::string csv_header();
    std::string csv_fields() const;
};

// Mean local clustering; nodes of degree < 2 contribute zero.
double average_clustering(const Graph& g);

// Throws DisconnectedGraphError.
MetricsRow compute_metrics(const Graph& g, double beta);
MetricsRow compute_metrics(const Graph& g, const CentralityBundle& c, double beta);

} // namespace netrewire
