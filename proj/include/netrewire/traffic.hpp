#pragma once

#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "netrewire/centrality.hpp"
#include "netrewire/graph.hpp"

namespace netrewire {

struct TrafficParams {
    double beta = 0.5;         // capacity control
    double lambda = 0.0;       // packets generated per node per step
    std::size_t horizon = 1000; // T

    void validate() const;
};

// C_i = beta (x(i) + g(i)) N, with x max-normalized EC and g normalized BC.
std::vector<double> allocate_capacity(const CentralityBundle& c, double beta);

// Q_i = lambda D N g(i) / sum_j g(j), D the average shortest path length.
// When every g is zero the load is spread uniformly: Q_i = lambda D.
std::vector<double> expected_inflow(const CentralityBundle& c, double lambda);

// lambda_c = C(i*) (N - 1) / B(i*), i* = argmax betweenness, with B counted
// over ordered source-destination pairs (twice the unordered raw count).
// Throws NumericError when the maximum betweenness is zero.
double critical_rate(std::span<const double> bc_raw, std::span<const double> capacity);

struct LoadTrace {
    std::vector<double> total; // L^t for t = 1..T
    std::vector<double> queue; // per-node L_i^T

    double final_total() const { return total.empty() ? 0.0 : total.back(); }
};

// L_i^{t+1} = max(0, L_i^t + Q_i - C_i) from L^0 = 0, static C and Q.
LoadTrace analytic_load(std::span<const double> capacity, std::span<const double> inflow, std::size_t horizon);

// Smallest lambda at which some Q_i exceeds C_i, given the inflow at
// lambda = 1. Infinity when no node carries load.
double analytic_onset(std::span<const double> capacity, std::span<const double> unit_inflow);

struct Utilization {
    std::vector<double> per_node;                          // u_i = g(i) / sum_j g(j)
    std::vector<std::pair<std::size_t, double>> by_degree; // (k, U_k), ascending k
    double u_max = 0.0;
};

// Throws NumericError when sum g = 0.
Utilization node_utilization(const Graph& g, std::span<const double> bc);

struct TrafficState {
    std::vector<double> capacity;
    std::vector<double> inflow;
    std::vector<double> queue;
    double total_load = 0.0;       // L^T
    double average_path = 0.0;     // D
    double lambda_c = 0.0;
    double network_capacity = 0.0; // sum C_i
    double network_load = 0.0;     // sum Q_i
};

TrafficState traffic_state(const CentralityBundle& c, const TrafficParams& params);

// node,degree,C_i,Q_i,u_i
void write_node_traffic_csv(std::ostream& out, const Graph& g, const TrafficState& state,
                            std::span<const double> utilization);

} // namespace netrewire
