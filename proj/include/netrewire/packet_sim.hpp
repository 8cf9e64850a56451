#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "netrewire/graph.hpp"

namespace netrewire {

// Static shortest-path routes; among equal-length routes the next hop is the
// lowest-index neighbour.
class RoutingTable {
public:
    explicit RoutingTable(const Graph& g);

    std::size_t node_count() const noexcept { return n_; }
    NodeId next_hop(NodeId at, NodeId destination) const { return next_[static_cast<std::size_t>(at) * n_ + destination]; }
    std::uint32_t distance(NodeId from, NodeId to) const { return dist_[static_cast<std::size_t>(from) * n_ + to]; }

private:
    std::size_t n_ = 0;
    std::vector<NodeId> next_;
    std::vector<std::uint32_t> dist_;
};

enum class Generation {
    Poisson,   // Poisson(lambda) packets per node per step
    Bernoulli, // floor(lambda) + Bernoulli(frac(lambda))
};

struct SimOptions {
    double lambda = 0.0;
    std::size_t horizon = 1000;
    std::uint64_t seed = 0;
    Generation generation = Generation::Poisson;
    bool record_trace = true;
};

struct SimStep {
    std::size_t t = 0;
    std::size_t in_flight = 0;
    std::size_t generated = 0; // cumulative
    std::size_t delivered = 0; // cumulative
};

struct SimResult {
    std::vector<SimStep> trace;
    std::size_t generated = 0;
    std::size_t delivered = 0;
    std::size_t in_flight = 0;
    std::size_t conservation_violations = 0; // steps where generated != delivered + queued
    std::size_t fifo_violations = 0;         // departures out of arrival order
};

// Each step: every node generates packets to uniformly random other nodes,
// then every node forwards up to c_i = floor(C_i) + Bernoulli(frac(C_i))
// packets from the head of its FIFO queue one hop along the static route.
// Packets reaching their destination leave the system. Forwarded packets join
// the next queue after all nodes have served.
SimResult packet_simulate(const RoutingTable& routes, std::span<const double> capacity, const SimOptions& options);
SimResult packet_simulate(const Graph& g, std::span<const double> capacity, const SimOptions& options);

struct OnsetSearch {
    double lo = 0.0;
    double hi = 1.0;
    std::size_t iterations = 12;
    std::size_t horizon = 1000;
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
    double threshold = 0.01; // congested when mean L(T)/T > threshold * lambda N
};

bool simulated_congested(const RoutingTable& routes, std::span<const double> capacity, double lambda,
                         const OnsetSearch& search);
// Bisection for the smallest congested lambda in [lo, hi]. Returns hi if
// even hi is free-flowing.
double simulated_onset(const RoutingTable& routes, std::span<const double> capacity, const OnsetSearch& search);

// t,L_total,generated,delivered
void write_trace_csv(std::ostream& out, const SimResult& result);

} // namespace netrewire
