#include "netrewire/traffic.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>

#include "netrewire/csv.hpp"
#include "netrewire/error.hpp"

namespace netrewire {

void TrafficParams::validate() const {
    if (!(beta > 0.0)) throw ConfigError("beta must be positive");
    if (!(lambda >= 0.0)) throw ConfigError("lambda must be non-negative");
    if (horizon < 1) throw ConfigError("horizon must be at least 1");
}

std::vector<double> allocate_capacity(const CentralityBundle& c, double beta) {
    if (!(beta > 0.0)) throw ConfigError("beta must be positive");
    const double n = static_cast<double>(c.node_count());
    std::vector<double> cap(c.node_count());
    for (std::size_t i = 0; i < cap.size(); ++i) cap[i] = beta * (c.ec[i] + c.bc[i]) * n;
    return cap;
}

std::vector<double> expected_inflow(const CentralityBundle& c, double lambda) {
    if (!(lambda >= 0.0)) throw ConfigError("lambda must be non-negative");
    const std::size_t n = c.node_count();
    const double total = std::accumulate(c.bc.begin(), c.bc.end(), 0.0);
    const double volume = lambda * c.average_path_length * static_cast<double>(n);
    std::vector<double> q(n);
    for (std::size_t i = 0; i < n; ++i)
        q[i] = total > 0.0 ? volume * c.bc[i] / total : volume / static_cast<double>(n);
    return q;
}

double critical_rate(std::span<const double> bc_raw, std::span<const double> capacity) {
    if (bc_raw.size() != capacity.size() || bc_raw.empty()) throw ConfigError("capacity and betweenness sizes differ");
    const auto it = std::max_element(bc_raw.begin(), bc_raw.end());
    if (!(*it > 0.0)) throw NumericError("critical rate undefined: maximum betweenness is zero");
    const auto i = static_cast<std::size_t>(it - bc_raw.begin());
    const double n1 = static_cast<double>(bc_raw.size()) - 1.0;
    return capacity[i] * n1 / (2.0 * *it);
}

LoadTrace analytic_load(std::span<const double> capacity, std::span<const double> inflow, std::size_t horizon) {
    if (capacity.size() != inflow.size()) throw ConfigError("capacity and inflow sizes differ");
    LoadTrace trace;
    trace.queue.assign(capacity.size(), 0.0);
    trace.total.reserve(horizon);
    for (std::size_t t = 0; t < horizon; ++t) {
        double total = 0.0;
        for (std::size_t i = 0; i < capacity.size(); ++i) {
            trace.queue[i] = std::max(0.0, trace.queue[i] + inflow[i] - capacity[i]);
            total += trace.queue[i];
        }
        trace.total.push_back(total);
    }
    return trace;
}

double analytic_onset(std::span<const double> capacity, std::span<const double> unit_inflow) {
    double onset = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < capacity.size(); ++i)
        if (unit_inflow[i] > 0.0) onset = std::min(onset, capacity[i] / unit_inflow[i]);
    return onset;
}

Utilization node_utilization(const Graph& g, std::span<const double> bc) {
    const double total = std::accumulate(bc.begin(), bc.end(), 0.0);
    if (!(total > 0.0)) throw NumericError("utilization undefined: total betweenness is zero");
    Utilization u;
    u.per_node.resize(bc.size());
    std::map<std::size_t, std::pair<double, std::size_t>> acc;
    for (NodeId v = 0; v < bc.size(); ++v) {
        u.per_node[v] = bc[v] / total;
        auto& [s, cnt] = acc[g.degree(v)];
        s += u.per_node[v];
        ++cnt;
    }
    for (auto& [k, sc] : acc) {
        const double uk = sc.first / static_cast<double>(sc.second);
        u.by_degree.emplace_back(k, uk);
        u.u_max = std::max(u.u_max, uk);
    }
    return u;
}

TrafficState traffic_state(const CentralityBundle& c, const TrafficParams& params) {
    params.validate();
    TrafficState s;
    s.capacity = allocate_capacity(c, params.beta);
    s.inflow = expected_inflow(c, params.lambda);
    auto trace = analytic_load(s.capacity, s.inflow, params.horizon);
    s.queue = std::move(trace.queue);
    s.total_load = trace.final_total();
    s.average_path = c.average_path_length;
    s.lambda_c = critical_rate(c.bc_raw, s.capacity);
    s.network_capacity = std::accumulate(s.capacity.begin(), s.capacity.end(), 0.0);
    s.network_load = std::accumulate(s.inflow.begin(), s.inflow.end(), 0.0);
    return s;
}

void write_node_traffic_csv(std::ostream& out, const Graph& g, const TrafficState& state,
                            std::span<const double> utilization) {
    out << "node,degree,C_i,Q_i,u_i\n";
    for (NodeId v = 0; v < g.node_count(); ++v) {
        CsvRow row;
        row << g.label(v) << g.degree(v) << state.capacity[v] << state.inflow[v] << utilization[v];
        out << row.str() << '\n';
    }
}

} // namespace netrewire
