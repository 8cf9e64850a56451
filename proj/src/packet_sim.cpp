#include "netrewire/packet_sim.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <ostream>
#include <random>

#include "netrewire/csv.hpp"
#include "netrewire/error.hpp"
#include "netrewire/random.hpp"

namespace netrewire {

RoutingTable::RoutingTable(const Graph& g) : n_(g.node_count()) {
    constexpr auto unreached = std::numeric_limits<std::uint32_t>::max();
    next_.assign(n_ * n_, 0);
    dist_.assign(n_ * n_, unreached);
    std::vector<NodeId> queue;
    queue.reserve(n_);
    std::vector<std::uint32_t> d(n_);
    for (NodeId dest = 0; dest < n_; ++dest) {
        std::fill(d.begin(), d.end(), unreached);
        d[dest] = 0;
        queue.clear();
        queue.push_back(dest);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            NodeId u = queue[head];
            for (NodeId w : g.neighbors(u))
                if (d[w] == unreached) {
                    d[w] = d[u] + 1;
                    queue.push_back(w);
                }
        }
        if (queue.size() != n_) throw DisconnectedGraphError();
        for (NodeId u = 0; u < n_; ++u) {
            dist_[static_cast<std::size_t>(u) * n_ + dest] = d[u];
            if (u == dest) {
                next_[static_cast<std::size_t>(u) * n_ + dest] = u;
                continue;
            }
            for (NodeId w : g.neighbors(u))
                if (d[w] + 1 == d[u]) {
                    next_[static_cast<std::size_t>(u) * n_ + dest] = w;
                    break;
                }
        }
    }
}

namespace {

struct Packet {
    NodeId destination;
    std::uint64_t stamp; // arrival order at the current node
};

} // namespace

SimResult packet_simulate(const RoutingTable& routes, std::span<const double> capacity, const SimOptions& options) {
    const std::size_t n = routes.node_count();
    if (capacity.size() != n) throw ConfigError("capacity vector has wrong length");
    if (!(options.lambda >= 0.0)) throw ConfigError("lambda must be non-negative");
    if (options.horizon < 1) throw ConfigError("horizon must be at least 1");
    for (double c : capacity)
        if (!(c >= 0.0)) throw ConfigError("capacities must be non-negative");

    SimResult res;
    if (options.record_trace) res.trace.reserve(options.horizon);
    if (n < 2) return res;

    Rng rng(options.seed);
    std::poisson_distribution<std::size_t> poisson(options.lambda > 0.0 ? options.lambda : 1.0);
    const double whole = std::floor(options.lambda);
    const double frac = options.lambda - whole;

    std::vector<std::deque<Packet>> queues(n);
    std::vector<std::vector<Packet>> incoming(n);
    std::vector<std::uint64_t> last_departed(n, 0);
    std::uint64_t stamp = 1;
    std::size_t queued = 0;

    for (std::size_t t = 1; t <= options.horizon; ++t) {
        if (options.lambda > 0.0) {
            for (NodeId i = 0; i < n; ++i) {
                std::size_t count = options.generation == Generation::Poisson
                                        ? poisson(rng)
                                        : static_cast<std::size_t>(whole) + (uniform01(rng) < frac ? 1 : 0);
                for (std::size_t p = 0; p < count; ++p) {
                    auto dest = static_cast<NodeId>(uniform_index(n - 1, rng));
                    if (dest >= i) ++dest;
                    queues[i].push_back({dest, stamp++});
                }
                res.generated += count;
                queued += count;
            }
        }

        for (NodeId i = 0; i < n; ++i) {
            const double c = capacity[i];
            auto serve = static_cast<std::size_t>(std::floor(c));
            if (uniform01(rng) < c - std::floor(c)) ++serve;
            auto& q = queues[i];
            for (std::size_t s = 0; s < serve && !q.empty(); ++s) {
                Packet p = q.front();
                q.pop_front();
                if (p.stamp <= last_departed[i]) ++res.fifo_violations;
                last_departed[i] = p.stamp;
                NodeId next = routes.next_hop(i, p.destination);
                if (next == p.destination) {
                    ++res.delivered;
                    --queued;
                } else {
                    incoming[next].push_back(p);
                }
            }
        }
        for (NodeId i = 0; i < n; ++i) {
            for (auto& p : incoming[i]) {
                p.stamp = stamp++;
                queues[i].push_back(p);
            }
            incoming[i].clear();
        }

        res.in_flight = queued;
        if (res.generated != res.delivered + res.in_flight) ++res.conservation_violations;
        if (options.record_trace) res.trace.push_back({t, res.in_flight, res.generated, res.delivered});
    }
    std::size_t actually_queued = 0;
    for (auto& q : queues) actually_queued += q.size();
    if (actually_queued != res.in_flight) ++res.conservation_violations;
    return res;
}

SimResult packet_simulate(const Graph& g, std::span<const double> capacity, const SimOptions& options) {
    return packet_simulate(RoutingTable(g), capacity, options);
}

bool simulated_congested(const RoutingTable& routes, std::span<const double> capacity, double lambda,
                         const OnsetSearch& search) {
    if (search.seeds.empty()) throw ConfigError("onset search needs at least one seed");
    double mean_rate = 0.0;
    for (auto seed : search.seeds) {
        SimOptions opt;
        opt.lambda = lambda;
        opt.horizon = search.horizon;
        opt.seed = seed;
        opt.record_trace = false;
        auto r = packet_simulate(routes, capacity, opt);
        mean_rate += static_cast<double>(r.in_flight) / static_cast<double>(search.horizon);
    }
    mean_rate /= static_cast<double>(search.seeds.size());
    return mean_rate > search.threshold * lambda * static_cast<double>(routes.node_count());
}

double simulated_onset(const RoutingTable& routes, std::span<const double> capacity, const OnsetSearch& search) {
    double lo = search.lo, hi = search.hi;
    if (!simulated_congested(routes, capacity, hi, search)) return hi;
    for (std::size_t it = 0; it < search.iterations; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (simulated_congested(routes, capacity, mid, search))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

void write_trace_csv(std::ostream& out, const SimResult& result) {
    out << "t,L_total,generated,delivered\n";
    for (auto& s : result.trace) {
        CsvRow row;
        row << s.t << s.in_flight << s.generated << s.delivered;
        out << row.str() << '\n';
    }
}

} // namespace netrewire
