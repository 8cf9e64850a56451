#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>
#include <sstream>

#include "netrewire/centrality.hpp"
#include "netrewire/error.hpp"
#include "netrewire/generators.hpp"
#include "netrewire/packet_sim.hpp"
#include "netrewire/traffic.hpp"
#include "support.hpp"

using namespace netrewire;
using namespace testing;

namespace {

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

} // namespace

TEST_CASE("capacity allocation") {
    CentralityBundle c;
    c.ec.assign(100, 0.0);
    c.bc.assign(100, 0.0);
    c.ec[0] = 1.0;
    c.bc[0] = 1.0;
    c.bc_raw.assign(100, 0.0);
    auto cap = allocate_capacity(c, 0.5);
    CHECK(cap[0] == doctest::Approx(100.0));
    CHECK(cap[1] == 0.0);

    auto real = compute_centralities(generate_ba({120, 5, 2}, 3));
    auto a = allocate_capacity(real, 0.4), b = allocate_capacity(real, 0.8);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(b[i] == doctest::Approx(2.0 * a[i]));
    TrafficParams p;
    p.beta = 0.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p.beta = 0.5;
    p.lambda = -1.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
}

TEST_CASE("expected inflow") {
    auto c = compute_centralities(star(4));
    for (double q : expected_inflow(c, 0.0)) CHECK(q == 0.0);
    auto q = expected_inflow(c, 1.0);
    CHECK(q[0] == doctest::Approx(8.0)); // D = 8/5, N = 5, all load at the hub
    for (NodeId v = 1; v <= 4; ++v) CHECK(q[v] == 0.0);

    auto g = generate_ba({200, 5, 2}, 9);
    auto cb = compute_centralities(g);
    for (double lambda : {0.3, 1.0, 2.7})
        CHECK(std::abs(sum(expected_inflow(cb, lambda)) - lambda * cb.average_path_length * 200.0) < 1e-9);

    // No betweenness anywhere: uniform spread.
    auto k = compute_centralities(complete(5));
    for (double x : expected_inflow(k, 2.0)) CHECK(x == doctest::Approx(2.0));
}

TEST_CASE("critical rate") {
    // Star with five leaves, uniform unit capacity: B(hub) = 10 unordered
    // pairs, 20 ordered; lambda_c = 1 * 5 / 20.
    auto b = betweenness(star(5));
    std::vector<double> unit(6, 1.0);
    CHECK(critical_rate(b.raw, unit) == doctest::Approx(0.25));
    std::vector<double> triple(6, 3.0);
    CHECK(critical_rate(b.raw, triple) == doctest::Approx(0.75));
    auto k = betweenness(complete(4));
    CHECK_THROWS_AS(critical_rate(k.raw, std::vector<double>(4, 1.0)), NumericError);

    auto g = generate_ba({250, 5, 2}, 4);
    auto c = compute_centralities(g);
    auto lo = allocate_capacity(c, 0.3), hi = allocate_capacity(c, 0.7);
    CHECK(sum(hi) > sum(lo));
    CHECK(critical_rate(c.bc_raw, hi) > critical_rate(c.bc_raw, lo));
}

TEST_CASE("analytic load") {
    SUBCASE("free flow") {
        std::vector<double> cap{3.0, 2.0}, in{1.0, 2.0};
        auto t = analytic_load(cap, in, 50);
        for (double x : t.total) CHECK(x == 0.0);
    }
    SUBCASE("linear growth") {
        std::vector<double> cap{1.0}, in{3.0};
        auto t = analytic_load(cap, in, 5);
        CHECK(t.total == std::vector<double>{2, 4, 6, 8, 10});
        CHECK(t.final_total() == 10.0);
    }
    SUBCASE("queues never go negative and only congested nodes grow") {
        std::vector<double> cap{1.0, 5.0, 2.0}, in{1.5, 1.0, 2.0};
        auto t = analytic_load(cap, in, 10);
        CHECK(t.queue[0] == doctest::Approx(5.0));
        CHECK(t.queue[1] == 0.0);
        CHECK(t.queue[2] == 0.0);
    }
    SUBCASE("threshold in lambda and its growth with beta") {
        auto c = compute_centralities(generate_ba({200, 5, 2}, 13));
        const auto unit = expected_inflow(c, 1.0);
        double previous = 0.0;
        for (double beta : {0.3, 0.5, 0.7}) {
            auto cap = allocate_capacity(c, beta);
            const double onset = analytic_onset(cap, unit);
            CHECK(onset >= previous);
            previous = onset;
            CHECK(analytic_load(cap, expected_inflow(c, 0.99 * onset), 1000).final_total() == 0.0);
            double last = 0.0;
            for (double f : {1.05, 1.5, 2.0, 4.0}) {
                double l = analytic_load(cap, expected_inflow(c, f * onset), 1000).final_total();
                CHECK(l > last);
                last = l;
            }
        }
    }
}

TEST_CASE("utilization") {
    auto g = star(4);
    auto u = node_utilization(g, betweenness(g).normalized);
    CHECK(u.per_node[0] == doctest::Approx(1.0));
    REQUIRE(u.by_degree.size() == 2);
    CHECK(u.by_degree[0] == std::pair<std::size_t, double>{1, 0.0});
    CHECK(u.by_degree[1].first == 4);
    CHECK(u.by_degree[1].second == doctest::Approx(1.0));
    CHECK(u.u_max == doctest::Approx(1.0));
    auto b = generate_ba({300, 5, 2}, 3);
    auto ub = node_utilization(b, betweenness(b).normalized);
    CHECK(std::abs(sum(ub.per_node) - 1.0) < 1e-12);
    CHECK_THROWS_AS(node_utilization(complete(4), betweenness(complete(4)).normalized), NumericError);
}

TEST_CASE("traffic state and CSV") {
    auto g = generate_ba({100, 5, 2}, 1);
    auto c = compute_centralities(g);
    TrafficParams p;
    p.beta = 0.5;
    p.lambda = 1.0;
    p.horizon = 100;
    auto s = traffic_state(c, p);
    CHECK(s.network_capacity == doctest::Approx(sum(s.capacity)));
    CHECK(s.network_load == doctest::Approx(100.0 * c.average_path_length));
    CHECK(s.lambda_c == doctest::Approx(critical_rate(c.bc_raw, s.capacity)));
    std::ostringstream out;
    write_node_traffic_csv(out, g, s, node_utilization(g, c.bc).per_node);
    CHECK(out.str().rfind("node,degree,C_i,Q_i,u_i\n", 0) == 0);
}

TEST_CASE("routing table") {
    // Square 0-1-2-3-0: from 0 to 2 both 1 and 3 are shortest; 1 wins.
    auto r = RoutingTable(cycle(4));
    CHECK(r.next_hop(0, 2) == 1);
    CHECK(r.distance(0, 2) == 2);
    CHECK(r.next_hop(3, 1) == 0);
    auto p = RoutingTable(path(5));
    CHECK(p.next_hop(0, 4) == 1);
    CHECK(p.next_hop(4, 0) == 3);
    CHECK(p.distance(4, 0) == 4);
}

TEST_CASE("packet simulator") {
    SUBCASE("no generation, no packets") {
        auto g = cycle(6);
        SimOptions o;
        o.lambda = 0.0;
        o.horizon = 50;
        auto r = packet_simulate(g, std::vector<double>(6, 1.0), o);
        for (auto& s : r.trace) CHECK(s.in_flight == 0);
        CHECK(r.generated == 0);
    }
    SUBCASE("capacity far above load") {
        auto g = path(2);
        SimOptions o;
        o.lambda = 1.0;
        o.horizon = 100;
        o.seed = 3;
        auto r = packet_simulate(g, std::vector<double>{10.0, 10.0}, o);
        CHECK(r.generated > 100);
        CHECK(r.delivered + 20 >= r.generated);
        for (auto& s : r.trace) CHECK(s.in_flight < 20);
    }
    SUBCASE("conservation, FIFO and determinism on a congested BA graph") {
        auto g = generate_ba({150, 5, 2}, 2);
        auto c = compute_centralities(g);
        auto cap = allocate_capacity(c, 0.3);
        SimOptions o;
        o.lambda = 2.0 * critical_rate(c.bc_raw, cap);
        o.horizon = 300;
        o.seed = 42;
        auto a = packet_simulate(g, cap, o);
        CHECK(a.conservation_violations == 0);
        CHECK(a.fifo_violations == 0);
        CHECK(a.in_flight > 0);
        for (auto& s : a.trace) CHECK(s.generated == s.delivered + s.in_flight);
        CHECK(a.generated == a.delivered + a.in_flight);
        auto b = packet_simulate(g, cap, o);
        CHECK(a.delivered == b.delivered);
        CHECK(a.in_flight == b.in_flight);
        o.seed = 43;
        CHECK(packet_simulate(g, cap, o).generated != a.generated);
    }
    SUBCASE("Bernoulli generation is exact for integer rates") {
        auto g = cycle(5);
        SimOptions o;
        o.lambda = 2.0;
        o.horizon = 10;
        o.generation = Generation::Bernoulli;
        auto r = packet_simulate(g, std::vector<double>(5, 100.0), o);
        CHECK(r.generated == 2 * 5 * 10);
    }
    SUBCASE("trace CSV") {
        SimOptions o;
        o.lambda = 0.5;
        o.horizon = 3;
        auto r = packet_simulate(path(3), std::vector<double>(3, 2.0), o);
        std::ostringstream out;
        write_trace_csv(out, r);
        const auto text = out.str();
        CHECK(text.rfind("t,L_total,generated,delivered\n", 0) == 0);
        CHECK(std::count(text.begin(), text.end(), '\n') == 4);
    }
}

TEST_CASE("simulated onset tracks the analytic onset") {
    auto g = generate_ba({100, 5, 2}, 6);
    auto c = compute_centralities(g);
    auto cap = allocate_capacity(c, 0.5);
    RoutingTable routes(g);
    const double analytic = analytic_onset(cap, expected_inflow(c, 1.0));
    OnsetSearch s;
    s.hi = 4.0 * analytic;
    s.horizon = 400;
    s.seeds = {1, 2, 3};
    const double sim = simulated_onset(routes, cap, s);
    CHECK(sim > 0.5 * analytic);
    CHECK(sim < 2.0 * analytic);
    CHECK_FALSE(simulated_congested(routes, cap, 0.3 * analytic, s));
    CHECK(simulated_congested(routes, cap, 3.0 * analytic, s));
}
