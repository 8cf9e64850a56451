#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "netrewire/graph.hpp"

namespace testing {

using netrewire::Graph;
using netrewire::NodeId;

inline Graph from_edges(std::size_t n, std::initializer_list<std::pair<NodeId, NodeId>> edges) {
    Graph g(n);
    for (auto [a, b] : edges) g.add_edge(a, b);
    return g;
}

inline Graph star(std::size_t leaves) {
    Graph g(leaves + 1);
    for (NodeId v = 1; v <= leaves; ++v) g.add_edge(0, v);
    return g;
}

inline Graph path(std::size_t n) {
    Graph g(n);
    for (NodeId v = 1; v < n; ++v) g.add_edge(v - 1, v);
    return g;
}

inline Graph cycle(std::size_t n) {
    Graph g = path(n);
    g.add_edge(0, static_cast<NodeId>(n - 1));
    return g;
}

inline Graph complete(std::size_t n) {
    Graph g(n);
    for (NodeId a = 0; a < n; ++a)
        for (NodeId b = a + 1; b < n; ++b) g.add_edge(a, b);
    return g;
}

// Random tree plus each remaining pair with probability p; always connected.
inline Graph random_connected(std::size_t n, double p, std::mt19937_64& rng) {
    Graph g(n);
    for (NodeId v = 1; v < n; ++v) g.add_edge(v, static_cast<NodeId>(std::uniform_int_distribution<NodeId>(0, v - 1)(rng)));
    std::bernoulli_distribution extra(p);
    for (NodeId a = 0; a < n; ++a)
        for (NodeId b = a + 1; b < n; ++b)
            if (!g.has_edge(a, b) && extra(rng)) g.add_edge(a, b);
    return g;
}

// Floyd-Warshall hop distances; -1 when unreachable.
inline std::vector<std::vector<int>> all_distances(const Graph& g) {
    const std::size_t n = g.node_count();
    const int inf = 1 << 20;
    std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
    for (NodeId a = 0; a < n; ++a) {
        d[a][a] = 0;
        for (NodeId b : g.neighbors(a)) d[a][b] = 1;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    for (auto& row : d)
        for (auto& x : row)
            if (x >= inf) x = -1;
    return d;
}

// Betweenness by listing every shortest path of every unordered pair.
inline std::vector<double> brute_force_betweenness(const Graph& g) {
    const std::size_t n = g.node_count();
    const auto d = all_distances(g);
    std::vector<double> bc(n, 0.0);
    for (NodeId s = 0; s < n; ++s)
        for (NodeId t = s + 1; t < n; ++t) {
            std::vector<std::vector<NodeId>> paths;
            std::vector<NodeId> cur{s};
            auto extend = [&](auto&& self, NodeId u) -> void {
                if (u == t) {
                    paths.push_back(cur);
                    return;
                }
                for (NodeId w : g.neighbors(u))
                    if (d[w][t] == d[u][t] - 1) {
                        cur.push_back(w);
                        self(self, w);
                        cur.pop_back();
                    }
            };
            extend(extend, s);
            for (auto& p : paths)
                for (std::size_t k = 1; k + 1 < p.size(); ++k) bc[p[k]] += 1.0 / static_cast<double>(paths.size());
        }
    return bc;
}

// Core numbers by repeated deletion: for each k, strip nodes of degree < k
// until none remain; survivors have core >= k.
inline std::vector<std::size_t> brute_force_cores(const Graph& g) {
    const std::size_t n = g.node_count();
    std::vector<std::size_t> core(n, 0);
    for (std::size_t k = 1; k <= n; ++k) {
        std::vector<bool> alive(n, true);
        bool changed = true;
        while (changed) {
            changed = false;
            for (NodeId v = 0; v < n; ++v) {
                if (!alive[v]) continue;
                std::size_t deg = 0;
                for (NodeId w : g.neighbors(v)) deg += alive[w] ? 1 : 0;
                if (deg < k) {
                    alive[v] = false;
                    changed = true;
                }
            }
        }
        bool any = false;
        for (NodeId v = 0; v < n; ++v)
            if (alive[v]) {
                core[v] = k;
                any = true;
            }
        if (!any) break;
    }
    return core;
}

// Degree correlation from the joint distribution of remaining degrees at
// the two ends of an edge: r = sum_jk jk (e_jk - q_j q_k) / sigma_q^2.
inline double joint_distribution_assortativity(const Graph& g) {
    std::map<std::pair<std::size_t, std::size_t>, double> e;
    const double m = static_cast<double>(g.edge_count());
    for (auto edge : g.edges()) {
        std::size_t a = g.degree(edge.u) - 1, b = g.degree(edge.v) - 1;
        e[{a, b}] += 0.5 / m;
        e[{b, a}] += 0.5 / m;
    }
    std::map<std::size_t, double> q;
    for (auto& [jk, w] : e) q[jk.first] += w;
    double mean = 0.0, second = 0.0;
    for (auto [k, w] : q) {
        mean += static_cast<double>(k) * w;
        second += static_cast<double>(k * k) * w;
    }
    const double var = second - mean * mean;
    double num = 0.0;
    for (auto [j, wj] : q)
        for (auto [k, wk] : q) {
            auto it = e.find({j, k});
            const double ejk = it == e.end() ? 0.0 : it->second;
            num += static_cast<double>(j) * static_cast<double>(k) * (ejk - wj * wk);
        }
    return num / var;
}

// phi(k) by counting edges among nodes of degree > k pair by pair.
inline std::map<std::size_t, double> brute_force_rich_club(const Graph& g) {
    std::map<std::size_t, double> out;
    std::set<std::size_t> degrees;
    for (NodeId v = 0; v < g.node_count(); ++v) degrees.insert(g.degree(v));
    for (std::size_t k : degrees) {
        std::vector<NodeId> rich;
        for (NodeId v = 0; v < g.node_count(); ++v)
            if (g.degree(v) > k) rich.push_back(v);
        if (rich.size() < 2) continue;
        std::size_t links = 0;
        for (std::size_t a = 0; a < rich.size(); ++a)
            for (std::size_t b = a + 1; b < rich.size(); ++b) links += g.has_edge(rich[a], rich[b]) ? 1 : 0;
        const double nr = static_cast<double>(rich.size());
        out[k] = 2.0 * static_cast<double>(links) / (nr * (nr - 1.0));
    }
    return out;
}

} // namespace testing
