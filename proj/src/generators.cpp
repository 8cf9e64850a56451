#include "netrewire/generators.hpp"

#include <algorithm>
#include <string>

#include "netrewire/error.hpp"
#include "netrewire/random.hpp"

namespace netrewire {

void BaParams::validate() const {
    if (links < 1) throw ConfigError("BA: m must be at least 1");
    if (seed_nodes < links)
        throw ConfigError("BA: m0 (" + std::to_string(seed_nodes) + ") must be >= m (" + std::to_string(links) + ")");
    if (nodes <= seed_nodes)
        throw ConfigError("BA: N (" + std::to_string(nodes) + ") must exceed m0 (" + std::to_string(seed_nodes) + ")");
}

Graph generate_ba(const BaParams& params, std::uint64_t seed) {
    params.validate();
    Rng rng(seed);
    Graph g(params.nodes);

    // Every edge contributes both endpoints, so a uniform draw from this list
    // selects a node with probability k_i / sum_j k_j.
    std::vector<NodeId> endpoints;
    endpoints.reserve(2 * (params.seed_nodes * params.seed_nodes + params.nodes * params.links));
    for (NodeId a = 0; a < params.seed_nodes; ++a)
        for (NodeId b = a + 1; b < params.seed_nodes; ++b) {
            g.add_edge(a, b);
            endpoints.push_back(a);
            endpoints.push_back(b);
        }

    std::vector<NodeId> targets;
    for (NodeId v = static_cast<NodeId>(params.seed_nodes); v < params.nodes; ++v) {
        targets.clear();
        while (targets.size() < params.links) {
            // m0 = 1 leaves the seed without edges; fall back to uniform choice.
            NodeId t = endpoints.empty() ? static_cast<NodeId>(uniform_index(v, rng))
                                         : endpoints[uniform_index(endpoints.size(), rng)];
            if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
        }
        for (NodeId t : targets) {
            g.add_edge(v, t);
            endpoints.push_back(v);
            endpoints.push_back(t);
        }
    }
    return g;
}

} // namespace netrewire
