#pragma once

#include <cstdint>

#include "netrewire/graph.hpp"

namespace netrewire {

struct BaParams {
    std::size_t nodes = 500;   // N
    std::size_t seed_nodes = 5; // m0, size of the complete seed graph
    std::size_t links = 2;     // m, links brought by each arriving node

    void validate() const;
};

// Barabasi-Albert growth from a complete graph on m0 nodes. Each arriving
// node attaches m distinct links; a target is chosen with probability
// proportional to its current degree.
Graph generate_ba(const BaParams& params, std::uint64_t seed);

} // namespace netrewire
