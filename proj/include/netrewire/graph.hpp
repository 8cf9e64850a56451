#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace netrewire {

using NodeId = std::uint32_t;

// Undirected edge with u < v.
struct Edge {
    NodeId u;
    NodeId v;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Undirected simple graph over dense node indices 0..N-1.
//
// Neighbor lists are kept sorted by index so that every traversal is
// deterministic. Each node carries a label (the id it had in the source file,
// or its index for generated graphs).
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n);
    Graph(std::size_t n, std::vector<std::string> labels);

    std::size_t node_count() const noexcept { return adj_.size(); }
    std::size_t edge_count() const noexcept { return edges_; }

    std::size_t degree(NodeId v) const { return adj_[v].size(); }
    std::span<const NodeId> neighbors(NodeId v) const { return adj_[v]; }
    std::vector<std::size_t> degrees() const;
    double mean_degree() const;

    bool has_edge(NodeId a, NodeId b) const;

    // Throws std::invalid_argument on self-loops, duplicates or bad indices.
    void add_edge(NodeId a, NodeId b);
    // Throws std::invalid_argument if the edge is absent.
    void remove_edge(NodeId a, NodeId b);

    // All edges with u < v, sorted.
    std::vector<Edge> edges() const;

    const std::string& label(NodeId v) const { return labels_[v]; }
    std::span<const std::string> labels() const { return labels_; }

    // Subgraph induced by `nodes`; node k of the result is nodes[k].
    Graph induced_subgraph(std::span<const NodeId> nodes) const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    void check_node(NodeId v) const;

    std::vector<std::vector<NodeId>> adj_;
    std::vector<std::string> labels_;
    std::size_t edges_ = 0;
};

std::vector<std::vector<NodeId>> connected_components(const Graph& g);
bool is_connected(const Graph& g);

// Breadth-first reachability of `target` from `source`.
bool reachable(const Graph& g, NodeId source, NodeId target);

} // namespace netrewire
