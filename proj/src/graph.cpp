#include "netrewire/graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace netrewire {

Graph::Graph(std::size_t n) : adj_(n), labels_(n) {
    for (std::size_t i = 0; i < n; ++i) labels_[i] = std::to_string(i);
}

Graph::Graph(std::size_t n, std::vector<std::string> labels) : adj_(n), labels_(std::move(labels)) {
    if (labels_.size() != n) throw std::invalid_argument("label count does not match node count");
}

std::vector<std::size_t> Graph::degrees() const {
    std::vector<std::size_t> k(adj_.size());
    for (std::size_t i = 0; i < adj_.size(); ++i) k[i] = adj_[i].size();
    return k;
}

double Graph::mean_degree() const {
    return adj_.empty() ? 0.0 : 2.0 * static_cast<double>(edges_) / static_cast<double>(adj_.size());
}

void Graph::check_node(NodeId v) const {
    if (v >= adj_.size()) throw std::invalid_argument("node index out of range: " + std::to_string(v));
}

bool Graph::has_edge(NodeId a, NodeId b) const {
    check_node(a);
    check_node(b);
    const auto& small = adj_[a].size() <= adj_[b].size() ? adj_[a] : adj_[b];
    NodeId other = adj_[a].size() <= adj_[b].size() ? b : a;
    return std::binary_search(small.begin(), small.end(), other);
}

void Graph::add_edge(NodeId a, NodeId b) {
    check_node(a);
    check_node(b);
    if (a == b) throw std::invalid_argument("self-loop on node " + std::to_string(a));
    auto& na = adj_[a];
    auto it = std::lower_bound(na.begin(), na.end(), b);
    if (it != na.end() && *it == b)
        throw std::invalid_argument("duplicate edge " + std::to_string(a) + "-" + std::to_string(b));
    na.insert(it, b);
    auto& nb = adj_[b];
    nb.insert(std::lower_bound(nb.begin(), nb.end(), a), a);
    ++edges_;
}

void Graph::remove_edge(NodeId a, NodeId b) {
    check_node(a);
    check_node(b);
    auto& na = adj_[a];
    auto it = std::lower_bound(na.begin(), na.end(), b);
    if (it == na.end() || *it != b)
        throw std::invalid_argument("no edge " + std::to_string(a) + "-" + std::to_string(b));
    na.erase(it);
    auto& nb = adj_[b];
    nb.erase(std::lower_bound(nb.begin(), nb.end(), a));
    --edges_;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edges_);
    for (NodeId u = 0; u < adj_.size(); ++u)
        for (NodeId v : adj_[u])
            if (u < v) out.push_back({u, v});
    return out;
}

Graph Graph::induced_subgraph(std::span<const NodeId> nodes) const {
    std::vector<std::int64_t> index(adj_.size(), -1);
    std::vector<std::string> labels;
    labels.reserve(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        check_node(nodes[k]);
        index[nodes[k]] = static_cast<std::int64_t>(k);
        labels.push_back(labels_[nodes[k]]);
    }
    Graph sub(nodes.size(), std::move(labels));
    for (std::size_t k = 0; k < nodes.size(); ++k)
        for (NodeId w : adj_[nodes[k]])
            if (index[w] > static_cast<std::int64_t>(k))
                sub.add_edge(static_cast<NodeId>(k), static_cast<NodeId>(index[w]));
    return sub;
}

std::vector<std::vector<NodeId>> connected_components(const Graph& g) {
    const std::size_t n = g.node_count();
    std::vector<bool> seen(n, false);
    std::vector<std::vector<NodeId>> comps;
    std::vector<NodeId> stack;
    for (NodeId s = 0; s < n; ++s) {
        if (seen[s]) continue;
        comps.emplace_back();
        auto& comp = comps.back();
        seen[s] = true;
        stack.push_back(s);
        while (!stack.empty()) {
            NodeId u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            for (NodeId w : g.neighbors(u))
                if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
        }
        std::sort(comp.begin(), comp.end());
    }
    return comps;
}

bool is_connected(const Graph& g) {
    if (g.node_count() == 0) return true;
    std::vector<bool> seen(g.node_count(), false);
    std::vector<NodeId> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
        NodeId u = stack.back();
        stack.pop_back();
        for (NodeId w : g.neighbors(u))
            if (!seen[w]) {
                seen[w] = true;
                ++count;
                stack.push_back(w);
            }
    }
    return count == g.node_count();
}

bool reachable(const Graph& g, NodeId source, NodeId target) {
    if (source == target) return true;
    std::vector<bool> seen(g.node_count(), false);
    std::vector<NodeId> stack{source};
    seen[source] = true;
    while (!stack.empty()) {
        NodeId u = stack.back();
        stack.pop_back();
        for (NodeId w : g.neighbors(u)) {
            if (w == target) return true;
            if (!seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
        }
    }
    return false;
}

} // namespace netrewire
