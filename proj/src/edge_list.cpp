#include "netrewire/edge_list.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "netrewire/error.hpp"

namespace netrewire {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream ss(line);
    std::string t;
    while (ss >> t) tokens.push_back(std::move(t));
    return tokens;
}

} // namespace

LoadResult read_edge_list(std::istream& in, const LoadOptions& options) {
    LoadReport report;
    std::unordered_map<std::string, NodeId> ids;
    std::vector<std::string> labels;
    std::set<std::pair<NodeId, NodeId>> edges;
    std::set<std::tuple<std::string, NodeId, NodeId>> layered;
    std::set<std::string> layer_names;

    auto intern = [&](const std::string& token) {
        auto [it, inserted] = ids.try_emplace(token, static_cast<NodeId>(labels.size()));
        if (inserted) labels.push_back(token);
        return it->second;
    };

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        ++report.lines;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') {
            ++report.comment_lines;
            continue;
        }
        auto tokens = split_ws(line);
        if (tokens.size() != 2 && tokens.size() != 3)
            throw DataError("line " + std::to_string(lineno) + ": expected 2 or 3 tokens, got " +
                            std::to_string(tokens.size()));
        std::string layer;
        if (tokens.size() == 3) {
            ++report.layered_lines;
            layer = tokens[0];
            layer_names.insert(layer);
            if (!options.aggregate_layers) {
                if (!options.layer)
                    throw DataError("line " + std::to_string(lineno) +
                                    ": multiplex line requires layer aggregation or a layer selection");
                if (*options.layer != layer) continue;
            }
            tokens.erase(tokens.begin());
        }
        NodeId a = intern(tokens[0]);
        NodeId b = intern(tokens[1]);
        if (a == b) {
            ++report.self_loops_dropped;
            continue;
        }
        auto key = std::minmax(a, b);
        if (!layer.empty()) layered.emplace(layer, key.first, key.second);
        if (!edges.emplace(key.first, key.second).second) ++report.duplicates_dropped;
    }

    report.layers = layer_names.size();
    report.distinct_layered_edges = layered.size();
    report.nodes_in_file = labels.size();
    report.edges_in_file = edges.size();
    if (edges.empty()) throw DataError("edge list contains no edges");

    const auto node_total = labels.size();
    Graph full(node_total, std::move(labels));
    for (auto [a, b] : edges) full.add_edge(a, b);

    auto comps = connected_components(full);
    report.components = comps.size();
    LoadResult result;
    if (options.largest_component_only && comps.size() > 1) {
        // Ties go to the component holding the earliest-seen node.
        auto best = std::max_element(comps.begin(), comps.end(), [](const auto& x, const auto& y) {
            return x.size() < y.size() || (x.size() == y.size() && x.front() > y.front());
        });
        result.graph = full.induced_subgraph(*best);
    } else {
        result.graph = std::move(full);
    }
    report.nodes_kept = result.graph.node_count();
    report.edges_kept = result.graph.edge_count();
    result.report = report;
    return result;
}

LoadResult load_edge_list(const std::filesystem::path& path, const LoadOptions& options) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open edge list: " + path.string());
    return read_edge_list(in, options);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    std::vector<std::pair<std::string_view, std::string_view>> lines;
    lines.reserve(g.edge_count());
    for (auto e : g.edges()) {
        std::string_view a = g.label(e.u), b = g.label(e.v);
        if (b < a) std::swap(a, b);
        lines.emplace_back(a, b);
    }
    std::sort(lines.begin(), lines.end());
    for (auto& [a, b] : lines) out << a << ' ' << b << '\n';
}

void save_edge_list(const std::filesystem::path& path, const Graph& g) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write edge list: " + path.string());
    write_edge_list(out, g);
}

void write_load_report(std::ostream& out, const LoadReport& r) {
    out << "lines " << r.lines << "\n"
        << "comment_lines " << r.comment_lines << "\n"
        << "layered_lines " << r.layered_lines << "\n"
        << "layers " << r.layers << "\n"
        << "distinct_layered_edges " << r.distinct_layered_edges << "\n"
        << "self_loops_dropped " << r.self_loops_dropped << "\n"
        << "duplicates_dropped " << r.duplicates_dropped << "\n"
        << "nodes_in_file " << r.nodes_in_file << "\n"
        << "edges_in_file " << r.edges_in_file << "\n"
        << "components " << r.components << "\n"
        << "nodes_kept " << r.nodes_kept << "\n"
        << "edges_kept " << r.edges_kept << "\n";
}

} // namespace netrewire
