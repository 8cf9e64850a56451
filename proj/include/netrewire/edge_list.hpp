#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "netrewire/graph.hpp"

namespace netrewire {

struct LoadOptions {
    // Collapse `layer u v` lines onto one edge per distinct {u, v}.
    bool aggregate_layers = false;
    // Keep only lines of this layer (ignored when aggregating).
    std::optional<std::string> layer;
    bool largest_component_only = true;
};

struct LoadReport {
    std::size_t lines = 0;
    std::size_t comment_lines = 0;
    std::size_t layered_lines = 0;
    std::size_t layers = 0;
    std::size_t distinct_layered_edges = 0; // distinct (layer, {u,v}) triples
    std::size_t self_loops_dropped = 0;
    std::size_t duplicates_dropped = 0;
    std::size_t nodes_in_file = 0;
    std::size_t edges_in_file = 0; // distinct {u,v} after aggregation
    std::size_t components = 0;
    std::size_t nodes_kept = 0;
    std::size_t edges_kept = 0;
};

struct LoadResult {
    Graph graph;
    LoadReport report;
};

// Whitespace-separated `u v` or `layer u v` lines; `#` starts a comment line.
// Node tokens are remapped to 0..N-1 in order of first appearance.
LoadResult read_edge_list(std::istream& in, const LoadOptions& options = {});
LoadResult load_edge_list(const std::filesystem::path& path, const LoadOptions& options = {});

// Canonical form: endpoints sorted within a line, lines sorted.
void write_edge_list(std::ostream& out, const Graph& g);
void save_edge_list(const std::filesystem::path& path, const Graph& g);

void write_load_report(std::ostream& out, const LoadReport& report);

} // namespace netrewire
