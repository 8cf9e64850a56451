#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "netrewire/graph.hpp"

namespace netrewire {

// One Brandes sweep over all sources: betweenness in unordered pair units and
// per-node distance sums. Throws DisconnectedGraphError.
struct ShortestPathStats {
    std::vector<double> bc_raw;       // B(v) = sum_{s<d, s,d != v} sigma_sd(v) / sigma_sd
    std::vector<double> distance_sum; // sum_{v != u} d(v, u)
    double average_path_length = 0.0; // mean d over unordered pairs
};

ShortestPathStats shortest_path_stats(const Graph& g);

struct Betweenness {
    std::vector<double> raw;
    std::vector<double> normalized; // raw / ((N-1)(N-2)/2)
};

Betweenness betweenness(const Graph& g);
double betweenness_normalizer(std::size_t n);

// (N-1) / sum_{v != u} d(v, u)
std::vector<double> closeness(const Graph& g);
std::vector<double> closeness_from_distance_sums(std::span<const double> distance_sum);

double average_path_length(const Graph& g);

struct EigenvectorOptions {
    double tolerance = 1e-10;
    std::size_t max_iterations = 10000;
    std::span<const double> start; // empty: uniform start
};

struct EigenvectorResult {
    std::vector<double> values; // max-normalized, max = 1
    double eigenvalue = 0.0;
    double residual = 0.0;      // ||A x - kappa x||_inf
    std::size_t iterations = 0;
};

// Power iteration on A + I, which shares A's principal eigenvector but is
// not defeated by the +/-kappa pair of bipartite graphs.
// Throws DisconnectedGraphError, ConvergenceError (carrying the last residual).
EigenvectorResult eigenvector_centrality(const Graph& g, const EigenvectorOptions& options = {});

// Moments of the remaining degree (k - 1) over the 2|E| edge ends; these are
// the mean and variance of the excess degree distribution q_k.
struct EdgeCorrelation {
    double mu_q = 0.0;
    double sigma_q2 = 0.0;
};

EdgeCorrelation edge_correlation(const Graph& g);

// Newman's degree assortativity, as the Pearson correlation of remaining
// degrees over ordered edge ends. Throws UndefinedCorrelationError when
// sigma_q2 == 0.
double assortativity(const Graph& g);

// Per-pair contribution ((k_i-1) - mu)((k_j-1) - mu) / sigma^2. Its average
// over the ordered edge ends is exactly the global assortativity.
double pair_correlation_raw(const EdgeCorrelation& c, std::size_t k_i, std::size_t k_j);
// Same, clamped to [-1, 1].
double pair_correlation(const EdgeCorrelation& c, std::size_t k_i, std::size_t k_j);
double pair_correlation(const Graph& g, NodeId i, NodeId j);

// Maps a correlation in [-1, 1] onto [0, 2]. Throws ConfigError outside.
double scale_correlation(double x);

struct CentralityBundle {
    std::vector<double> bc_raw;
    std::vector<double> bc; // normalized g(i)
    std::vector<double> cc;
    std::vector<double> ec; // max-normalized
    double eigenvalue = 0.0;
    double average_path_length = 0.0;
    EdgeCorrelation correlation;
    std::optional<double> r_deg; // empty when undefined (sigma_q2 == 0)

    std::size_t node_count() const noexcept { return bc.size(); }
};

CentralityBundle compute_centralities(const Graph& g, const EigenvectorOptions& ec_options = {});

// Columns: node,degree,bc_raw,bc_norm,cc,ec
void write_centrality_csv(std::ostream& out, const Graph& g, const CentralityBundle& c);

} // namespace netrewire
