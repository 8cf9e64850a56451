#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "netrewire/centrality.hpp"
#include "netrewire/graph.hpp"
#include "netrewire/meso.hpp"
#include "netrewire/random.hpp"

namespace netrewire {

enum class Strategy { None, Dpa, Dec, Dkbc, Ckdbc };

inline constexpr std::array<Strategy, 4> kRewiringStrategies{Strategy::Dpa, Strategy::Dec, Strategy::Dkbc,
                                                             Strategy::Ckdbc};

std::string_view strategy_name(Strategy s);
// Accepts none|dpa|dec|dkbc|ckdbc (case-insensitive). Throws ConfigError.
Strategy parse_strategy(std::string_view name);

struct RewireConfig {
    Strategy strategy = Strategy::None;
    double r_f = 0.0;              // fraction of |E| to rewire
    std::size_t max_attempts = 50; // draws per move, and consecutive failed moves before giving up
    std::uint64_t seed = 0;
    bool require_connectivity = true;
    std::size_t recompute_every = 1; // refresh strategy inputs every B accepted moves

    void validate() const;
};

// Edge {kept, dropped} replaced by {kept, added}.
struct Move {
    NodeId kept;
    NodeId dropped;
    NodeId added;
};

struct MoveLimits {
    std::size_t max_attempts = 50;
    bool require_connectivity = true;
};

struct MoveOutcome {
    std::optional<Move> move;
    std::size_t draws = 0;
    std::size_t rejected_condition = 0;
    std::size_t rejected_no_candidate = 0;
    std::size_t rejected_disconnect = 0;
};

// Pair scores on the [0, 2] scale: pair_correlation + 1. With zero excess
// degree variance every pair scores 1 (uncorrelated).
double scaled_pair_score(const EdgeCorrelation& c, std::size_t k_i, std::size_t k_j);

// corr(v) = min over neighbours of the scaled pair score;
// zeta_v = corr(v) / sum over neighbours of the scaled pair score.
struct StrategyScores {
    std::vector<double> corr;
    std::vector<double> zeta;
};

StrategyScores strategy_scores(const Graph& g, const EdgeCorrelation& c);

// Attachment weights for node i; zero for i and its neighbours.
std::vector<double> dpa_weights(const Graph& g, const StrategyScores& s, NodeId i);          // k_v zeta_v
std::vector<double> dec_weights(const Graph& g, const StrategyScores& s, std::span<const double> ec,
                                NodeId i);                                                   // (1 - x_v) zeta_v
// prod(n) = (r_deg(i, n) + 1) g(n) for every node n.
std::vector<double> ckdbc_products(const Graph& g, const EdgeCorrelation& c, std::span<const double> bc, NodeId i);

std::optional<NodeId> choose_dpa_target(const Graph& g, const StrategyScores& s, NodeId i, Rng& rng);
std::optional<NodeId> choose_dec_target(const Graph& g, const StrategyScores& s, std::span<const double> ec,
                                        NodeId i, Rng& rng);
// Neighbour of i drawn proportionally to prod; uniform if every prod is zero.
NodeId choose_ckdbc_removal(const Graph& g, std::span<const double> prod, NodeId i, Rng& rng);

// Single moves. Each mutates `g` only when it returns a move.
MoveOutcome dpa_move(Graph& g, const EdgeCorrelation& c, const StrategyScores& s, const MoveLimits& lim, Rng& rng);
MoveOutcome dec_move(Graph& g, const EdgeCorrelation& c, const StrategyScores& s, std::span<const double> ec,
                     const MoveLimits& lim, Rng& rng);
MoveOutcome dkbc_move(Graph& g, const CorePartition& degree_cores, std::span<const double> bc, const MoveLimits& lim,
                      Rng& rng);
MoveOutcome ckdbc_move(Graph& g, const CorePartition& closeness_cores, std::span<const double> bc,
                       const EdgeCorrelation& c, const MoveLimits& lim, Rng& rng);

struct RewireReport {
    Strategy strategy = Strategy::None;
    double r_f = 0.0;
    std::uint64_t seed = 0;
    std::size_t target_moves = 0;
    std::size_t attempted = 0; // candidate draws
    std::size_t accepted = 0;
    std::size_t rejected_no_candidate = 0;
    std::size_t rejected_condition = 0;
    std::size_t rejected_disconnect = 0;
    std::size_t failed_moves = 0;
    std::size_t edges_before = 0;
    std::size_t edges_after = 0;

    static std::string csv_header();
    std::string csv_row() const;
};

// Applies strategy moves to a graph it owns, refreshing the strategy inputs
// (centralities, cores, correlations) after accepted moves.
class Rewirer {
public:
    Rewirer(Graph g, const RewireConfig& cfg);

    // One move with up to max_attempts draws.
    std::optional<Move> step();
    // Steps until round(r_f |E|) moves are accepted or max_attempts
    // consecutive moves fail.
    const RewireReport& run();

    const Graph& graph() const noexcept { return g_; }
    Graph release() && { return std::move(g_); }
    const RewireReport& report() const noexcept { return report_; }

private:
    void refresh();

    Graph g_;
    RewireConfig cfg_;
    Rng rng_;
    RewireReport report_;
    std::size_t since_refresh_ = 0;

    EdgeCorrelation corr_;
    StrategyScores scores_;
    std::vector<double> ec_;
    std::vector<double> bc_;
    CorePartition cores_;
};

struct RewireResult {
    Graph graph;
    RewireReport report;
};

RewireResult rewire(const Graph& g, const RewireConfig& cfg);

} // namespace netrewire
