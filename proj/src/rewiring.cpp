#include "netrewire/rewiring.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "netrewire/csv.hpp"
#include "netrewire/error.hpp"

namespace netrewire {

std::string_view strategy_name(Strategy s) {
    switch (s) {
    case Strategy::None: return "none";
    case Strategy::Dpa: return "dpa";
    case Strategy::Dec: return "dec";
    case Strategy::Dkbc: return "dkbc";
    case Strategy::Ckdbc: return "ckdbc";
    }
    return "?";
}

Strategy parse_strategy(std::string_view name) {
    std::string lower(name);
    for (auto& ch : lower) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    for (auto s : {Strategy::None, Strategy::Dpa, Strategy::Dec, Strategy::Dkbc, Strategy::Ckdbc})
        if (strategy_name(s) == lower) return s;
    throw ConfigError("unknown strategy '" + std::string(name) + "' (expected none, dpa, dec, dkbc, ckdbc)");
}

void RewireConfig::validate() const {
    if (!(r_f >= 0.0 && r_f <= 1.0)) throw ConfigError("r_f must lie in [0, 1]");
    if (max_attempts < 1) throw ConfigError("max_attempts must be at least 1");
    if (recompute_every < 1) throw ConfigError("recompute_every must be at least 1");
}

double scaled_pair_score(const EdgeCorrelation& c, std::size_t k_i, std::size_t k_j) {
    if (!(c.sigma_q2 > 0.0)) return 1.0;
    return pair_correlation(c, k_i, k_j) + 1.0;
}

StrategyScores strategy_scores(const Graph& g, const EdgeCorrelation& c) {
    const std::size_t n = g.node_count();
    StrategyScores s;
    s.corr.assign(n, 0.0);
    s.zeta.assign(n, 0.0);
    for (NodeId v = 0; v < n; ++v) {
        if (g.degree(v) == 0) continue;
        double lo = 2.0, sum = 0.0;
        for (NodeId w : g.neighbors(v)) {
            double r = scaled_pair_score(c, g.degree(v), g.degree(w));
            lo = std::min(lo, r);
            sum += r;
        }
        s.corr[v] = lo;
        s.zeta[v] = sum > 0.0 ? lo / sum : 0.0;
    }
    return s;
}

namespace {

void zero_ineligible(const Graph& g, NodeId i, std::vector<double>& w) {
    w[i] = 0.0;
    for (NodeId n : g.neighbors(i)) w[n] = 0.0;
}

// Uniformly random ordered edge (kept end, dropped end).
std::pair<NodeId, NodeId> random_edge(const Graph& g, Rng& rng) {
    std::size_t r = uniform_index(2 * g.edge_count(), rng);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (r < g.degree(v)) return {v, g.neighbors(v)[r]};
        r -= g.degree(v);
    }
    throw std::logic_error("random_edge: degree sum mismatch");
}

// Replaces {i, j} by {i, v}; reverts and returns false if that disconnects
// the graph (j no longer reaches i).
bool apply_move(Graph& g, NodeId i, NodeId j, NodeId v, bool require_connectivity) {
    g.remove_edge(i, j);
    g.add_edge(i, v);
    if (require_connectivity && !reachable(g, j, i)) {
        g.remove_edge(i, v);
        g.add_edge(i, j);
        return false;
    }
    return true;
}

MoveOutcome weighted_attachment_move(Graph& g, const EdgeCorrelation& c, const MoveLimits& lim, Rng& rng,
                                     const auto& choose_target) {
    MoveOutcome out;
    if (g.edge_count() == 0) return out;
    while (out.draws < lim.max_attempts) {
        ++out.draws;
        auto [i, j] = random_edge(g, rng);
        const double r = c.sigma_q2 > 0.0 ? pair_correlation(c, g.degree(i), g.degree(j)) : 0.0;
        if (!(r > 0.0)) {
            ++out.rejected_condition;
            continue;
        }
        std::optional<NodeId> v = choose_target(i);
        if (!v) {
            ++out.rejected_no_candidate;
            continue;
        }
        if (!apply_move(g, i, j, *v, lim.require_connectivity)) {
            ++out.rejected_disconnect;
            continue;
        }
        out.move = Move{i, j, *v};
        return out;
    }
    return out;
}

} // namespace

std::vector<double> dpa_weights(const Graph& g, const StrategyScores& s, NodeId i) {
    std::vector<double> w(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v) w[v] = static_cast<double>(g.degree(v)) * s.zeta[v];
    zero_ineligible(g, i, w);
    return w;
}

std::vector<double> dec_weights(const Graph& g, const StrategyScores& s, std::span<const double> ec, NodeId i) {
    std::vector<double> w(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v) w[v] = std::max(0.0, 1.0 - ec[v]) * s.zeta[v];
    zero_ineligible(g, i, w);
    return w;
}

std::vector<double> ckdbc_products(const Graph& g, const EdgeCorrelation& c, std::span<const double> bc, NodeId i) {
    std::vector<double> prod(g.node_count());
    for (NodeId n = 0; n < g.node_count(); ++n) prod[n] = scaled_pair_score(c, g.degree(i), g.degree(n)) * bc[n];
    return prod;
}

std::optional<NodeId> choose_dpa_target(const Graph& g, const StrategyScores& s, NodeId i, Rng& rng) {
    auto w = dpa_weights(g, s, i);
    auto idx = sample_weighted(w, rng);
    if (!idx) return std::nullopt;
    return static_cast<NodeId>(*idx);
}

std::optional<NodeId> choose_dec_target(const Graph& g, const StrategyScores& s, std::span<const double> ec,
                                        NodeId i, Rng& rng) {
    auto w = dec_weights(g, s, ec, i);
    auto idx = sample_weighted(w, rng);
    if (!idx) return std::nullopt;
    return static_cast<NodeId>(*idx);
}

NodeId choose_ckdbc_removal(const Graph& g, std::span<const double> prod, NodeId i, Rng& rng) {
    auto nbrs = g.neighbors(i);
    if (nbrs.empty()) throw DataError("node has no neighbours to drop");
    std::vector<double> w(nbrs.size());
    for (std::size_t k = 0; k < nbrs.size(); ++k) w[k] = prod[nbrs[k]];
    auto idx = sample_weighted(w, rng);
    return nbrs[idx ? *idx : uniform_index(nbrs.size(), rng)];
}

MoveOutcome dpa_move(Graph& g, const EdgeCorrelation& c, const StrategyScores& s, const MoveLimits& lim, Rng& rng) {
    return weighted_attachment_move(g, c, lim, rng, [&](NodeId i) { return choose_dpa_target(g, s, i, rng); });
}

MoveOutcome dec_move(Graph& g, const EdgeCorrelation& c, const StrategyScores& s, std::span<const double> ec,
                     const MoveLimits& lim, Rng& rng) {
    return weighted_attachment_move(g, c, lim, rng, [&](NodeId i) { return choose_dec_target(g, s, ec, i, rng); });
}

MoveOutcome dkbc_move(Graph& g, const CorePartition& degree_cores, std::span<const double> bc, const MoveLimits& lim,
                      Rng& rng) {
    MoveOutcome out;
    if (g.edge_count() == 0) return out;
    const auto& core = degree_cores.core_index;
    auto [i, j] = random_edge(g, rng);
    while (out.draws < lim.max_attempts) {
        ++out.draws;
        auto v = static_cast<NodeId>(uniform_index(g.node_count(), rng));
        if (v == i || g.has_edge(i, v) || !(core[v] > core[i] && bc[v] < bc[i])) {
            ++out.rejected_condition;
            continue;
        }
        if (!apply_move(g, i, j, v, lim.require_connectivity)) {
            ++out.rejected_disconnect;
            continue;
        }
        out.move = Move{i, j, v};
        return out;
    }
    return out;
}

MoveOutcome ckdbc_move(Graph& g, const CorePartition& closeness_cores, std::span<const double> bc,
                       const EdgeCorrelation& c, const MoveLimits& lim, Rng& rng) {
    MoveOutcome out;
    if (g.edge_count() == 0) return out;
    auto innermost = closeness_cores.innermost();
    if (innermost.empty()) throw DataError("closeness partition has an empty innermost core");
    NodeId i = innermost[uniform_index(innermost.size(), rng)];
    while (g.degree(i) == 0) i = innermost[uniform_index(innermost.size(), rng)];

    auto prod = ckdbc_products(g, c, bc, i);
    NodeId j = choose_ckdbc_removal(g, prod, i, rng);

    std::vector<NodeId> candidates;
    candidates.reserve(g.node_count());
    {
        auto nbrs = g.neighbors(i);
        std::size_t k = 0;
        for (NodeId v = 0; v < g.node_count(); ++v) {
            while (k < nbrs.size() && nbrs[k] < v) ++k;
            if (v != i && !(k < nbrs.size() && nbrs[k] == v)) candidates.push_back(v);
        }
    }
    if (candidates.empty()) {
        ++out.draws;
        ++out.rejected_no_candidate;
        return out;
    }
    while (out.draws < lim.max_attempts) {
        ++out.draws;
        NodeId v = candidates[uniform_index(candidates.size(), rng)];
        if (!(prod[v] < uniform01(rng))) {
            ++out.rejected_condition;
            continue;
        }
        if (!apply_move(g, i, j, v, lim.require_connectivity)) {
            ++out.rejected_disconnect;
            continue;
        }
        out.move = Move{i, j, v};
        return out;
    }
    return out;
}

std::string RewireReport::csv_header() {
    return "strategy,r_f,seed,attempted,accepted,rejected_no_candidate,rejected_condition,rejected_disconnect,"
           "failed_moves,target_moves,edges_before,edges_after";
}

std::string RewireReport::csv_row() const {
    CsvRow row;
    row << strategy_name(strategy) << r_f << std::to_string(seed) << attempted << accepted << rejected_no_candidate
        << rejected_condition << rejected_disconnect << failed_moves << target_moves << edges_before << edges_after;
    return row.str();
}

Rewirer::Rewirer(Graph g, const RewireConfig& cfg) : g_(std::move(g)), cfg_(cfg), rng_(cfg.seed) {
    cfg_.validate();
    report_.strategy = cfg_.strategy;
    report_.r_f = cfg_.r_f;
    report_.seed = cfg_.seed;
    report_.edges_before = g_.edge_count();
    report_.edges_after = g_.edge_count();
    report_.target_moves = cfg_.strategy == Strategy::None
                               ? 0
                               : static_cast<std::size_t>(std::llround(cfg_.r_f * static_cast<double>(g_.edge_count())));
    if (cfg_.strategy != Strategy::None && g_.edge_count() > 0) {
        if (cfg_.require_connectivity && !is_connected(g_)) throw DisconnectedGraphError();
        refresh();
    }
}

void Rewirer::refresh() {
    since_refresh_ = 0;
    switch (cfg_.strategy) {
    case Strategy::None: return;
    case Strategy::Dpa:
        corr_ = edge_correlation(g_);
        scores_ = strategy_scores(g_, corr_);
        return;
    case Strategy::Dec: {
        corr_ = edge_correlation(g_);
        scores_ = strategy_scores(g_, corr_);
        EigenvectorOptions opt;
        opt.start = ec_;
        ec_ = eigenvector_centrality(g_, opt).values;
        return;
    }
    case Strategy::Dkbc:
        cores_ = kcore_degree(g_);
        bc_ = betweenness(g_).normalized;
        return;
    case Strategy::Ckdbc: {
        corr_ = edge_correlation(g_);
        auto sp = shortest_path_stats(g_);
        const double norm = betweenness_normalizer(g_.node_count());
        bc_.resize(sp.bc_raw.size());
        for (std::size_t k = 0; k < bc_.size(); ++k) bc_[k] = norm > 0.0 ? sp.bc_raw[k] / norm : 0.0;
        cores_ = kcore_closeness(closeness_from_distance_sums(sp.distance_sum), kcore_degree(g_).main_core_index);
        return;
    }
    }
}

std::optional<Move> Rewirer::step() {
    if (cfg_.strategy == Strategy::None || g_.edge_count() == 0) return std::nullopt;
    const MoveLimits lim{cfg_.max_attempts, cfg_.require_connectivity};
    MoveOutcome out;
    switch (cfg_.strategy) {
    case Strategy::None: break;
    case Strategy::Dpa: out = dpa_move(g_, corr_, scores_, lim, rng_); break;
    case Strategy::Dec: out = dec_move(g_, corr_, scores_, ec_, lim, rng_); break;
    case Strategy::Dkbc: out = dkbc_move(g_, cores_, bc_, lim, rng_); break;
    case Strategy::Ckdbc: out = ckdbc_move(g_, cores_, bc_, corr_, lim, rng_); break;
    }
    report_.attempted += out.draws;
    report_.rejected_condition += out.rejected_condition;
    report_.rejected_no_candidate += out.rejected_no_candidate;
    report_.rejected_disconnect += out.rejected_disconnect;
    report_.edges_after = g_.edge_count();
    if (!out.move) {
        ++report_.failed_moves;
        return std::nullopt;
    }
    ++report_.accepted;
    if (++since_refresh_ >= cfg_.recompute_every) refresh();
    return out.move;
}

const RewireReport& Rewirer::run() {
    std::size_t consecutive_failures = 0;
    while (report_.accepted < report_.target_moves && consecutive_failures < cfg_.max_attempts) {
        if (step())
            consecutive_failures = 0;
        else
            ++consecutive_failures;
    }
    return report_;
}

RewireResult rewire(const Graph& g, const RewireConfig& cfg) {
    Rewirer r(g, cfg);
    r.run();
    RewireReport report = r.report();
    return {std::move(r).release(), report};
}

} // namespace netrewire
