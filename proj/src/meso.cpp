#include "netrewire/meso.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "netrewire/centrality.hpp"
#include "netrewire/csv.hpp"
#include "netrewire/error.hpp"

namespace netrewire {

std::vector<NodeId> CorePartition::innermost() const {
    std::vector<NodeId> out;
    for (NodeId v = 0; v < core_index.size(); ++v)
        if (core_index[v] == main_core_index) out.push_back(v);
    return out;
}

CorePartition kcore_degree(const Graph& g) {
    const std::size_t n = g.node_count();
    CorePartition p;
    p.basis = CoreBasis::Degree;
    p.core_index.assign(n, 0);
    if (n == 0) return p;

    std::vector<std::size_t> deg = g.degrees();
    const std::size_t kmax = *std::max_element(deg.begin(), deg.end());

    // Batagelj-Zaversnik: nodes sorted by current degree, bin[k] = first slot
    // of degree k in `order`.
    std::vector<std::size_t> bin(kmax + 1, 0);
    for (auto k : deg) ++bin[k];
    std::size_t start = 0;
    for (auto& b : bin) {
        auto c = b;
        b = start;
        start += c;
    }
    std::vector<NodeId> order(n);
    std::vector<std::size_t> pos(n);
    for (NodeId v = 0; v < n; ++v) {
        pos[v] = bin[deg[v]]++;
        order[pos[v]] = v;
    }
    for (std::size_t k = kmax; k > 0; --k) bin[k] = bin[k - 1];
    bin[0] = 0;

    for (std::size_t i = 0; i < n; ++i) {
        NodeId v = order[i];
        for (NodeId u : g.neighbors(v)) {
            if (deg[u] > deg[v]) {
                std::size_t du = deg[u];
                std::size_t pu = pos[u];
                std::size_t pw = bin[du];
                NodeId w = order[pw];
                if (u != w) {
                    order[pu] = w;
                    pos[w] = pu;
                    order[pw] = u;
                    pos[u] = pw;
                }
                ++bin[du];
                --deg[u];
            }
        }
    }
    p.core_index.assign(deg.begin(), deg.end());
    p.main_core_index = *std::max_element(p.core_index.begin(), p.core_index.end());
    return p;
}

CorePartition kcore_closeness(std::span<const double> closeness, std::size_t num_cores) {
    CorePartition p;
    p.basis = CoreBasis::Closeness;
    p.num_cores = num_cores;
    p.core_index.assign(closeness.size(), 0);
    if (closeness.empty()) return p;
    if (num_cores == 0) throw ConfigError("closeness cores need a main core of at least 1");

    const auto [lo_it, hi_it] = std::minmax_element(closeness.begin(), closeness.end());
    const double lo = *lo_it, hi = *hi_it;
    if (!(hi > lo)) {
        p.degenerate = true;
        return p;
    }
    p.interval = (hi - lo) / static_cast<double>(num_cores);
    // With a main core of 1 the floor would put everyone in core 0; keep the
    // top closeness class apart so there is always an inner core.
    const std::size_t top = std::max<std::size_t>(num_cores, 2) - 1;
    for (std::size_t i = 0; i < closeness.size(); ++i) {
        auto idx = static_cast<std::size_t>(std::floor((closeness[i] - lo) / p.interval));
        p.core_index[i] = std::min(idx, top);
    }
    p.main_core_index = *std::max_element(p.core_index.begin(), p.core_index.end());
    return p;
}

CorePartition kcore_closeness(const Graph& g) {
    auto degree_cores = kcore_degree(g);
    return kcore_closeness(closeness(g), degree_cores.main_core_index);
}

std::optional<double> RichClubProfile::at(std::size_t k) const {
    for (auto& [kk, v] : phi)
        if (kk == k) return v;
    return std::nullopt;
}

RichClubProfile rich_club_profile(const Graph& g) {
    RichClubProfile prof;
    const std::size_t n = g.node_count();
    if (n == 0 || g.edge_count() == 0) return prof;
    auto deg = g.degrees();
    const std::size_t kmax = *std::max_element(deg.begin(), deg.end());

    // nodes_above[k] = N_{>k}; edges_above[k] = E_{>k} (edge counted for
    // every k below the smaller endpoint degree).
    std::vector<std::size_t> node_hist(kmax + 1, 0), edge_hist(kmax + 1, 0);
    for (auto k : deg) ++node_hist[k];
    for (auto e : g.edges()) ++edge_hist[std::min(deg[e.u], deg[e.v])];
    std::vector<std::size_t> nodes_above(kmax + 1, 0), edges_above(kmax + 1, 0);
    for (std::size_t k = kmax; k-- > 0;) {
        nodes_above[k] = nodes_above[k + 1] + node_hist[k + 1];
        edges_above[k] = edges_above[k + 1] + edge_hist[k + 1];
    }

    std::vector<double> phi_of(kmax + 1, -1.0);
    std::vector<std::size_t> distinct;
    for (std::size_t k = 0; k <= kmax; ++k)
        if (node_hist[k] > 0) distinct.push_back(k);
    for (auto k : distinct) {
        const double na = static_cast<double>(nodes_above[k]);
        if (nodes_above[k] < 2) continue;
        const double phi = 2.0 * static_cast<double>(edges_above[k]) / (na * (na - 1.0));
        phi_of[k] = phi;
        prof.phi.emplace_back(k, phi);
    }
    double s = 0.0;
    for (auto k : deg)
        if (phi_of[k] >= 0.0) s += static_cast<double>(k) * phi_of[k];
    prof.rc = s / static_cast<double>(n);
    return prof;
}

std::optional<double> rich_club_coefficient(const Graph& g, std::size_t k) {
    std::vector<NodeId> rich;
    for (NodeId v = 0; v < g.node_count(); ++v)
        if (g.degree(v) > k) rich.push_back(v);
    if (rich.size() < 2) return std::nullopt;
    std::size_t links = 0;
    for (NodeId v : rich)
        for (NodeId w : g.neighbors(v))
            if (w > v && g.degree(w) > k) ++links;
    const double nr = static_cast<double>(rich.size());
    return 2.0 * static_cast<double>(links) / (nr * (nr - 1.0));
}

namespace {

// Pearson correlation of two binary indicators from their counts over
// `pairs` observations.
double binary_correlation(double pairs, double a, double b, double ab) {
    const double var_a = a * (pairs - a);
    const double var_b = b * (pairs - b);
    if (!(var_a > 0.0) || !(var_b > 0.0))
        throw UndefinedCorrelationError("core-periphery coefficient undefined: constant indicator");
    return (pairs * ab - a * b) / std::sqrt(var_a * var_b);
}

double choose2(double x) { return x * (x - 1.0) / 2.0; }

} // namespace

double core_periphery_coefficient(const Graph& g, std::span<const bool> in_core) {
    const std::size_t n = g.node_count();
    if (in_core.size() != n) throw ConfigError("core membership has wrong length");
    const double core = static_cast<double>(std::count(in_core.begin(), in_core.end(), true));
    const double pairs = choose2(static_cast<double>(n));
    const double pattern = pairs - choose2(static_cast<double>(n) - core);
    double both = 0.0;
    for (auto e : g.edges())
        if (in_core[e.u] || in_core[e.v]) both += 1.0;
    return binary_correlation(pairs, static_cast<double>(g.edge_count()), pattern, both);
}

CorePeripheryFit fit_core_periphery(const Graph& g) {
    const std::size_t n = g.node_count();
    if (n < 2) throw UndefinedCorrelationError("core-periphery coefficient needs at least two nodes");
    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return g.degree(a) > g.degree(b); });

    const double pairs = choose2(static_cast<double>(n));
    const double edges = static_cast<double>(g.edge_count());
    std::vector<bool> in_core(n, false);
    double covered = 0.0; // edges with at least one endpoint in the core
    std::optional<double> best;
    std::size_t best_t = 0;
    for (std::size_t t = 1; t < n; ++t) {
        NodeId v = order[t - 1];
        for (NodeId w : g.neighbors(v))
            if (!in_core[w]) covered += 1.0;
        in_core[v] = true;
        const double pattern = pairs - choose2(static_cast<double>(n - t));
        const double var_a = edges * (pairs - edges);
        const double var_b = pattern * (pairs - pattern);
        if (!(var_a > 0.0) || !(var_b > 0.0)) continue;
        const double r = (pairs * covered - edges * pattern) / std::sqrt(var_a * var_b);
        if (!best || r > *best + 1e-15) {
            best = r;
            best_t = t;
        }
    }
    if (!best) throw UndefinedCorrelationError("core-periphery coefficient undefined: constant indicator");
    CorePeripheryFit fit;
    fit.coefficient = *best;
    fit.in_core.assign(n, false);
    for (std::size_t t = 0; t < best_t; ++t) fit.in_core[order[t]] = true;
    return fit;
}

double core_periphery_coefficient(const Graph& g) { return fit_core_periphery(g).coefficient; }

void write_cores_csv(std::ostream& out, const Graph& g, const CorePartition& degree_cores,
                     const CorePartition& closeness_cores) {
    out << "node,core_degree,core_closeness\n";
    for (NodeId v = 0; v < g.node_count(); ++v) {
        CsvRow row;
        row << g.label(v) << degree_cores.core_index[v] << closeness_cores.core_index[v];
        out << row.str() << '\n';
    }
}

void write_rich_club_csv(std::ostream& out, const RichClubProfile& profile) {
    out << "k,phi_k\n";
    for (auto& [k, phi] : profile.phi) {
        CsvRow row;
        row << k << phi;
        out << row.str() << '\n';
    }
}

} // namespace netrewire
