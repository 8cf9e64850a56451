#include "netrewire/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "netrewire/csv.hpp"
#include "netrewire/error.hpp"

namespace netrewire {

ShortestPathStats shortest_path_stats(const Graph& g) {
    const std::size_t n = g.node_count();
    ShortestPathStats out;
    out.bc_raw.assign(n, 0.0);
    out.distance_sum.assign(n, 0.0);
    if (n == 0) return out;

    std::vector<std::int32_t> dist(n);
    std::vector<double> sigma(n), delta(n);
    std::vector<NodeId> order; // BFS order, doubles as the Brandes stack
    order.reserve(n);
    double total_distance = 0.0;

    for (NodeId s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        order.clear();
        dist[s] = 0;
        sigma[s] = 1.0;
        order.push_back(s);
        for (std::size_t head = 0; head < order.size(); ++head) {
            NodeId u = order[head];
            for (NodeId w : g.neighbors(u)) {
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    order.push_back(w);
                }
                if (dist[w] == dist[u] + 1) sigma[w] += sigma[u];
            }
        }
        if (order.size() != n) throw DisconnectedGraphError();

        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            NodeId w = *it;
            const double coeff = (1.0 + delta[w]) / sigma[w];
            const auto parent = dist[w] - 1;
            for (NodeId u : g.neighbors(w))
                if (dist[u] == parent) delta[u] += sigma[u] * coeff;
            if (w != s) out.bc_raw[w] += delta[w];
            out.distance_sum[s] += static_cast<double>(dist[w]);
        }
        total_distance += out.distance_sum[s];
    }
    // Each unordered pair was visited from both ends.
    for (auto& b : out.bc_raw) b *= 0.5;
    if (n > 1) out.average_path_length = total_distance / (static_cast<double>(n) * static_cast<double>(n - 1));
    return out;
}

double betweenness_normalizer(std::size_t n) {
    return n < 3 ? 0.0 : static_cast<double>(n - 1) * static_cast<double>(n - 2) / 2.0;
}

Betweenness betweenness(const Graph& g) {
    auto stats = shortest_path_stats(g);
    Betweenness b;
    b.raw = std::move(stats.bc_raw);
    b.normalized.resize(b.raw.size());
    const double norm = betweenness_normalizer(g.node_count());
    for (std::size_t i = 0; i < b.raw.size(); ++i) b.normalized[i] = norm > 0.0 ? b.raw[i] / norm : 0.0;
    return b;
}

std::vector<double> closeness_from_distance_sums(std::span<const double> distance_sum) {
    std::vector<double> cc(distance_sum.size(), 0.0);
    const double n1 = static_cast<double>(distance_sum.size()) - 1.0;
    for (std::size_t i = 0; i < cc.size(); ++i)
        if (distance_sum[i] > 0.0) cc[i] = n1 / distance_sum[i];
    return cc;
}

std::vector<double> closeness(const Graph& g) {
    return closeness_from_distance_sums(shortest_path_stats(g).distance_sum);
}

double average_path_length(const Graph& g) { return shortest_path_stats(g).average_path_length; }

namespace {

void multiply_adjacency(const Graph& g, std::span<const double> x, std::span<double> out) {
    for (NodeId u = 0; u < g.node_count(); ++u) {
        double s = 0.0;
        for (NodeId w : g.neighbors(u)) s += x[w];
        out[u] = s;
    }
}

} // namespace

EigenvectorResult eigenvector_centrality(const Graph& g, const EigenvectorOptions& options) {
    const std::size_t n = g.node_count();
    EigenvectorResult r;
    if (n == 0) return r;
    if (!is_connected(g)) throw DisconnectedGraphError();

    std::vector<double> x(n, 1.0);
    if (!options.start.empty()) {
        if (options.start.size() != n) throw ConfigError("eigenvector start vector has wrong length");
        double m = *std::max_element(options.start.begin(), options.start.end());
        if (!(m > 0.0)) throw ConfigError("eigenvector start vector must have a positive entry");
        for (std::size_t i = 0; i < n; ++i) x[i] = std::max(0.0, options.start[i]) / m;
    }
    std::vector<double> ax(n);
    multiply_adjacency(g, x, ax);

    for (std::size_t it = 0;; ++it) {
        double xax = 0.0, xx = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            xax += x[i] * ax[i];
            xx += x[i] * x[i];
        }
        const double kappa = xax / xx;
        double res = 0.0;
        for (std::size_t i = 0; i < n; ++i) res = std::max(res, std::abs(ax[i] - kappa * x[i]));
        r.eigenvalue = kappa;
        r.residual = res;
        r.iterations = it;
        if (res <= options.tolerance) break;
        if (it >= options.max_iterations)
            throw ConvergenceError("eigenvector centrality did not converge in " +
                                       std::to_string(options.max_iterations) + " iterations",
                                   res);
        double m = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] += ax[i];
            m = std::max(m, x[i]);
        }
        for (auto& v : x) v /= m;
        multiply_adjacency(g, x, ax);
    }
    r.values = std::move(x);
    return r;
}

EdgeCorrelation edge_correlation(const Graph& g) {
    EdgeCorrelation c;
    const double ends = 2.0 * static_cast<double>(g.edge_count());
    if (ends == 0.0) return c;
    double s = 0.0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        const double k = static_cast<double>(g.degree(v));
        s += k * (k - 1.0);
    }
    c.mu_q = s / ends;
    double ss = 0.0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        const double k = static_cast<double>(g.degree(v));
        ss += k * (k - 1.0 - c.mu_q) * (k - 1.0 - c.mu_q);
    }
    c.sigma_q2 = ss / ends;
    return c;
}

double assortativity(const Graph& g) {
    const auto c = edge_correlation(g);
    if (!(c.sigma_q2 > 0.0)) throw UndefinedCorrelationError("assortativity undefined: excess degree variance is zero");
    double cov = 0.0;
    for (auto e : g.edges()) {
        const double a = static_cast<double>(g.degree(e.u)) - 1.0 - c.mu_q;
        const double b = static_cast<double>(g.degree(e.v)) - 1.0 - c.mu_q;
        cov += 2.0 * a * b;
    }
    cov /= 2.0 * static_cast<double>(g.edge_count());
    return std::clamp(cov / c.sigma_q2, -1.0, 1.0);
}

double pair_correlation_raw(const EdgeCorrelation& c, std::size_t k_i, std::size_t k_j) {
    if (!(c.sigma_q2 > 0.0)) throw UndefinedCorrelationError("pair correlation undefined: excess degree variance is zero");
    const double a = static_cast<double>(k_i) - 1.0 - c.mu_q;
    const double b = static_cast<double>(k_j) - 1.0 - c.mu_q;
    return a * b / c.sigma_q2;
}

double pair_correlation(const EdgeCorrelation& c, std::size_t k_i, std::size_t k_j) {
    return std::clamp(pair_correlation_raw(c, k_i, k_j), -1.0, 1.0);
}

double pair_correlation(const Graph& g, NodeId i, NodeId j) {
    return pair_correlation(edge_correlation(g), g.degree(i), g.degree(j));
}

double scale_correlation(double x) {
    if (!(x >= -1.0 && x <= 1.0)) throw ConfigError("correlation outside [-1, 1]: " + format_double(x));
    return x + 1.0;
}

CentralityBundle compute_centralities(const Graph& g, const EigenvectorOptions& ec_options) {
    CentralityBundle c;
    auto sp = shortest_path_stats(g);
    const double norm = betweenness_normalizer(g.node_count());
    c.bc.resize(sp.bc_raw.size());
    for (std::size_t i = 0; i < c.bc.size(); ++i) c.bc[i] = norm > 0.0 ? sp.bc_raw[i] / norm : 0.0;
    c.bc_raw = std::move(sp.bc_raw);
    c.cc = closeness_from_distance_sums(sp.distance_sum);
    c.average_path_length = sp.average_path_length;
    auto ec = eigenvector_centrality(g, ec_options);
    c.ec = std::move(ec.values);
    c.eigenvalue = ec.eigenvalue;
    c.correlation = edge_correlation(g);
    if (c.correlation.sigma_q2 > 0.0) c.r_deg = assortativity(g);
    return c;
}

void write_centrality_csv(std::ostream& out, const Graph& g, const CentralityBundle& c) {
    out << "node,degree,bc_raw,bc_norm,cc,ec\n";
    for (NodeId v = 0; v < g.node_count(); ++v) {
        CsvRow row;
        row << g.label(v) << g.degree(v) << c.bc_raw[v] << c.bc[v] << c.cc[v] << c.ec[v];
        out << row.str() << '\n';
    }
}

} // namespace netrewire
