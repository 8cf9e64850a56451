#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>
#include <sstream>

#include "netrewire/degree_distribution.hpp"
#include "netrewire/edge_list.hpp"
#include "netrewire/error.hpp"
#include "netrewire/generators.hpp"
#include "netrewire/graph.hpp"
#include "support.hpp"

using namespace netrewire;
using namespace testing;

namespace {

void check_simple(const Graph& g) {
    std::size_t sum = 0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        sum += g.degree(v);
        for (NodeId w : g.neighbors(v)) {
            CHECK(w != v);
            CHECK(g.has_edge(w, v));
        }
        auto nb = g.neighbors(v);
        CHECK(std::adjacent_find(nb.begin(), nb.end()) == nb.end());
    }
    CHECK(sum == 2 * g.edge_count());
}

LoadResult parse(const std::string& text, LoadOptions opt = {}) {
    std::istringstream in(text);
    return read_edge_list(in, opt);
}

} // namespace

TEST_CASE("graph edits keep adjacency symmetric and sorted") {
    Graph g(4);
    g.add_edge(2, 0);
    g.add_edge(0, 3);
    g.add_edge(1, 0);
    CHECK(g.edge_count() == 3);
    CHECK(g.degree(0) == 3);
    auto nb = g.neighbors(0);
    CHECK(std::vector<NodeId>(nb.begin(), nb.end()) == std::vector<NodeId>{1, 2, 3});
    CHECK_THROWS_AS(g.add_edge(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(0, 2), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(0, 9), std::invalid_argument);
    CHECK_THROWS_AS(g.remove_edge(1, 2), std::invalid_argument);
    g.remove_edge(0, 2);
    CHECK_FALSE(g.has_edge(2, 0));
    CHECK(g.edge_count() == 2);
    check_simple(g);
}

TEST_CASE("copies are independent") {
    Graph g = cycle(5);
    Graph h = g;
    h.remove_edge(0, 1);
    CHECK(g.has_edge(0, 1));
    CHECK(g.edge_count() == 5);
    CHECK(h.edge_count() == 4);
}

TEST_CASE("connectivity by traversal") {
    auto tri2 = from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
    CHECK_FALSE(is_connected(tri2));
    CHECK(connected_components(tri2).size() == 2);
    CHECK(is_connected(path(5)));
    CHECK(reachable(path(5), 0, 4));
    CHECK_FALSE(reachable(tri2, 0, 4));
}

TEST_CASE("induced subgraph keeps labels and internal edges") {
    Graph g = complete(5);
    std::vector<NodeId> keep{1, 3, 4};
    auto h = g.induced_subgraph(keep);
    CHECK(h.node_count() == 3);
    CHECK(h.edge_count() == 3);
    CHECK(h.label(0) == "1");
    CHECK(h.label(2) == "4");
}

TEST_CASE("BA generator") {
    SUBCASE("triangle seed with one link per arrival") {
        auto g = generate_ba({6, 3, 1}, 42);
        CHECK(g.node_count() == 6);
        CHECK(g.edge_count() == 6);
        CHECK(is_connected(g));
        check_simple(g);
    }
    SUBCASE("mean degree near 2m") {
        auto g = generate_ba({2000, 5, 2}, 3);
        CHECK(g.mean_degree() >= 3.8);
        CHECK(g.mean_degree() <= 4.2);
        CHECK(g.edge_count() == 10 + (2000 - 5) * 2);
        CHECK(is_connected(g));
        check_simple(g);
    }
    SUBCASE("same seed, same graph; different seed, different graph") {
        CHECK(generate_ba({300, 5, 2}, 9) == generate_ba({300, 5, 2}, 9));
        CHECK_FALSE(generate_ba({300, 5, 2}, 9) == generate_ba({300, 5, 2}, 10));
    }
    SUBCASE("invalid sizes") {
        CHECK_THROWS_AS(generate_ba({5, 5, 2}, 1), ConfigError);
        CHECK_THROWS_AS(generate_ba({10, 2, 3}, 1), ConfigError);
        CHECK_THROWS_AS(generate_ba({10, 3, 0}, 1), ConfigError);
    }
    SUBCASE("power-law tail over ten seeds") {
        std::vector<std::size_t> pooled;
        for (std::uint64_t s = 1; s <= 10; ++s) {
            auto d = generate_ba({500, 5, 2}, s).degrees();
            pooled.insert(pooled.end(), d.begin(), d.end());
        }
        auto fit = fit_degree_tail(pooled);
        CHECK(fit.slope <= -2.2);
        CHECK(fit.slope >= -3.5);
    }
}

TEST_CASE("tail fit recovers an exact power law") {
    // Degree counts proportional to k^-3 for k = 4..400.
    std::vector<std::size_t> degrees;
    for (std::size_t k = 4; k <= 400; ++k) {
        auto count = static_cast<std::size_t>(std::llround(1e8 / std::pow(static_cast<double>(k), 3.0)));
        degrees.insert(degrees.end(), count, k);
    }
    auto fit = fit_degree_tail(degrees);
    CHECK(fit.bins >= 5);
    CHECK(fit.slope == doctest::Approx(-3.0).epsilon(0.05));
}

TEST_CASE("degree distribution") {
    SUBCASE("4-cycle") {
        auto d = degree_distribution(cycle(4));
        CHECK(d.p[2] == doctest::Approx(1.0));
        CHECK(d.q[1] == doctest::Approx(1.0));
        CHECK(d.mean_degree == doctest::Approx(2.0));
        CHECK(d.variance_excess == doctest::Approx(0.0));
    }
    SUBCASE("star with four leaves") {
        auto d = degree_distribution(star(4));
        CHECK(d.p[1] == doctest::Approx(0.8));
        CHECK(d.p[4] == doctest::Approx(0.2));
        CHECK(d.mean_degree == doctest::Approx(1.6));
    }
    SUBCASE("BA excess degrees match direct edge-end counting") {
        auto g = generate_ba({500, 5, 2}, 11);
        auto d = degree_distribution(g);
        double sp = std::accumulate(d.p.begin(), d.p.end(), 0.0);
        double sq = std::accumulate(d.q.begin(), d.q.end(), 0.0);
        CHECK(std::abs(sp - 1.0) < 1e-12);
        CHECK(std::abs(sq - 1.0) < 1e-12);
        std::vector<double> ends(d.q.size() + 1, 0.0);
        for (auto e : g.edges()) {
            ends[g.degree(e.u) - 1] += 1.0;
            ends[g.degree(e.v) - 1] += 1.0;
        }
        for (std::size_t k = 0; k < d.q.size(); ++k)
            CHECK(std::abs(d.q[k] - ends[k] / (2.0 * static_cast<double>(g.edge_count()))) < 1e-12);
        CHECK(d.variance_excess >= 0.0);
    }
    SUBCASE("empty graph") { CHECK_THROWS_AS(degree_distribution(Graph(3)), DataError); }
}

TEST_CASE("edge list loading") {
    SUBCASE("undirected duplicates collapse") {
        auto r = parse("a b\nb a\na b\n");
        CHECK(r.graph.node_count() == 2);
        CHECK(r.graph.edge_count() == 1);
        CHECK(r.report.duplicates_dropped == 2);
    }
    SUBCASE("comments, self-loops and small components") {
        auto r = parse("# header\nx x\n1 2\n2 3\n3 1\n7 8\n");
        CHECK(r.report.comment_lines == 1);
        CHECK(r.report.self_loops_dropped == 1);
        CHECK(r.report.components == 3); // {1,2,3}, {7,8} and the isolated x
        CHECK(r.graph.node_count() == 3);
        CHECK(r.graph.edge_count() == 3);
        LoadOptions keep_all;
        keep_all.largest_component_only = false;
        CHECK(parse("1 2\n2 3\n7 8\n", keep_all).graph.node_count() == 5);
    }
    SUBCASE("malformed lines and empty files") {
        CHECK_THROWS_AS(parse("1 2 3 4\n"), DataError);
        CHECK_THROWS_AS(parse("1\n"), DataError);
        CHECK_THROWS_AS(parse("# nothing\n"), DataError);
        CHECK_THROWS_AS(parse("L1 1 2\n"), DataError); // layered line without aggregation
        CHECK_THROWS_AS(load_edge_list("/nonexistent/file.edges"), DataError);
    }
    SUBCASE("layer selection and aggregation") {
        const std::string text = "A 1 2\nB 1 2\nB 2 3\nA 3 4\n";
        LoadOptions agg;
        agg.aggregate_layers = true;
        auto r = parse(text, agg);
        CHECK(r.graph.edge_count() == 3);
        CHECK(r.report.layers == 2);
        CHECK(r.report.distinct_layered_edges == 4);
        LoadOptions only_b;
        only_b.layer = "B";
        CHECK(parse(text, only_b).graph.edge_count() == 2);
    }
    SUBCASE("canonical output round trip") {
        auto g = generate_ba({80, 4, 2}, 5);
        std::ostringstream out;
        write_edge_list(out, g);
        auto back = parse(out.str()).graph;
        CHECK(back.edge_count() == g.edge_count());
        auto d1 = g.degrees(), d2 = back.degrees();
        std::sort(d1.begin(), d1.end());
        std::sort(d2.begin(), d2.end());
        CHECK(d1 == d2);
        std::ostringstream again;
        write_edge_list(again, back);
        CHECK(again.str() == out.str());
    }
}

TEST_CASE("bundled datasets") {
    auto karate = load_edge_list(NETREWIRE_DATA_DIR "/karate.edges");
    CHECK(karate.graph.node_count() == 34);
    CHECK(karate.graph.edge_count() >= 64);
    CHECK(karate.graph.edge_count() == 78);

    LoadOptions agg;
    agg.aggregate_layers = true;
    auto aucs = load_edge_list(NETREWIRE_DATA_DIR "/aucs.edges", agg);
    CHECK(aucs.report.layers == 5);
    CHECK(aucs.report.nodes_in_file == 61);
    // 620 counts (layer, edge) pairs; collapsing the layers leaves 353 links.
    CHECK(aucs.report.distinct_layered_edges == 620);
    CHECK(aucs.graph.edge_count() == 353);
}
