#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "netrewire/csv.hpp"
#include "netrewire/edge_list.hpp"
#include "netrewire/error.hpp"
#include "netrewire/experiment.hpp"
#include "netrewire/metrics.hpp"
#include "netrewire/plot.hpp"
#include "support.hpp"

using namespace netrewire;
using namespace testing;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / ("netrewire_test_" + name);
    fs::remove_all(dir);
    return dir;
}

ExperimentConfig small_config(const fs::path& out) {
    ExperimentConfig cfg;
    cfg.network.ba = {60, 4, 2};
    cfg.rf_grid = {0.05, 0.1};
    cfg.beta_grid = {0.3, 0.7};
    cfg.lambda_grid = {0.5, 4.0};
    cfg.realizations = 2;
    cfg.master_seed = 17;
    cfg.output_dir = out.string();
    cfg.threads = 2;
    return cfg;
}

} // namespace

TEST_CASE("network measures") {
    SUBCASE("triangle") {
        auto m = compute_metrics(complete(3), 0.5);
        CHECK(m.avg_clustering == doctest::Approx(1.0));
        CHECK(m.apl == doctest::Approx(1.0));
        CHECK(std::isnan(m.r_deg)); // regular
    }
    SUBCASE("star with four leaves") {
        auto m = compute_metrics(star(4), 0.5);
        CHECK(m.avg_clustering == 0.0);
        CHECK(m.apl == doctest::Approx(8.0 / 5.0));
        CHECK(m.anc == doctest::Approx(1.0));
        CHECK(m.g_max == doctest::Approx(1.0));
        CHECK(m.r_deg == doctest::Approx(-1.0));
        CHECK(m.nodes == 5);
        CHECK(m.edges == 4);
    }
    SUBCASE("clustering by hand") {
        // Triangle 0-1-2 plus pendant 3 on node 0: C = 1/3, 1, 1, 0.
        auto g = from_edges(4, {{0, 1}, {1, 2}, {0, 2}, {0, 3}});
        CHECK(average_clustering(g) == doctest::Approx((1.0 / 3.0 + 2.0) / 4.0));
    }
    SUBCASE("invariants on BA graphs") {
        for (std::uint64_t s = 1; s <= 3; ++s) {
            auto m = compute_metrics(generate_ba({200, 5, 2}, s), 0.5);
            CHECK(m.apl >= 1.0);
            CHECK(m.anb >= 0.0);
            CHECK(m.anb <= 1.0);
            for (double x : {m.g_max, m.lambda_c, m.r_deg, m.avg_clustering, m.anc, m.rc, m.cp, m.u_max})
                CHECK(std::isfinite(x));
        }
    }
    SUBCASE("disconnected") {
        CHECK_THROWS_AS(compute_metrics(from_edges(4, {{0, 1}, {2, 3}}), 0.5), DisconnectedGraphError);
    }
    SUBCASE("row layout") {
        MetricsRow m;
        const auto header = MetricsRow::csv_header();
        const auto fields = m.csv_fields();
        CHECK(std::count(header.begin(), header.end(), ',') == std::count(fields.begin(), fields.end(), ','));
    }
}

TEST_CASE("config") {
    SUBCASE("round trip") {
        ExperimentConfig cfg = small_config("somewhere");
        cfg.strategies = {Strategy::Ckdbc, Strategy::Dpa};
        cfg.master_seed = 0xfedcba9876543210ULL;
        cfg.simulate = true;
        auto back = config_from_json(config_to_json(cfg));
        CHECK(config_to_json(back) == config_to_json(cfg));
        CHECK(config_hash(back) == config_hash(cfg));
        CHECK(back.master_seed == cfg.master_seed);

        ExperimentConfig ds;
        ds.network.kind = NetworkSource::Kind::Dataset;
        ds.network.dataset = "x.edges";
        ds.network.layer = "work";
        auto ds_back = config_from_json(config_to_json(ds));
        CHECK(config_to_json(ds_back) == config_to_json(ds));
    }
    SUBCASE("hash ignores output location and threads, not content") {
        ExperimentConfig a = small_config("a"), b = small_config("b");
        b.threads = 7;
        CHECK(config_hash(a) == config_hash(b));
        b.rf_grid = {0.2};
        CHECK(config_hash(a) != config_hash(b));
    }
    SUBCASE("missing keys take defaults") {
        auto cfg = config_from_json(R"({"realizations": 3})");
        CHECK(cfg.realizations == 3);
        CHECK(cfg.rf_grid == ExperimentConfig{}.rf_grid);
    }
    SUBCASE("bad input") {
        CHECK_THROWS_AS(config_from_json("{"), ConfigError);
        CHECK_THROWS_AS(config_from_json(R"({"bogus": 1})"), ConfigError);
        CHECK_THROWS_AS(config_from_json(R"({"strategies": ["sideways"]})"), ConfigError);
        CHECK_THROWS_AS(config_from_json(R"({"network": {"type": "lattice"}})"), ConfigError);
        CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
        ExperimentConfig c;
        c.rf_grid = {};
        CHECK_THROWS_AS(c.validate(), ConfigError);
        c = {};
        c.realizations = 0;
        CHECK_THROWS_AS(c.validate(), ConfigError);
        c = {};
        c.rf_grid = {1.2};
        CHECK_THROWS_AS(c.validate(), ConfigError);
    }
}

TEST_CASE("single cell") {
    ExperimentConfig cfg = small_config("unused");
    auto base = base_network(cfg, 0);
    CHECK(base.node_count() == 60);
    CHECK(base == base_network(cfg, 0));
    CHECK_FALSE(base == base_network(cfg, 1));

    auto cell = run_cell(cfg, base, {0, Strategy::Ckdbc, 0.1, 5});
    CHECK(cell.ok);
    CHECK(cell.lambda_c.size() == 2);
    CHECK(cell.load_analytic.size() == 2);
    CHECK(cell.load_analytic[0].size() == 2);
    CHECK(std::isnan(cell.load_sim[0][0]));
    CHECK(cell.report.accepted > 0);

    // A failing cell reports instead of throwing.
    auto broken = run_cell(cfg, from_edges(4, {{0, 1}, {2, 3}}), {0, Strategy::Dpa, 0.5, 1});
    CHECK_FALSE(broken.ok);
    CHECK_FALSE(broken.error.empty());
}

TEST_CASE("zero rewiring reproduces the original row") {
    auto out = scratch("zero");
    auto cfg = small_config(out);
    cfg.rf_grid = {0.0};
    auto res = run_experiment(cfg);
    CHECK(res.failures == 0);
    std::map<std::size_t, std::string> original;
    for (auto& c : res.cells)
        if (c.key.strategy == Strategy::None) original[c.key.realization] = c.metrics.csv_fields();
    for (auto& c : res.cells) CHECK(c.metrics.csv_fields() == original[c.key.realization]);
    fs::remove_all(out);
}

TEST_CASE("sweep outputs") {
    auto out = scratch("sweep");
    auto cfg = small_config(out);
    auto res = run_experiment(cfg);
    CHECK(res.failures == 0);
    CHECK(res.cells.size() == 2 * (1 + 4 * 2));

    SUBCASE("byte-identical rerun, independent of thread count") {
        auto again_dir = scratch("sweep_again");
        auto cfg2 = cfg;
        cfg2.output_dir = again_dir.string();
        cfg2.threads = 1;
        run_experiment(cfg2);
        for (auto& f : res.files) CHECK(slurp(f) == slurp(again_dir / f.filename()));
        fs::remove_all(again_dir);
    }
    SUBCASE("summary is reproducible from the per-seed rows") {
        auto metrics = read_csv(out / "metrics.csv");
        auto summary = read_csv(out / "summary.csv");
        const auto ms = *metrics.column("strategy"), mr = *metrics.column("r_f"), mg = *metrics.column("g_max");
        const auto ss = *summary.column("strategy"), sr = *summary.column("r_f");
        const auto mean = *summary.column("g_max_mean"), sd = *summary.column("g_max_std");
        CHECK(summary.rows.size() == 1 + 4 * 2);
        for (auto& row : summary.rows) {
            std::vector<double> xs;
            for (auto& m : metrics.rows)
                if (m[ms] == row[ss] && std::stod(m[mr]) == std::stod(row[sr])) xs.push_back(std::stod(m[mg]));
            REQUIRE(xs.size() == 2);
            const double mu = (xs[0] + xs[1]) / 2.0;
            const double s = std::sqrt((xs[0] - mu) * (xs[0] - mu) + (xs[1] - mu) * (xs[1] - mu));
            CHECK(std::stod(row[mean]) == doctest::Approx(mu).epsilon(1e-12));
            CHECK(std::stod(row[sd]) == doctest::Approx(s).epsilon(1e-9));
        }
    }
    SUBCASE("comparison table has seven measures by five columns") {
        auto t = read_csv(out / "table.csv");
        CHECK(t.header == std::vector<std::string>{"measure", "r_f", "original", "dpa", "dec", "dkbc", "ckdbc"});
        std::set<std::string> measures;
        for (auto& r : t.rows) measures.insert(r[0]);
        CHECK(measures == std::set<std::string>{"g_max", "lambda_c", "r_deg", "avg_clustering", "anc", "apl", "anb"});
        CHECK(t.rows.size() == 7 * 2);
    }
    SUBCASE("traffic rows") {
        auto t = read_csv(out / "traffic.csv");
        CHECK(t.rows.size() == res.cells.size() * 2 * 2);
        auto m = slurp(out / "manifest.json");
        CHECK(m.find("\"config_hash\"") != std::string::npos);
        CHECK(m.find("\"version\"") != std::string::npos);
    }
    SUBCASE("plots") {
        auto figs = out / "plots";
        auto p1 = emit_plots(out, figs);
        CHECK(p1.warnings.empty());
        CHECK(p1.written.size() == 4 + 2 + 2);
        std::map<fs::path, std::string> first;
        for (auto& f : p1.written) {
            first[f] = slurp(f);
            CHECK(first[f].find("<svg") != std::string::npos);
            CHECK(first[f].find("fnv1a64=") != std::string::npos);
        }
        auto p2 = emit_plots(out, figs);
        for (auto& f : p2.written) CHECK(slurp(f) == first[f]);
    }
    fs::remove_all(out);
}

TEST_CASE("plots skip what is missing") {
    auto dir = scratch("plots_missing");
    fs::create_directories(dir);
    {
        std::ofstream(dir / "summary.csv") << "strategy,r_f,n,g_max_mean\noriginal,0,2,0.3\n";
    }
    auto res = emit_plots(dir, dir / "plots");
    CHECK(res.written.size() == 1); // rf_g_max.svg only
    CHECK(res.warnings.size() >= 5);
    bool lambda_warned = false;
    for (auto& w : res.warnings) lambda_warned |= w.find("lambda_c_mean") != std::string::npos;
    CHECK(lambda_warned);
    auto svg = slurp(res.written.at(0));
    CHECK(svg.find(">original</text>") != std::string::npos);
    CHECK(svg.find(">dpa</text>") == std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("failed cells do not stop the sweep") {
    auto out = scratch("fail");
    ExperimentConfig cfg = small_config(out);
    cfg.network.kind = NetworkSource::Kind::Dataset;
    cfg.network.dataset = "/nonexistent/network.edges";
    cfg.realizations = 1;
    auto res = run_experiment(cfg);
    CHECK(res.failures == res.cells.size());
    auto errors = read_csv(out / "errors.csv");
    CHECK(errors.rows.size() == res.cells.size());
    fs::remove_all(out);
}

TEST_CASE("dataset sweep") {
    auto out = scratch("karate");
    ExperimentConfig cfg = small_config(out);
    cfg.network.kind = NetworkSource::Kind::Dataset;
    cfg.network.dataset = NETREWIRE_DATA_DIR "/karate.edges";
    cfg.realizations = 1;
    cfg.strategies = {Strategy::Ckdbc};
    auto res = run_experiment(cfg);
    CHECK(res.failures == 0);
    CHECK(res.cells.front().metrics.g_max == doctest::Approx(0.4376).epsilon(0.001));
    fs::remove_all(out);
}
