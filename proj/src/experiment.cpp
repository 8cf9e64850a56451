#include "netrewire/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "netrewire/csv.hpp"
#include "netrewire/edge_list.hpp"
#include "netrewire/error.hpp"
#include "netrewire/packet_sim.hpp"
#include "netrewire/random.hpp"
#include "netrewire/traffic.hpp"

namespace netrewire {

using json = nlohmann::json;

std::string strategy_label(Strategy s) {
    return s == Strategy::None ? "original" : std::string(strategy_name(s));
}

void ExperimentConfig::validate() const {
    if (network.kind == NetworkSource::Kind::Ba)
        network.ba.validate();
    else if (network.dataset.empty())
        throw ConfigError("dataset network source needs a path");
    if (rf_grid.empty() || beta_grid.empty() || lambda_grid.empty()) throw ConfigError("grids must be non-empty");
    for (double rf : rf_grid)
        if (!(rf >= 0.0 && rf <= 1.0)) throw ConfigError("r_f values must lie in [0, 1]");
    for (double b : beta_grid)
        if (!(b > 0.0)) throw ConfigError("beta values must be positive");
    for (double l : lambda_grid)
        if (!(l >= 0.0)) throw ConfigError("lambda values must be non-negative");
    if (realizations < 1) throw ConfigError("realizations must be at least 1");
    if (recompute_every < 1) throw ConfigError("recompute_every must be at least 1");
    if (max_attempts < 1) throw ConfigError("max_attempts must be at least 1");
    if (!(metrics_beta > 0.0)) throw ConfigError("metrics_beta must be positive");
    if (analytic_horizon < 1 || sim_horizon < 1) throw ConfigError("horizons must be at least 1");
}

namespace {

json config_json(const ExperimentConfig& cfg, bool include_runtime) {
    json net;
    if (cfg.network.kind == NetworkSource::Kind::Ba) {
        net = {{"type", "ba"}, {"N", cfg.network.ba.nodes}, {"m0", cfg.network.ba.seed_nodes}, {"m", cfg.network.ba.links}};
    } else {
        net = {{"type", "dataset"}, {"path", cfg.network.dataset}, {"aggregate_layers", cfg.network.aggregate_layers}};
        net["layer"] = cfg.network.layer ? json(*cfg.network.layer) : json(nullptr);
    }
    json strategies = json::array();
    for (auto s : cfg.strategies) strategies.push_back(std::string(strategy_name(s)));
    json j = {{"network", net},
              {"strategies", strategies},
              {"rf_grid", cfg.rf_grid},
              {"beta_grid", cfg.beta_grid},
              {"lambda_grid", cfg.lambda_grid},
              {"realizations", cfg.realizations},
              {"master_seed", cfg.master_seed},
              {"recompute_every", cfg.recompute_every},
              {"max_attempts", cfg.max_attempts},
              {"metrics_beta", cfg.metrics_beta},
              {"analytic_horizon", cfg.analytic_horizon},
              {"simulate", cfg.simulate},
              {"sim_horizon", cfg.sim_horizon}};
    if (include_runtime) {
        j["output_dir"] = cfg.output_dir;
        j["threads"] = cfg.threads;
    }
    return j;
}

std::string format_hash(std::uint64_t h) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) out[i] = digits[h & 0xF];
    return out;
}

template <typename T>
void read_opt(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

} // namespace

std::string config_to_json(const ExperimentConfig& cfg) { return config_json(cfg, true).dump(2) + "\n"; }

ExperimentConfig config_from_json(const std::string& text) {
    static const std::vector<std::string> known{"network",      "strategies",   "rf_grid",         "beta_grid",
                                                "lambda_grid",  "realizations", "master_seed",     "output_dir",
                                                "recompute_every", "max_attempts", "metrics_beta", "analytic_horizon",
                                                "simulate",     "sim_horizon",  "threads"};
    ExperimentConfig cfg;
    try {
        json j = json::parse(text);
        if (!j.is_object()) throw ConfigError("config must be a JSON object");
        for (auto& [key, _] : j.items())
            if (std::find(known.begin(), known.end(), key) == known.end())
                throw ConfigError("unknown config key '" + key + "'");
        if (j.contains("network")) {
            const json& net = j.at("network");
            const auto type = net.value("type", std::string("ba"));
            if (type == "ba") {
                cfg.network.kind = NetworkSource::Kind::Ba;
                read_opt(net, "N", cfg.network.ba.nodes);
                read_opt(net, "m0", cfg.network.ba.seed_nodes);
                read_opt(net, "m", cfg.network.ba.links);
            } else if (type == "dataset") {
                cfg.network.kind = NetworkSource::Kind::Dataset;
                read_opt(net, "path", cfg.network.dataset);
                read_opt(net, "aggregate_layers", cfg.network.aggregate_layers);
                if (net.contains("layer") && !net.at("layer").is_null())
                    cfg.network.layer = net.at("layer").get<std::string>();
            } else {
                throw ConfigError("unknown network type '" + type + "'");
            }
        }
        if (j.contains("strategies")) {
            cfg.strategies.clear();
            for (auto& s : j.at("strategies")) {
                auto st = parse_strategy(s.get<std::string>());
                if (st != Strategy::None) cfg.strategies.push_back(st);
            }
        }
        read_opt(j, "rf_grid", cfg.rf_grid);
        read_opt(j, "beta_grid", cfg.beta_grid);
        read_opt(j, "lambda_grid", cfg.lambda_grid);
        read_opt(j, "realizations", cfg.realizations);
        read_opt(j, "master_seed", cfg.master_seed);
        read_opt(j, "output_dir", cfg.output_dir);
        read_opt(j, "recompute_every", cfg.recompute_every);
        read_opt(j, "max_attempts", cfg.max_attempts);
        read_opt(j, "metrics_beta", cfg.metrics_beta);
        read_opt(j, "analytic_horizon", cfg.analytic_horizon);
        read_opt(j, "simulate", cfg.simulate);
        read_opt(j, "sim_horizon", cfg.sim_horizon);
        read_opt(j, "threads", cfg.threads);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid config: ") + e.what());
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return config_from_json(ss.str());
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
    // FNV-1a over the canonical dump, excluding output location and threads.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : config_json(cfg, false).dump()) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

Graph base_network(const ExperimentConfig& cfg, std::size_t realization) {
    if (cfg.network.kind == NetworkSource::Kind::Ba)
        return generate_ba(cfg.network.ba, derive_seed(cfg.master_seed, {0, realization}));
    LoadOptions opt;
    opt.aggregate_layers = cfg.network.aggregate_layers;
    opt.layer = cfg.network.layer;
    return load_edge_list(cfg.network.dataset, opt).graph;
}

CellResult run_cell(const ExperimentConfig& cfg, const Graph& base, const CellKey& key) {
    CellResult r;
    r.key = key;
    try {
        Graph g;
        if (key.strategy == Strategy::None) {
            g = base;
            r.report.strategy = Strategy::None;
            r.report.seed = key.seed;
            r.report.edges_before = r.report.edges_after = g.edge_count();
        } else {
            RewireConfig rc;
            rc.strategy = key.strategy;
            rc.r_f = key.r_f;
            rc.seed = key.seed;
            rc.max_attempts = cfg.max_attempts;
            rc.recompute_every = cfg.recompute_every;
            auto res = rewire(base, rc);
            g = std::move(res.graph);
            r.report = res.report;
        }
        auto c = compute_centralities(g);
        r.metrics = compute_metrics(g, c, cfg.metrics_beta);
        try {
            r.utilization = node_utilization(g, c.bc).by_degree;
        } catch (const NumericError&) {
        }
        for (NodeId v = 0; v < g.node_count(); ++v) {
            if (g.degree(v) >= r.degree_histogram.size()) r.degree_histogram.resize(g.degree(v) + 1, 0);
            ++r.degree_histogram[g.degree(v)];
        }

        std::optional<RoutingTable> routes;
        if (cfg.simulate) routes.emplace(g);
        for (std::size_t b = 0; b < cfg.beta_grid.size(); ++b) {
            auto cap = allocate_capacity(c, cfg.beta_grid[b]);
            r.lambda_c.push_back(critical_rate(c.bc_raw, cap));
            auto& la = r.load_analytic.emplace_back();
            auto& ls = r.load_sim.emplace_back();
            for (std::size_t l = 0; l < cfg.lambda_grid.size(); ++l) {
                auto q = expected_inflow(c, cfg.lambda_grid[l]);
                la.push_back(analytic_load(cap, q, cfg.analytic_horizon).final_total());
                if (routes) {
                    SimOptions so;
                    so.lambda = cfg.lambda_grid[l];
                    so.horizon = cfg.sim_horizon;
                    so.seed = derive_seed(key.seed, {b, l});
                    so.record_trace = false;
                    ls.push_back(static_cast<double>(packet_simulate(*routes, cap, so).in_flight));
                } else {
                    ls.push_back(std::numeric_limits<double>::quiet_NaN());
                }
            }
        }
        r.ok = true;
    } catch (const std::exception& e) {
        r.ok = false;
        r.error = e.what();
    }
    return r;
}

namespace {

struct Measure {
    const char* name;
    double MetricsRow::*field;
};

constexpr Measure kMeasures[] = {
    {"g_max", &MetricsRow::g_max}, {"lambda_c", &MetricsRow::lambda_c}, {"r_deg", &MetricsRow::r_deg},
    {"avg_clustering", &MetricsRow::avg_clustering}, {"anc", &MetricsRow::anc}, {"apl", &MetricsRow::apl},
    {"anb", &MetricsRow::anb}, {"rc", &MetricsRow::rc}, {"cp", &MetricsRow::cp}, {"u_max", &MetricsRow::u_max},
};

// Measures compared side by side in table.csv.
constexpr const char* kTableMeasures[] = {"g_max", "lambda_c", "r_deg", "avg_clustering", "anc", "apl", "anb"};

struct Stats {
    double mean = std::numeric_limits<double>::quiet_NaN();
    double std = std::numeric_limits<double>::quiet_NaN();
    std::size_t n = 0;
};

Stats stats_of(const std::vector<double>& xs) {
    Stats s;
    double sum = 0.0;
    for (double x : xs)
        if (std::isfinite(x)) {
            sum += x;
            ++s.n;
        }
    if (s.n == 0) return s;
    s.mean = sum / static_cast<double>(s.n);
    double ss = 0.0;
    for (double x : xs)
        if (std::isfinite(x)) ss += (x - s.mean) * (x - s.mean);
    s.std = s.n > 1 ? std::sqrt(ss / static_cast<double>(s.n - 1)) : 0.0;
    return s;
}

std::string sanitize(std::string s) {
    for (auto& ch : s)
        if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
    return s;
}

void run_parallel(std::size_t count, std::size_t threads, const auto& work) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, std::max<std::size_t>(count, 1));
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) work(i);
        });
    for (auto& th : pool) th.join();
}

} // namespace

ExperimentOutcome run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    namespace fs = std::filesystem;
    const fs::path out_dir(cfg.output_dir);
    fs::create_directories(out_dir);

    // Column order of the sweep: original first, then strategies as configured.
    std::vector<Strategy> columns{Strategy::None};
    columns.insert(columns.end(), cfg.strategies.begin(), cfg.strategies.end());

    std::vector<CellKey> keys;
    for (std::size_t r = 0; r < cfg.realizations; ++r)
        for (std::size_t s = 0; s < columns.size(); ++s) {
            if (columns[s] == Strategy::None) {
                keys.push_back({r, Strategy::None, 0.0, derive_seed(cfg.master_seed, {1, r, 0, 0})});
                continue;
            }
            for (std::size_t f = 0; f < cfg.rf_grid.size(); ++f)
                keys.push_back({r, columns[s], cfg.rf_grid[f], derive_seed(cfg.master_seed, {1, r, s, f + 1})});
        }

    ExperimentOutcome outcome;
    std::vector<std::optional<Graph>> bases(cfg.realizations);
    std::vector<std::string> base_errors(cfg.realizations);
    run_parallel(cfg.realizations, cfg.threads, [&](std::size_t r) {
        try {
            bases[r] = base_network(cfg, r);
        } catch (const std::exception& e) {
            base_errors[r] = e.what();
        }
    });

    outcome.cells.resize(keys.size());
    run_parallel(keys.size(), cfg.threads, [&](std::size_t i) {
        const auto& key = keys[i];
        if (!bases[key.realization]) {
            outcome.cells[i].key = key;
            outcome.cells[i].error = "base network: " + base_errors[key.realization];
            return;
        }
        outcome.cells[i] = run_cell(cfg, *bases[key.realization], key);
    });

    auto write = [&](const std::string& name, const std::string& content) {
        auto path = out_dir / name;
        write_file_atomic(path, content);
        outcome.files.push_back(path);
    };

    // Per-seed rows.
    std::ostringstream metrics, rewires, traffic, errors;
    metrics << "realization,strategy,r_f,seed,status," << MetricsRow::csv_header() << '\n';
    rewires << "realization," << RewireReport::csv_header() << '\n';
    traffic << "realization,strategy,r_f,beta,lambda,lambda_c,L_analytic,L_sim\n";
    errors << "realization,strategy,r_f,message\n";
    for (auto& c : outcome.cells) {
        CsvRow m;
        m << c.key.realization << strategy_label(c.key.strategy) << c.key.r_f << std::to_string(c.key.seed)
          << (c.ok ? "ok" : "error");
        if (c.ok) {
            metrics << m.str() << ',' << c.metrics.csv_fields() << '\n';
        } else {
            MetricsRow blank;
            for (auto& ms : kMeasures) blank.*ms.field = std::numeric_limits<double>::quiet_NaN();
            metrics << m.str() << ',' << blank.csv_fields() << '\n';
            ++outcome.failures;
            CsvRow e;
            e << c.key.realization << strategy_label(c.key.strategy) << c.key.r_f << sanitize(c.error);
            errors << e.str() << '\n';
            continue;
        }
        rewires << c.key.realization << ',' << c.report.csv_row() << '\n';
        for (std::size_t b = 0; b < cfg.beta_grid.size(); ++b)
            for (std::size_t l = 0; l < cfg.lambda_grid.size(); ++l) {
                CsvRow t;
                t << c.key.realization << strategy_label(c.key.strategy) << c.key.r_f << cfg.beta_grid[b]
                  << cfg.lambda_grid[l] << c.lambda_c[b] << c.load_analytic[b][l] << c.load_sim[b][l];
                traffic << t.str() << '\n';
            }
    }

    // Aggregates per (strategy, r_f); the original network is reported once
    // at r_f = 0.
    struct Group {
        Strategy strategy;
        double r_f;
    };
    std::vector<Group> groups;
    for (auto s : columns) {
        if (s == Strategy::None) {
            groups.push_back({s, 0.0});
            continue;
        }
        for (double rf : cfg.rf_grid) groups.push_back({s, rf});
    }
    auto members = [&](const Group& g) {
        std::vector<const CellResult*> out;
        for (auto& c : outcome.cells)
            if (c.ok && c.key.strategy == g.strategy && c.key.r_f == g.r_f) out.push_back(&c);
        return out;
    };

    std::ostringstream summary, tsummary, util, degdist, table;
    summary << "strategy,r_f,n";
    for (auto& ms : kMeasures) summary << ',' << ms.name << "_mean," << ms.name << "_std";
    summary << '\n';
    tsummary << "strategy,r_f,beta,lambda,n,lambda_c_mean,L_analytic_mean,L_analytic_std,L_sim_mean,L_sim_std\n";
    util << "strategy,r_f,k,U_k_mean,n\n";
    degdist << "strategy,r_f,k,p_k\n";

    std::map<std::pair<int, double>, std::map<std::string, double>> means; // (strategy, rf) -> measure -> mean
    for (auto& grp : groups) {
        auto mem = members(grp);
        CsvRow row;
        row << strategy_label(grp.strategy) << grp.r_f << mem.size();
        for (auto& ms : kMeasures) {
            std::vector<double> xs;
            for (auto* c : mem) xs.push_back(c->metrics.*ms.field);
            auto st = stats_of(xs);
            row << st.mean << st.std;
            means[{static_cast<int>(grp.strategy), grp.r_f}][ms.name] = st.mean;
        }
        summary << row.str() << '\n';

        for (std::size_t b = 0; b < cfg.beta_grid.size(); ++b)
            for (std::size_t l = 0; l < cfg.lambda_grid.size(); ++l) {
                std::vector<double> lc, la, ls;
                for (auto* c : mem) {
                    lc.push_back(c->lambda_c[b]);
                    la.push_back(c->load_analytic[b][l]);
                    ls.push_back(c->load_sim[b][l]);
                }
                auto a = stats_of(la), s = stats_of(ls);
                CsvRow t;
                t << strategy_label(grp.strategy) << grp.r_f << cfg.beta_grid[b] << cfg.lambda_grid[l] << mem.size()
                  << stats_of(lc).mean << a.mean << a.std << s.mean << s.std;
                tsummary << t.str() << '\n';
            }

        std::map<std::size_t, std::pair<double, std::size_t>> uk;
        std::vector<double> hist;
        double nodes = 0.0;
        for (auto* c : mem) {
            for (auto [k, u] : c->utilization) {
                uk[k].first += u;
                ++uk[k].second;
            }
            if (c->degree_histogram.size() > hist.size()) hist.resize(c->degree_histogram.size(), 0.0);
            for (std::size_t k = 0; k < c->degree_histogram.size(); ++k) {
                hist[k] += static_cast<double>(c->degree_histogram[k]);
                nodes += static_cast<double>(c->degree_histogram[k]);
            }
        }
        for (auto& [k, su] : uk) {
            CsvRow u;
            u << strategy_label(grp.strategy) << grp.r_f << k << su.first / static_cast<double>(su.second) << su.second;
            util << u.str() << '\n';
        }
        for (std::size_t k = 0; k < hist.size(); ++k) {
            if (hist[k] == 0.0) continue;
            CsvRow d;
            d << strategy_label(grp.strategy) << grp.r_f << k << hist[k] / nodes;
            degdist << d.str() << '\n';
        }
    }

    table << "measure,r_f";
    for (auto s : columns) table << ',' << strategy_label(s);
    table << '\n';
    for (const char* name : kTableMeasures)
        for (double rf : cfg.rf_grid) {
            CsvRow row;
            row << name << rf;
            for (auto s : columns) {
                const double key_rf = s == Strategy::None ? 0.0 : rf;
                row << means[{static_cast<int>(s), key_rf}][name];
            }
            table << row.str() << '\n';
        }

    write("metrics.csv", metrics.str());
    write("rewire.csv", rewires.str());
    write("traffic.csv", traffic.str());
    write("errors.csv", errors.str());
    write("summary.csv", summary.str());
    write("traffic_summary.csv", tsummary.str());
    write("utilization.csv", util.str());
    write("degree_distribution.csv", degdist.str());
    write("table.csv", table.str());

    json manifest = {{"tool", "netrewire"},
                     {"version", kVersion},
                     {"config", config_json(cfg, false)},
                     {"config_hash", format_hash(config_hash(cfg))},
                     {"master_seed", cfg.master_seed},
                     {"cells", outcome.cells.size()},
                     {"failures", outcome.failures}};
    json files = json::array();
    for (auto& f : outcome.files) files.push_back(f.filename().string());
    manifest["files"] = files;
    write("manifest.json", manifest.dump(2) + "\n");
    return outcome;
}

} // namespace netrewire
