#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "netrewire/centrality.hpp"
#include "netrewire/csv.hpp"
#include "netrewire/edge_list.hpp"
#include "netrewire/error.hpp"
#include "netrewire/experiment.hpp"
#include "netrewire/generators.hpp"
#include "netrewire/meso.hpp"
#include "netrewire/metrics.hpp"
#include "netrewire/packet_sim.hpp"
#include "netrewire/plot.hpp"
#include "netrewire/random.hpp"
#include "netrewire/rewiring.hpp"
#include "netrewire/traffic.hpp"

using namespace netrewire;
namespace fs = std::filesystem;

namespace {

constexpr int kExitUsage = 1, kExitData = 2, kExitNumeric = 3;

BaParams parse_ba(const std::string& text) {
    BaParams p;
    std::vector<std::size_t> parts;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            parts.push_back(std::stoull(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw ConfigError("--ba expects N,M0,M");
        }
    }
    if (parts.size() != 3) throw ConfigError("--ba expects N,M0,M");
    p.nodes = parts[0];
    p.seed_nodes = parts[1];
    p.links = parts[2];
    p.validate();
    return p;
}

// Network selection shared by the single-graph subcommands.
struct Source {
    std::string dataset;
    std::string ba;
    bool aggregate = false;
    std::string layer;
    std::uint64_t seed = 1;

    void attach(CLI::App* cmd) {
        auto* d = cmd->add_option("--dataset", dataset, "Edge list file");
        auto* b = cmd->add_option("--ba", ba, "Generate a BA graph N,M0,M");
        d->excludes(b);
        cmd->add_flag("--aggregate", aggregate, "Collapse multiplex layers onto one edge set");
        cmd->add_option("--layer", layer, "Keep only this layer of a multiplex edge list");
        cmd->add_option("--seed", seed, "RNG seed");
    }

    Graph load() const {
        if (!dataset.empty()) {
            LoadOptions opt;
            opt.aggregate_layers = aggregate;
            if (!layer.empty()) opt.layer = layer;
            return load_edge_list(dataset, opt).graph;
        }
        if (!ba.empty()) return generate_ba(parse_ba(ba), seed);
        throw ConfigError("one of --dataset or --ba is required");
    }
};

void write_text(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    write_file_atomic(path, text);
}

template <typename F>
std::string capture(F&& f) {
    std::ostringstream o;
    f(o);
    return o.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Centrality-driven rewiring of scale-free networks and traffic capacity"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Write a BA graph as an edge list");
    std::string gen_ba = "500,5,2", gen_out;
    std::uint64_t gen_seed = 1;
    gen->add_option("--ba", gen_ba, "N,M0,M")->capture_default_str();
    gen->add_option("--seed", gen_seed, "RNG seed")->capture_default_str();
    gen->add_option("--out", gen_out, "Output edge list (stdout if omitted)");

    // metrics
    auto* met = app.add_subcommand("metrics", "Network measures of one graph");
    Source met_src;
    met_src.attach(met);
    double met_beta = 0.5;
    std::string met_out;
    met->add_option("--beta", met_beta, "Capacity control for lambda_c")->capture_default_str();
    met->add_option("--out", met_out, "Directory for per-node tables");

    // rewire
    auto* rew = app.add_subcommand("rewire", "Apply one rewiring strategy");
    Source rew_src;
    rew_src.attach(rew);
    std::string rew_strategy, rew_out;
    double rew_rf = 0.05;
    std::size_t rew_attempts = 50, rew_every = 1;
    rew->add_option("--strategy", rew_strategy, "none, dpa, dec, dkbc or ckdbc")->required();
    rew->add_option("--rf", rew_rf, "Fraction of links to rewire")->capture_default_str();
    rew->add_option("--max-attempts", rew_attempts, "Draws per move")->capture_default_str();
    rew->add_option("--recompute-every", rew_every, "Accepted moves between input refreshes")->capture_default_str();
    rew->add_option("--out", rew_out, "Output directory")->required();

    // sweep
    auto* swp = app.add_subcommand("sweep", "Run a full experiment");
    std::string swp_config, swp_out, swp_dataset, swp_ba, swp_layer;
    std::optional<std::uint64_t> swp_seed;
    std::vector<std::string> swp_strategies;
    std::vector<double> swp_rf, swp_beta, swp_lambda;
    std::optional<std::size_t> swp_realizations, swp_threads;
    bool swp_simulate = false;
    swp->add_option("--config", swp_config, "JSON config file");
    swp->add_option("--seed", swp_seed, "Master seed");
    swp->add_option("--out", swp_out, "Output directory");
    swp->add_option("--strategy", swp_strategies, "Restrict to these strategies");
    swp->add_option("--rf", swp_rf, "r_f grid");
    swp->add_option("--beta", swp_beta, "beta grid");
    swp->add_option("--lambda", swp_lambda, "lambda grid");
    swp->add_option("--realizations", swp_realizations, "Realizations per cell");
    swp->add_option("--dataset", swp_dataset, "Edge list file instead of BA graphs");
    swp->add_option("--layer", swp_layer, "Layer of a multiplex dataset (default: aggregate)");
    swp->add_option("--ba", swp_ba, "BA parameters N,M0,M");
    swp->add_option("--threads", swp_threads, "Worker threads (0: all cores)");
    swp->add_flag("--simulate", swp_simulate, "Also run the packet simulator");

    // simulate
    auto* sim = app.add_subcommand("simulate", "Traffic traces on one graph");
    Source sim_src;
    sim_src.attach(sim);
    double sim_beta = 0.5, sim_lambda = 1.0;
    std::size_t sim_horizon = 1000;
    bool sim_onset = false, sim_bernoulli = false;
    std::string sim_out;
    sim->add_option("--beta", sim_beta, "Capacity control")->capture_default_str();
    sim->add_option("--lambda", sim_lambda, "Packets per node per step")->capture_default_str();
    sim->add_option("--horizon", sim_horizon, "Time steps")->capture_default_str();
    sim->add_flag("--onset", sim_onset, "Also search the congestion onset");
    sim->add_flag("--bernoulli", sim_bernoulli, "Bernoulli instead of Poisson generation");
    sim->add_option("--out", sim_out, "Output directory");

    // plot
    auto* plt = app.add_subcommand("plot", "Render SVG figures from sweep CSVs");
    std::string plt_in, plt_out;
    double plt_rf = 0.05;
    plt->add_option("--in", plt_in, "Sweep output directory")->required();
    plt->add_option("--out", plt_out, "Figure directory (default: <in>/plots)");
    plt->add_option("--rf", plt_rf, "r_f shown on per-degree plots")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*gen) {
            auto g = generate_ba(parse_ba(gen_ba), gen_seed);
            auto text = capture([&](std::ostream& o) { write_edge_list(o, g); });
            if (gen_out.empty())
                std::cout << text;
            else
                write_text(gen_out, text);
        } else if (*met) {
            auto g = met_src.load();
            auto c = compute_centralities(g);
            auto row = compute_metrics(g, c, met_beta);
            std::cout << MetricsRow::csv_header() << '\n' << row.csv_fields() << '\n';
            if (!met_out.empty()) {
                const fs::path dir(met_out);
                write_text(dir / "metrics.csv", MetricsRow::csv_header() + "\n" + row.csv_fields() + "\n");
                write_text(dir / "centrality.csv", capture([&](std::ostream& o) { write_centrality_csv(o, g, c); }));
                const auto cores = kcore_degree(g);
                const auto ccores = kcore_closeness(c.cc, cores.main_core_index);
                write_text(dir / "cores.csv", capture([&](std::ostream& o) { write_cores_csv(o, g, cores, ccores); }));
                write_text(dir / "rich_club.csv",
                           capture([&](std::ostream& o) { write_rich_club_csv(o, rich_club_profile(g)); }));
                TrafficParams tp;
                tp.beta = met_beta;
                tp.lambda = 1.0;
                const auto state = traffic_state(c, tp);
                const auto util = node_utilization(g, c.bc);
                write_text(dir / "node_traffic.csv",
                           capture([&](std::ostream& o) { write_node_traffic_csv(o, g, state, util.per_node); }));
            }
        } else if (*rew) {
            auto g = rew_src.load();
            RewireConfig rc;
            rc.strategy = parse_strategy(rew_strategy);
            rc.r_f = rew_rf;
            rc.seed = rew_src.seed;
            rc.max_attempts = rew_attempts;
            rc.recompute_every = rew_every;
            auto res = rewire(g, rc);
            const fs::path dir(rew_out);
            write_text(dir / "rewired.edges", capture([&](std::ostream& o) { write_edge_list(o, res.graph); }));
            write_text(dir / "rewire_report.csv", RewireReport::csv_header() + "\n" + res.report.csv_row() + "\n");
            auto row = compute_metrics(res.graph, 0.5);
            write_text(dir / "metrics.csv", MetricsRow::csv_header() + "\n" + row.csv_fields() + "\n");
            std::cout << RewireReport::csv_header() << '\n' << res.report.csv_row() << '\n';
        } else if (*swp) {
            ExperimentConfig cfg = swp_config.empty() ? ExperimentConfig{} : load_config(swp_config);
            if (swp_seed) cfg.master_seed = *swp_seed;
            if (!swp_out.empty()) cfg.output_dir = swp_out;
            if (!swp_strategies.empty()) {
                cfg.strategies.clear();
                for (auto& s : swp_strategies) {
                    auto st = parse_strategy(s);
                    if (st != Strategy::None) cfg.strategies.push_back(st);
                }
            }
            if (!swp_rf.empty()) cfg.rf_grid = swp_rf;
            if (!swp_beta.empty()) cfg.beta_grid = swp_beta;
            if (!swp_lambda.empty()) cfg.lambda_grid = swp_lambda;
            if (swp_realizations) cfg.realizations = *swp_realizations;
            if (swp_threads) cfg.threads = *swp_threads;
            if (swp_simulate) cfg.simulate = true;
            if (!swp_ba.empty()) {
                cfg.network.kind = NetworkSource::Kind::Ba;
                cfg.network.ba = parse_ba(swp_ba);
            }
            if (!swp_dataset.empty()) {
                cfg.network.kind = NetworkSource::Kind::Dataset;
                cfg.network.dataset = swp_dataset;
                cfg.network.aggregate_layers = swp_layer.empty();
                if (!swp_layer.empty()) cfg.network.layer = swp_layer;
            }
            auto outcome = run_experiment(cfg);
            std::cerr << "sweep: " << outcome.cells.size() << " cells, " << outcome.failures << " failed, output in "
                      << cfg.output_dir << '\n';
        } else if (*sim) {
            auto g = sim_src.load();
            auto c = compute_centralities(g);
            TrafficParams tp;
            tp.beta = sim_beta;
            tp.lambda = sim_lambda;
            tp.horizon = sim_horizon;
            tp.validate();
            const auto state = traffic_state(c, tp);
            const auto unit = expected_inflow(c, 1.0);
            const auto trace = analytic_load(state.capacity, state.inflow, sim_horizon);

            RoutingTable routes(g);
            SimOptions so;
            so.lambda = sim_lambda;
            so.horizon = sim_horizon;
            so.seed = sim_src.seed;
            so.generation = sim_bernoulli ? Generation::Bernoulli : Generation::Poisson;
            const auto res = packet_simulate(routes, state.capacity, so);

            CsvRow head, row;
            head << "lambda" << "beta" << "lambda_c" << "analytic_onset" << "L_analytic" << "L_sim" << "generated"
                 << "delivered";
            row << sim_lambda << sim_beta << state.lambda_c << analytic_onset(state.capacity, unit)
                << trace.final_total() << res.in_flight << res.generated << res.delivered;
            if (sim_onset) {
                OnsetSearch os;
                os.hi = 2.0 * state.lambda_c;
                os.horizon = sim_horizon;
                head << "simulated_onset";
                row << simulated_onset(routes, state.capacity, os);
            }
            std::cout << head.str() << '\n' << row.str() << '\n';
            if (!sim_out.empty()) {
                const fs::path dir(sim_out);
                write_text(dir / "summary.csv", head.str() + "\n" + row.str() + "\n");
                write_text(dir / "trace.csv", capture([&](std::ostream& o) { write_trace_csv(o, res); }));
                std::string analytic = "t,L_total\n";
                for (std::size_t t = 0; t < trace.total.size(); ++t) {
                    CsvRow r;
                    r << t + 1 << trace.total[t];
                    analytic += r.str() + "\n";
                }
                write_text(dir / "analytic_trace.csv", analytic);
            }
        } else if (*plt) {
            const fs::path out = plt_out.empty() ? fs::path(plt_in) / "plots" : fs::path(plt_out);
            auto res = emit_plots(plt_in, out, plt_rf);
            for (auto& w : res.warnings) std::cerr << "warning: " << w << '\n';
            for (auto& p : res.written) std::cout << p.string() << '\n';
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kExitData;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
    return 0;
}
