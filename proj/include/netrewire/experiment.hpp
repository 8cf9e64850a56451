#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "netrewire/generators.hpp"
#include "netrewire/graph.hpp"
#include "netrewire/metrics.hpp"
#include "netrewire/rewiring.hpp"

namespace netrewire {

inline constexpr const char* kVersion = "0.3.0";

struct NetworkSource {
    enum class Kind { Ba, Dataset };

    Kind kind = Kind::Ba;
    BaParams ba{250, 5, 2};
    std::string dataset;
    bool aggregate_layers = true;
    std::optional<std::string> layer;
};

struct ExperimentConfig {
    NetworkSource network;
    std::vector<Strategy> strategies{kRewiringStrategies.begin(), kRewiringStrategies.end()};
    std::vector<double> rf_grid{0.01, 0.05, 0.10, 0.15, 0.20};
    std::vector<double> beta_grid{0.3, 0.5, 0.7};
    std::vector<double> lambda_grid{0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0};
    std::size_t realizations = 10;
    std::uint64_t master_seed = 1;
    std::string output_dir = "results";
    std::size_t recompute_every = 1;
    std::size_t max_attempts = 50;
    double metrics_beta = 0.5; // beta behind the lambda_c column of the metrics table
    std::size_t analytic_horizon = 1000;
    bool simulate = false;     // packet-level L(T) next to the analytic one
    std::size_t sim_horizon = 1000;
    std::size_t threads = 0;   // 0: hardware concurrency

    void validate() const;
};

std::string config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::uint64_t config_hash(const ExperimentConfig& cfg);

// Base network for one realization: a fresh BA graph per realization, or the
// loaded dataset (same graph for every realization).
Graph base_network(const ExperimentConfig& cfg, std::size_t realization);

struct CellKey {
    std::size_t realization = 0;
    Strategy strategy = Strategy::None; // None: original network
    double r_f = 0.0;
    std::uint64_t seed = 0;
};

struct CellResult {
    CellKey key;
    bool ok = false;
    std::string error;
    MetricsRow metrics;
    RewireReport report;
    std::vector<std::pair<std::size_t, double>> utilization; // (k, U_k)
    std::vector<std::size_t> degree_histogram;               // count per k
    // Indexed [beta][lambda].
    std::vector<double> lambda_c;
    std::vector<std::vector<double>> load_analytic;
    std::vector<std::vector<double>> load_sim;
};

CellResult run_cell(const ExperimentConfig& cfg, const Graph& base, const CellKey& key);

struct ExperimentOutcome {
    std::vector<CellResult> cells;
    std::vector<std::filesystem::path> files;
    std::size_t failures = 0;
};

// Runs every (realization, strategy, r_f) cell, then writes metrics.csv,
// rewire.csv, traffic.csv, utilization.csv, degree_distribution.csv,
// summary.csv, traffic_summary.csv, table.csv, errors.csv and manifest.json
// into cfg.output_dir.
ExperimentOutcome run_experiment(const ExperimentConfig& cfg);

std::string strategy_label(Strategy s); // "original" for None

} // namespace netrewire
