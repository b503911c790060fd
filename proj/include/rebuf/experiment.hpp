#pragma once

#include <rebuf/gen.hpp>
#include <rebuf/metrics.hpp>
#include <rebuf/strategies.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace rebuf {

enum class OutputFormat { Csv, Json };

struct RunConfig {
    DatasetGrid grid;
    std::vector<StrategyKind> strategies{StrategyKind::BoundedWaste, StrategyKind::RandomChoice, StrategyKind::Picky};
    std::string output_path;
    OutputFormat format = OutputFormat::Csv;
    std::size_t parallelism = 1;
};

/// Flat `key = value` text; '#' starts a comment. Keys: input_sizes,
/// color_fractions, buffer_fractions, distributions, trials, base_seed,
/// strategies, format, output, parallelism. Lists are comma-separated;
/// `distributions = benchmark` selects the sixteen benchmark distributions.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

struct ResultRow {
    std::string distribution; // kind name
    std::string params;       // "p=0.3;r=5", empty for uniform
    std::string spec;         // canonical spec string
    std::size_t n = 0;
    std::size_t sigma = 0;
    std::size_t k = 0;
    StrategyKind strategy = StrategyKind::Picky;
    std::size_t trials = 0;
    double mean_switch_ratio = 0.0;
    double mean_excess_run = 0.0;
    std::size_t degenerate = 0;
};

struct StrategySummary {
    StrategyKind strategy = StrategyKind::Picky;
    double mean_switch_ratio = 0.0;
    double mean_excess_run = 0.0;
    std::size_t best_cases = 0;
};

/// One line of the per-distribution summary (means over the distribution's cells).
struct DistributionSummary {
    std::string spec;
    std::size_t cells = 0;
    std::vector<StrategySummary> per_strategy; // config strategy order
};

struct ExperimentReport {
    std::uint64_t base_seed = 0;
    std::size_t trials = 0;
    std::vector<StrategyKind> strategies;
    std::vector<ResultRow> rows; // grid order, then strategy order
    std::vector<DistributionSummary> summary;
    std::size_t total_cells = 0;
    std::vector<std::size_t> total_best_cases; // per strategy
};

/// Seed for a randomized strategy on one (cell, trial).
std::uint64_t strategy_seed(const ExperimentCell& cell, std::size_t trial, StrategyKind kind);

/// Runs every trial of one cell for each strategy, sampling each trial's
/// sequence once and sharing it across strategies.
std::vector<CellMetrics> run_cell(const ExperimentCell& cell, std::size_t trials,
                                  const std::vector<StrategyKind>& strategies);

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

/// Runs the whole grid on `config.parallelism` workers; output order does
/// not depend on scheduling.
ExperimentReport run_experiment(const RunConfig& config, const ProgressFn& progress = {});

/// Best-case tallies and per-distribution means, computed from rows.
void summarize(ExperimentReport& report);

std::string format_double(double v); // 6 significant digits
std::string format_csv(const ExperimentReport& report);
std::string format_json(const ExperimentReport& report);
/// Per-distribution table: average ratio and best cases per strategy, plus
/// Picky's average excess run when Picky is part of the run.
std::string format_summary(const ExperimentReport& report);

} // namespace rebuf
