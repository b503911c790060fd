#include <rebuf/experiment.hpp>

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace rebuf {

namespace {

std::string trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return std::string(s);
}

std::vector<std::string> split_list(std::string_view value) {
    std::vector<std::string> out;
    while (true) {
        const auto comma = value.find(',');
        std::string item = trim(value.substr(0, comma));
        if (!item.empty()) {
            out.push_back(std::move(item));
        }
        if (comma == std::string_view::npos) break;
        value.remove_prefix(comma + 1);
    }
    return out;
}

[[noreturn]] void config_error(std::size_t line, const std::string& what) {
    throw Error(ErrorKind::Parse, "config line " + std::to_string(line) + ": " + what);
}

std::uint64_t parse_u64(const std::string& s, std::size_t line) {
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(s, &used, 0);
        if (used != s.size() || s.front() == '-') throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        config_error(line, "expected a non-negative integer, got '" + s + "'");
    }
}

double parse_fraction(const std::string& s, std::size_t line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size() || !(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        config_error(line, "expected a positive fraction, got '" + s + "'");
    }
}

// Spec strings may themselves contain commas ("negbinomial:p=0.3,r=5");
// a token of the form key=value without a kind name continues the previous spec.
std::vector<DistributionSpec> parse_distributions(std::string_view value, std::size_t line) {
    if (trim(value) == "benchmark") {
        return benchmark_distributions();
    }
    std::vector<std::string> specs;
    for (auto& token : split_list(value)) {
        const bool continuation = token.find(':') == std::string::npos && token.find('=') != std::string::npos;
        if (continuation) {
            if (specs.empty()) config_error(line, "parameter '" + token + "' without a distribution");
            specs.back() += "," + token;
        } else {
            specs.push_back(token);
        }
    }
    std::vector<DistributionSpec> out;
    for (const auto& s : specs) {
        try {
            out.push_back(DistributionSpec::parse(s));
        } catch (const Error& e) {
            config_error(line, e.what());
        }
    }
    return out;
}

} // namespace

RunConfig parse_config(std::string_view text) {
    RunConfig cfg;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty() || line.front() == '[') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) config_error(line_no, "expected key = value");
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));

        if (key == "input_sizes") {
            cfg.grid.input_sizes.clear();
            for (const auto& v : split_list(value)) cfg.grid.input_sizes.push_back(parse_u64(v, line_no));
        } else if (key == "color_fractions" || key == "buffer_fractions") {
            auto& target = key == "color_fractions" ? cfg.grid.color_fractions : cfg.grid.buffer_fractions;
            target.clear();
            for (const auto& v : split_list(value)) target.push_back(parse_fraction(v, line_no));
        } else if (key == "distributions") {
            cfg.grid.distributions = parse_distributions(value, line_no);
        } else if (key == "trials") {
            cfg.grid.trials = parse_u64(value, line_no);
        } else if (key == "base_seed") {
            cfg.grid.base_seed = parse_u64(value, line_no);
        } else if (key == "strategies") {
            cfg.strategies.clear();
            for (const auto& v : split_list(value)) {
                try {
                    cfg.strategies.push_back(parse_strategy(v));
                } catch (const Error& e) {
                    config_error(line_no, e.what());
                }
            }
        } else if (key == "format") {
            if (value == "csv") cfg.format = OutputFormat::Csv;
            else if (value == "json") cfg.format = OutputFormat::Json;
            else config_error(line_no, "format must be csv or json");
        } else if (key == "output") {
            cfg.output_path = value;
        } else if (key == "parallelism") {
            cfg.parallelism = parse_u64(value, line_no);
        } else {
            config_error(line_no, "unknown key '" + key + "'");
        }
    }

    if (cfg.grid.input_sizes.empty() || cfg.grid.color_fractions.empty() || cfg.grid.buffer_fractions.empty() ||
        cfg.grid.distributions.empty()) {
        throw Error(ErrorKind::Parse, "config: every grid axis needs at least one value");
    }
    if (std::find(cfg.grid.input_sizes.begin(), cfg.grid.input_sizes.end(), 0U) != cfg.grid.input_sizes.end()) {
        throw Error(ErrorKind::Parse, "config: input sizes must be positive");
    }
    if (cfg.grid.trials == 0) throw Error(ErrorKind::Parse, "config: trials must be at least 1");
    if (cfg.strategies.empty()) throw Error(ErrorKind::Parse, "config: no strategies");
    if (cfg.parallelism == 0) throw Error(ErrorKind::Parse, "config: parallelism must be at least 1");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::Io, "cannot open config " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::uint64_t strategy_seed(const ExperimentCell& cell, std::size_t trial, StrategyKind kind) {
    return mix_seed({cell.trial_seed(trial), cell.k, fnv1a(strategy_name(kind))});
}

std::vector<CellMetrics> run_cell(const ExperimentCell& cell, std::size_t trials,
                                  const std::vector<StrategyKind>& strategies) {
    std::vector<std::vector<TrialResult>> per_strategy(strategies.size());
    SimulationOptions options;
    options.record_trace = false;
    for (std::size_t t = 0; t < trials; ++t) {
        const ColorSequence input = sample_sequence(cell.distribution, cell.n, cell.sigma, cell.trial_seed(t));
        const std::uint64_t switches_in = count_switches(input);
        for (std::size_t s = 0; s < strategies.size(); ++s) {
            auto strategy = make_strategy(strategies[s], strategy_seed(cell, t, strategies[s]));
            const SimulationResult res = simulate(input, cell.k, *strategy, options);
            per_strategy[s].push_back(TrialResult{switches_in, count_switches(res.output), res.skipped_count, cell.n});
        }
    }
    std::vector<CellMetrics> out;
    out.reserve(strategies.size());
    for (const auto& rows : per_strategy) {
        out.push_back(aggregate(rows));
    }
    return out;
}

ExperimentReport run_experiment(const RunConfig& config, const ProgressFn& progress) {
    const std::vector<ExperimentCell> cells = grid_expand(config.grid);
    std::vector<std::vector<CellMetrics>> results(cells.size());

    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> done{0};
    std::mutex progress_mutex;
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            try {
                results[i] = run_cell(cells[i], config.grid.trials, config.strategies);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = cells.size();
                return;
            }
            const std::size_t finished = ++done;
            if (progress) {
                std::lock_guard lock(progress_mutex);
                progress(finished, cells.size());
            }
        }
    };

    const std::size_t workers = std::max<std::size_t>(1, std::min(config.parallelism, cells.size()));
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    ExperimentReport report;
    report.base_seed = config.grid.base_seed;
    report.trials = config.grid.trials;
    report.strategies = config.strategies;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto& cell = cells[i];
        for (std::size_t s = 0; s < config.strategies.size(); ++s) {
            const CellMetrics& m = results[i][s];
            ResultRow row;
            row.distribution = cell.distribution.kind_name();
            row.params = cell.distribution.params_string();
            row.spec = cell.distribution.to_string();
            row.n = cell.n;
            row.sigma = cell.sigma;
            row.k = cell.k;
            row.strategy = config.strategies[s];
            row.trials = m.trials;
            row.mean_switch_ratio = m.mean_switch_ratio;
            row.mean_excess_run = m.mean_excess_run;
            row.degenerate = m.degenerate;
            report.rows.push_back(std::move(row));
        }
    }
    summarize(report);
    return report;
}

void summarize(ExperimentReport& report) {
    const std::size_t ns = report.strategies.size();
    report.summary.clear();
    report.total_cells = 0;
    report.total_best_cases.assign(ns, 0);
    if (ns == 0) return;

    std::map<std::string, std::size_t> position;
    for (std::size_t base = 0; base + ns <= report.rows.size(); base += ns) {
        const std::string& spec = report.rows[base].spec;
        auto [it, inserted] = position.emplace(spec, report.summary.size());
        if (inserted) {
            DistributionSummary d;
            d.spec = spec;
            for (auto kind : report.strategies) d.per_strategy.push_back(StrategySummary{kind});
            report.summary.push_back(std::move(d));
        }
        DistributionSummary& d = report.summary[it->second];
        std::vector<double> ratios(ns);
        for (std::size_t s = 0; s < ns; ++s) {
            const ResultRow& row = report.rows[base + s];
            ratios[s] = std::isnan(row.mean_switch_ratio) ? std::numeric_limits<double>::infinity() : row.mean_switch_ratio;
            if (!std::isnan(row.mean_switch_ratio)) {
                d.per_strategy[s].mean_switch_ratio += row.mean_switch_ratio;
                d.per_strategy[s].mean_excess_run += row.mean_excess_run;
            }
        }
        for (auto w : best_indices(ratios)) {
            ++d.per_strategy[w].best_cases;
            ++report.total_best_cases[w];
        }
        ++d.cells;
        ++report.total_cells;
    }
    for (auto& d : report.summary) {
        for (auto& s : d.per_strategy) {
            s.mean_switch_ratio /= static_cast<double>(d.cells);
            s.mean_excess_run /= static_cast<double>(d.cells);
        }
    }
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

namespace {

std::string fixed3(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

} // namespace

std::string format_csv(const ExperimentReport& report) {
    std::ostringstream os;
    os << "# base_seed=" << report.base_seed << " trials=" << report.trials << '\n';
    os << "distribution,params,n,sigma,k,strategy,trials,mean_switch_ratio,mean_excess_run,degenerate\n";
    for (const auto& r : report.rows) {
        os << r.distribution << ',' << r.params << ',' << r.n << ',' << r.sigma << ',' << r.k << ','
           << strategy_name(r.strategy) << ',' << r.trials << ',' << format_double(r.mean_switch_ratio) << ','
           << format_double(r.mean_excess_run) << ',' << r.degenerate << '\n';
    }
    return os.str();
}

std::string format_json(const ExperimentReport& report) {
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["base_seed"] = report.base_seed;
    doc["trials"] = report.trials;
    ordered_json rows = ordered_json::array();
    for (const auto& r : report.rows) {
        ordered_json row;
        row["distribution"] = r.distribution;
        row["params"] = r.params;
        row["n"] = r.n;
        row["sigma"] = r.sigma;
        row["k"] = r.k;
        row["strategy"] = std::string(strategy_name(r.strategy));
        row["trials"] = r.trials;
        // Emitted as strings with the CSV's formatting so both artifacts agree.
        row["mean_switch_ratio"] = format_double(r.mean_switch_ratio);
        row["mean_excess_run"] = format_double(r.mean_excess_run);
        row["degenerate"] = r.degenerate;
        rows.push_back(std::move(row));
    }
    doc["rows"] = std::move(rows);
    ordered_json summary = ordered_json::array();
    for (const auto& d : report.summary) {
        ordered_json entry;
        entry["distribution"] = d.spec;
        entry["cells"] = d.cells;
        for (const auto& s : d.per_strategy) {
            ordered_json st;
            st["mean_switch_ratio"] = fixed3(s.mean_switch_ratio);
            st["best_cases"] = s.best_cases;
            st["mean_excess_run"] = fixed3(s.mean_excess_run);
            entry[std::string(strategy_name(s.strategy))] = std::move(st);
        }
        summary.push_back(std::move(entry));
    }
    doc["summary"] = std::move(summary);
    return doc.dump(2) + "\n";
}

std::string format_summary(const ExperimentReport& report) {
    std::ostringstream os;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%-22s", "distribution");
    os << buf;
    for (auto kind : report.strategies) {
        std::snprintf(buf, sizeof buf, " | %6s ratio  best", std::string(strategy_name(kind)).c_str());
        os << buf;
    }
    const auto picky = std::find(report.strategies.begin(), report.strategies.end(), StrategyKind::Picky);
    if (picky != report.strategies.end()) os << " | picky excess";
    os << '\n';
    for (const auto& d : report.summary) {
        std::snprintf(buf, sizeof buf, "%-22s", d.spec.c_str());
        os << buf;
        for (const auto& s : d.per_strategy) {
            std::snprintf(buf, sizeof buf, " | %12s %5zu", fixed3(s.mean_switch_ratio).c_str(), s.best_cases);
            os << buf;
        }
        if (picky != report.strategies.end()) {
            const auto idx = static_cast<std::size_t>(picky - report.strategies.begin());
            os << " | " << fixed3(d.per_strategy[idx].mean_excess_run);
        }
        os << '\n';
    }
    std::snprintf(buf, sizeof buf, "%-22s", "best cases (all)");
    os << buf;
    for (std::size_t s = 0; s < report.strategies.size(); ++s) {
        std::snprintf(buf, sizeof buf, " | %12s %5zu", "", report.total_best_cases[s]);
        os << buf;
    }
    os << "\ncells: " << report.total_cells << '\n';
    return os.str();
}

} // namespace rebuf
