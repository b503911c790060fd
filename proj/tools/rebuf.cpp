#include <rebuf/engine.hpp>
#include <rebuf/experiment.hpp>
#include <rebuf/gen.hpp>
#include <rebuf/lemma.hpp>
#include <rebuf/metrics.hpp>
#include <rebuf/oracle.hpp>
#include <rebuf/strategies.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

namespace {

constexpr int kUsageError = 1;
constexpr int kRuntimeError = 2;

int cmd_simulate(const std::string& path, std::size_t k, const std::string& strategy_name,
                 std::optional<std::uint64_t> seed, bool trace) {
    using namespace rebuf;
    const ColorSequence input = read_sequence_file(path);
    const StrategyKind kind = parse_strategy(strategy_name);
    if (is_randomized(kind) && !seed) {
        throw Error(ErrorKind::MissingSeed, "strategy rc needs --seed");
    }
    const SimulationResult result = simulate(input, k, kind, seed);

    std::cout << "output: " << join_colors(result.output) << '\n';
    std::cout << "switches_in: " << count_switches(input) << '\n';
    std::cout << "switches_out: " << count_switches(result.output) << '\n';
    std::cout << "blocks: " << count_blocks(result.output) << '\n';
    std::cout << "switch_ratio: "
              << (count_switches(input) == 0 ? std::string("undefined")
                                             : format_double(switch_ratio(input, result.output)))
              << '\n';
    std::cout << "skipped: " << result.skipped_count << '\n';
    std::cout << "excess_run: "
              << (input.empty() ? std::string("undefined") : format_double(excess_run(result.skipped_count, input.size())))
              << '\n';
    if (trace) {
        std::cout << '\n' << render_trace(input, result);
    }
    return 0;
}

int cmd_experiment(const std::string& config_path, const std::string& output_override,
                   const std::string& format_override, std::size_t parallelism_override, bool quiet) {
    using namespace rebuf;
    RunConfig cfg = load_config(config_path);
    if (const char* env = std::getenv("REBUF_SEED"); env != nullptr && *env != '\0') {
        try {
            cfg.grid.base_seed = std::stoull(env, nullptr, 0);
        } catch (const std::exception&) {
            throw Error(ErrorKind::Parse, std::string("REBUF_SEED is not an integer: ") + env);
        }
    }
    if (!output_override.empty()) cfg.output_path = output_override;
    if (format_override == "csv") cfg.format = OutputFormat::Csv;
    if (format_override == "json") cfg.format = OutputFormat::Json;
    if (parallelism_override > 0) cfg.parallelism = parallelism_override;

    // Open the destination before doing any work so a bad path fails fast.
    std::ofstream file;
    if (!cfg.output_path.empty()) {
        file.open(cfg.output_path, std::ios::binary);
        if (!file) {
            throw Error(ErrorKind::Io, "cannot write " + cfg.output_path);
        }
    }

    ProgressFn progress;
    if (!quiet) {
        progress = [](std::size_t done, std::size_t total) { std::cerr << "cell " << done << '/' << total << '\n'; };
    }
    const ExperimentReport report = run_experiment(cfg, progress);
    const std::string body = cfg.format == OutputFormat::Csv ? format_csv(report) : format_json(report);
    if (file.is_open()) {
        file << body;
        if (!file) throw Error(ErrorKind::Io, "write failed for " + cfg.output_path);
    } else {
        std::cout << body;
    }
    (file.is_open() ? std::cout : std::cerr) << format_summary(report);
    return 0;
}

int cmd_generate(const std::string& spec_text, std::size_t n, std::size_t sigma, std::uint64_t seed,
                 const std::string& out) {
    using namespace rebuf;
    const DistributionSpec spec = DistributionSpec::parse(spec_text);
    const ColorSequence seq = sample_sequence(spec, n, sigma, seed);
    const SequenceFileHeader header{n, sigma, spec.to_string(), seed};
    if (out.empty() || out == "-") {
        std::cout << format_sequence_file(seq, header);
    } else {
        write_sequence_file(out, seq, header);
    }
    return 0;
}

int cmd_kmin(const std::string& path, const std::vector<std::uint64_t>& triple) {
    using namespace rebuf;
    std::uint64_t o1 = 0, o2 = 0, sigma = 0;
    if (!path.empty()) {
        const SequenceProfile p = profile(read_sequence_file(path));
        o1 = p.o1;
        o2 = p.o2;
        sigma = p.sigma;
        std::cout << "sigma: " << sigma << "\no1: " << o1 << "\no2: " << o2 << '\n';
    } else if (triple.size() == 3) {
        o1 = triple[0];
        o2 = triple[1];
        sigma = triple[2];
    } else {
        throw CLI::ValidationError("kmin", "give either --file or the three values O1 O2 SIGMA");
    }
    const KMin r = k_min(o1, o2, sigma);
    std::cout << "k_min: " << r.value << "\nby_o1: " << r.by_o1 << "\nby_o2: " << r.by_o2 << '\n';
    return 0;
}

int cmd_oracle(const std::string& path, std::size_t k, std::size_t max_items, std::size_t max_colors) {
    using namespace rebuf;
    const ColorSequence input = read_sequence_file(path);
    const std::uint64_t best = optimal_blocks(input, k, OracleLimits{max_items, max_colors});
    std::cout << "optimal_blocks: " << best << "\nlower_bound: " << blocks_lower_bound(input) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reordering buffer simulator and benchmark driver"};
    app.require_subcommand(1);

    auto* sim = app.add_subcommand("simulate", "Run one strategy over a sequence file");
    std::string sim_input;
    std::size_t sim_k = 0;
    std::string sim_strategy;
    std::optional<std::uint64_t> sim_seed;
    bool sim_trace = false;
    sim->add_option("input", sim_input, "Sequence file")->required();
    sim->add_option("-k,--buffer", sim_k, "Buffer size")->required();
    sim->add_option("-s,--strategy", sim_strategy, "mcf, bw, rc or picky")->required();
    sim->add_option("--seed", sim_seed, "Seed for randomized strategies");
    sim->add_flag("--trace", sim_trace, "Print the stage table");

    auto* exp = app.add_subcommand("experiment", "Run the experiment grid described by a config file");
    std::string exp_config, exp_output, exp_format;
    std::size_t exp_parallelism = 0;
    bool exp_quiet = false;
    exp->add_option("config", exp_config, "Config file")->required();
    exp->add_option("-o,--output", exp_output, "Output path (overrides config)");
    exp->add_option("--format", exp_format, "csv or json (overrides config)")->check(CLI::IsMember({"csv", "json"}));
    exp->add_option("-j,--parallelism", exp_parallelism, "Worker threads (overrides config)");
    exp->add_flag("-q,--quiet", exp_quiet, "No per-cell progress on stderr");

    auto* gen = app.add_subcommand("generate", "Sample a sequence file from a distribution");
    std::string gen_spec, gen_out;
    std::size_t gen_n = 0, gen_sigma = 0;
    std::uint64_t gen_seed = 0;
    gen->add_option("--spec", gen_spec, "Distribution, e.g. zipf:a=1.1")->required();
    gen->add_option("-n", gen_n, "Sequence length")->required();
    gen->add_option("--sigma", gen_sigma, "Number of colors")->required();
    gen->add_option("--seed", gen_seed, "Generator seed")->required();
    gen->add_option("-o,--out", gen_out, "Output file (stdout when omitted)");

    auto* km = app.add_subcommand("kmin", "Minimum buffer size for a most-frequent-first schedule without splits");
    std::string km_file;
    std::vector<std::uint64_t> km_values;
    km->add_option("-f,--file", km_file, "Sequence file to profile");
    km->add_option("values", km_values, "O1 O2 SIGMA")->expected(0, 3);

    auto* orc = app.add_subcommand("oracle", "Exact minimum block count for a small sequence");
    std::string orc_file;
    std::size_t orc_k = 0;
    rebuf::OracleLimits limits;
    orc->add_option("input", orc_file, "Sequence file")->required();
    orc->add_option("-k,--buffer", orc_k, "Buffer size")->required();
    orc->add_option("--max-items", limits.max_items, "Instance size limit");
    orc->add_option("--max-colors", limits.max_colors, "Color count limit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsageError;
    }

    try {
        if (sim->parsed()) return cmd_simulate(sim_input, sim_k, sim_strategy, sim_seed, sim_trace);
        if (exp->parsed()) return cmd_experiment(exp_config, exp_output, exp_format, exp_parallelism, exp_quiet);
        if (gen->parsed()) return cmd_generate(gen_spec, gen_n, gen_sigma, gen_seed, gen_out);
        if (km->parsed()) return cmd_kmin(km_file, km_values);
        if (orc->parsed()) return cmd_oracle(orc_file, orc_k, limits.max_items, limits.max_colors);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const rebuf::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        switch (e.kind()) {
        case rebuf::ErrorKind::Parse:
        case rebuf::ErrorKind::InvalidSpec:
        case rebuf::ErrorKind::InvalidCapacity:
        case rebuf::ErrorKind::MissingSeed: return kUsageError;
        default: return kRuntimeError;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntimeError;
    }
    return kUsageError;
}
