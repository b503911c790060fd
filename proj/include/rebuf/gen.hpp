#pragma once

#include <rebuf/types.hpp>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rebuf {

enum class DistributionKind { Uniform, Binomial, NegBinomial, Geometric, Poisson, Zipf };

/// A truncated discrete distribution over colors 1..sigma.
///
/// Outcome v maps to color v+1 for the zero-based families (Binomial with
/// sigma-1 trials, NegBinomial, Poisson) and to color v for the one-based
/// ones (Geometric, Zipf). Truncation renormalizes the PMF over the support.
struct DistributionSpec {
    DistributionKind kind = DistributionKind::Uniform;
    double p = 0.5; // Binomial, NegBinomial, Geometric
    double r = 5.0; // NegBinomial successes
    double m = 1.0; // Poisson mean
    double a = 2.0; // Zipf exponent

    static DistributionSpec uniform() { return {}; }
    static DistributionSpec binomial(double p) { return {DistributionKind::Binomial, p}; }
    static DistributionSpec negbinomial(double p, double r = 5.0) { return {DistributionKind::NegBinomial, p, r}; }
    static DistributionSpec geometric(double p) { return {DistributionKind::Geometric, p}; }
    static DistributionSpec poisson(double m) { return {DistributionKind::Poisson, 0.5, 5.0, m}; }
    static DistributionSpec zipf(double a) { return {DistributionKind::Zipf, 0.5, 5.0, 1.0, a}; }

    /// Parses "uniform", "binomial:p=0.5", "negbinomial:p=0.3,r=5",
    /// "geometric:p=0.7", "poisson:m=2", "zipf:a=1.1".
    static DistributionSpec parse(std::string_view text);

    /// Canonical spec string; parse(to_string()) round-trips.
    [[nodiscard]] std::string to_string() const;
    [[nodiscard]] std::string kind_name() const;
    /// Parameter list without the kind, ';'-separated ("p=0.3;r=5"), empty for uniform.
    [[nodiscard]] std::string params_string() const;

    /// Throws InvalidSpec when a parameter is out of range.
    void validate() const;
};

/// The sixteen distributions of the benchmark grid, in table order.
std::vector<DistributionSpec> benchmark_distributions();

/// Renormalized PMF; entry i is the probability of color i+1.
std::vector<double> color_pmf(const DistributionSpec& spec, std::size_t sigma);

/// n independent draws from `spec` over colors 1..sigma, one uniform variate per
/// item through an inverse-CDF table. Fully determined by (spec, n, sigma, seed).
ColorSequence sample_sequence(const DistributionSpec& spec, std::size_t n, std::size_t sigma, std::uint64_t seed);

std::uint64_t splitmix64(std::uint64_t x);
/// Order-sensitive seed derivation.
std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts);
std::uint64_t fnv1a(std::string_view text);

struct DatasetGrid {
    std::vector<std::size_t> input_sizes{1000, 5000, 10000};
    std::vector<double> color_fractions{0.01, 0.02, 0.05};
    std::vector<double> buffer_fractions{0.01, 0.02, 0.05};
    std::vector<DistributionSpec> distributions = benchmark_distributions();
    std::size_t trials = 50;
    std::uint64_t base_seed = 20220601;
};

/// One grid point. Sequences depend on (distribution, n, sigma, trial) only,
/// so every buffer size and strategy sees the same inputs.
struct ExperimentCell {
    std::size_t index = 0;
    DistributionSpec distribution;
    std::size_t n = 0;
    std::size_t sigma = 0;
    std::size_t k = 0;
    std::uint64_t dataset_seed = 0;

    [[nodiscard]] std::uint64_t trial_seed(std::size_t trial) const { return mix_seed({dataset_seed, trial}); }
};

std::size_t fraction_of(std::size_t n, double fraction);

/// Cartesian product in the order distribution, n, sigma, k.
std::vector<ExperimentCell> grid_expand(const DatasetGrid& grid);

struct SequenceFileHeader {
    std::size_t n = 0;
    std::size_t sigma = 0;
    std::string spec;
    std::uint64_t seed = 0;
};

/// One color per line, after a `# n=<n> sigma=<sigma> spec=<string> seed=<seed>` header.
std::string format_sequence_file(const ColorSequence& seq, const SequenceFileHeader& header);
void write_sequence_file(const std::filesystem::path& path, const ColorSequence& seq, const SequenceFileHeader& header);

/// Reads a sequence file; lines starting with '#' and blank lines are ignored.
ColorSequence parse_sequence(std::string_view text);
ColorSequence read_sequence_file(const std::filesystem::path& path);

} // namespace rebuf
