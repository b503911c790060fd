#pragma once

#include <rebuf/types.hpp>

#include <cstddef>
#include <cstdint>
#include <vector>

namespace rebuf {

/// Adjacent pairs with different colors.
std::uint64_t count_switches(const ColorSequence& seq);

/// Maximal runs of one color; switches + 1 for nonempty sequences.
std::uint64_t count_blocks(const ColorSequence& seq);

/// switches(output) / switches(input). Throws DegenerateInput when the input
/// has no switches.
double switch_ratio(const ColorSequence& input, const ColorSequence& output);

/// skipped / n. Throws DegenerateInput for n == 0.
double excess_run(std::uint64_t skipped, std::uint64_t n);

struct TrialResult {
    std::uint64_t switches_in = 0;
    std::uint64_t switches_out = 0;
    std::uint64_t skipped = 0;
    std::uint64_t n = 0;

    [[nodiscard]] bool degenerate() const noexcept { return switches_in == 0 || n == 0; }
};

struct CellMetrics {
    double mean_switch_ratio = 0.0;
    double mean_excess_run = 0.0;
    std::size_t trials = 0;     // trials included in the means
    std::size_t degenerate = 0; // trials excluded because the ratio is undefined
    std::vector<TrialResult> per_trial;
};

/// Arithmetic means over the non-degenerate trials. Throws EmptyAggregate on
/// an empty list; if every trial is degenerate both means are NaN.
CellMetrics aggregate(const std::vector<TrialResult>& rows);

/// Indices of the entries with the smallest value; all tied minima win.
std::vector<std::size_t> best_indices(const std::vector<double>& values);

} // namespace rebuf
