#include <rebuf/metrics.hpp>

#include <limits>

namespace rebuf {

std::uint64_t count_switches(const ColorSequence& seq) {
    std::uint64_t switches = 0;
    for (std::size_t i = 1; i < seq.size(); ++i) {
        if (seq[i] != seq[i - 1]) {
            ++switches;
        }
    }
    return switches;
}

std::uint64_t count_blocks(const ColorSequence& seq) { return seq.empty() ? 0 : count_switches(seq) + 1; }

double switch_ratio(const ColorSequence& input, const ColorSequence& output) {
    const std::uint64_t in = count_switches(input);
    if (in == 0) {
        throw Error(ErrorKind::DegenerateInput, "input sequence has no color switches");
    }
    return static_cast<double>(count_switches(output)) / static_cast<double>(in);
}

double excess_run(std::uint64_t skipped, std::uint64_t n) {
    if (n == 0) {
        throw Error(ErrorKind::DegenerateInput, "excess run undefined for an empty input");
    }
    return static_cast<double>(skipped) / static_cast<double>(n);
}

CellMetrics aggregate(const std::vector<TrialResult>& rows) {
    if (rows.empty()) {
        throw Error(ErrorKind::EmptyAggregate, "no trials to aggregate");
    }
    CellMetrics m;
    m.per_trial = rows;
    double ratio_sum = 0.0;
    double excess_sum = 0.0;
    for (const auto& r : rows) {
        if (r.degenerate()) {
            ++m.degenerate;
            continue;
        }
        ratio_sum += static_cast<double>(r.switches_out) / static_cast<double>(r.switches_in);
        excess_sum += static_cast<double>(r.skipped) / static_cast<double>(r.n);
        ++m.trials;
    }
    if (m.trials == 0) {
        m.mean_switch_ratio = std::numeric_limits<double>::quiet_NaN();
        m.mean_excess_run = std::numeric_limits<double>::quiet_NaN();
    } else {
        m.mean_switch_ratio = ratio_sum / static_cast<double>(m.trials);
        m.mean_excess_run = excess_sum / static_cast<double>(m.trials);
    }
    return m;
}

std::vector<std::size_t> best_indices(const std::vector<double>& values) {
    std::vector<std::size_t> best;
    double lowest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] < lowest) {
            lowest = values[i];
            best.assign(1, i);
        } else if (values[i] == lowest) {
            best.push_back(i);
        }
    }
    return best;
}

} // namespace rebuf
