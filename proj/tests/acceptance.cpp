// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "support/fixtures.hpp"
#include "support/properties.hpp"

#include <rebuf/experiment.hpp>
#include <rebuf/lemma.hpp>
#include <rebuf/metrics.hpp>
#include <rebuf/oracle.hpp>
#include <rebuf/strategies.hpp>

#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace rebuf;
using namespace rebuf::testing;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
};

std::string fmt(double v, int digits = 3) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

bool within(double value, double target, double tol) { return std::abs(value - target) <= tol; }

bool no_split_among_full_selections(const SimulationResult& r) {
    std::set<ColorId> seen;
    for (const auto& s : r.full_buffer_selections) {
        if (s.buffer_was_full && !seen.insert(s.color).second) return false;
    }
    return true;
}

Outcome walkthrough() {
    const auto r = simulate(kWalkthrough, 5, StrategyKind::MCF);
    const auto in = count_switches(kWalkthrough);
    const auto out = count_switches(r.output);
    const bool pass = r.output == kWalkthroughOutput && in == 6 && out == 2 && out * 3 == in;
    return {pass, "output " + join_colors(r.output) + ", switches " + std::to_string(in) + " -> " +
                      std::to_string(out) + ", ratio " + fmt(switch_ratio(kWalkthrough, r.output), 6)};
}

Outcome three_colors() {
    const auto r = simulate(kThreeColors, 10, StrategyKind::MCF);
    const bool pass = r.output == kThreeColorsOutput && count_blocks(r.output) == 4 && no_split_among_full_selections(r);
    return {pass, "blocks " + std::to_string(count_blocks(r.output)) + ", no split among full-buffer selections: " +
                      (no_split_among_full_selections(r) ? "yes" : "no")};
}

Outcome four_colors() {
    const auto picky = simulate(kFourColors, 9, StrategyKind::Picky);
    const auto mcf = simulate(kFourColors, 9, StrategyKind::MCF);
    const auto bp = count_blocks(picky.output);
    const auto bm = count_blocks(mcf.output);
    const bool pass = picky.output == kFourColorsPicky && mcf.output == kFourColorsMcf && bp < bm;
    return {pass, "picky output " + join_colors(picky.output) + " (" + std::to_string(bp) + " blocks), mcf output " +
                      join_colors(mcf.output) + " (" + std::to_string(bm) + " blocks); the stated 6 and 8 block "
                      "counts do not match these sequences, which have 5 and 6"};
}

Outcome kmin() {
    const auto a = k_min(7, 6, 3);
    const auto b = k_min(8, 7, 4);
    std::size_t mismatches = 0;
    std::size_t checked = 0;
    for (std::uint64_t sigma = 1; sigma <= 16; ++sigma) {
        for (std::uint64_t o1 = 0; o1 <= 64; ++o1) {
            for (std::uint64_t o2 = 0; o2 <= o1; ++o2) {
                std::uint64_t expected = 0;
                for (std::uint64_t k = 1; k <= sigma * o2 + 1; ++k) {
                    const std::uint64_t per = (k + sigma - 1) / sigma;
                    if (!(2 * per <= o1 && per <= o2)) {
                        expected = k;
                        break;
                    }
                }
                ++checked;
                if (k_min(o1, o2, sigma).value != expected) ++mismatches;
            }
        }
    }
    const bool pass = a.value == 10 && b.value == 17 && a.by_o2 == 19 && b.by_o2 == 29 && mismatches == 0;
    return {pass, "(7,6,3) -> " + std::to_string(a.value) + " [branch " + std::to_string(a.by_o2) + "], (8,7,4) -> " +
                      std::to_string(b.value) + " [branch " + std::to_string(b.by_o2) + "], scan mismatches " +
                      std::to_string(mismatches) + "/" + std::to_string(checked)};
}

Outcome from_report(const PropertyReport& rep, const std::string& extra = "") {
    std::string detail = std::to_string(rep.instances) + " runs, " + std::to_string(rep.failures) + " violations";
    if (!rep.first_failure.empty()) detail += " (first: " + rep.first_failure + ")";
    return {rep.ok() && rep.instances >= 1000, detail + extra};
}

Outcome engine_properties() { return from_report(check_engine_properties(20220601, 1000)); }

Outcome lemma_no_split() { return from_report(check_lemma_no_split(20220602, 2000)); }

Outcome oracle_sandwich() {
    const auto rep = check_oracle_sandwich(20220603, 1000);
    return from_report(rep, "; upper bound checked for mcf/bw/rc, picky below the window optimum in " +
                                std::to_string(rep.skip_relaxation_wins) + " runs (tail skips exceed the window)");
}

Outcome generator_fidelity() {
    double worst = 1.0;
    std::string worst_spec;
    bool in_range = true;
    for (const auto& spec : benchmark_distributions()) {
        const auto fit = chi_square_fit(spec, 8, 1000000, mix_seed({20220604, fnv1a(spec.to_string())}));
        in_range = in_range && fit.in_range;
        if (fit.p_value < worst) {
            worst = fit.p_value;
            worst_spec = spec.to_string();
        }
    }
    bool reproducible = true;
    for (const auto& spec : benchmark_distributions()) {
        reproducible = reproducible && sample_sequence(spec, 10000, 8, 11) == sample_sequence(spec, 10000, 8, 11);
    }
    return {worst > 0.001 && in_range && reproducible,
            "16 specs, sigma=8, n=1e6; smallest p-value " + fmt(worst, 4) + " (" + worst_spec + "); in range: " +
                (in_range ? "yes" : "no") + "; reproducible: " + (reproducible ? "yes" : "no")};
}

// The n = 1000 block of the default grid, shared by criteria 9-12.
const ExperimentReport& desk_report() {
    static const ExperimentReport report = [] {
        RunConfig cfg;
        cfg.grid.input_sizes = {1000};
        return run_experiment(cfg);
    }();
    return report;
}

const ResultRow& row(const std::string& spec, std::size_t sigma, std::size_t k, StrategyKind s) {
    for (const auto& r : desk_report().rows) {
        if (r.spec == spec && r.sigma == sigma && r.k == k && r.strategy == s) return r;
    }
    throw std::runtime_error("missing row " + spec);
}

Outcome uniform_k10() {
    const auto& picky = row("uniform", 10, 10, StrategyKind::Picky);
    const auto& bw = row("uniform", 10, 10, StrategyKind::BoundedWaste);
    const bool pass = within(picky.mean_switch_ratio, 0.376, 0.05) && within(picky.mean_excess_run, 0.07, 0.05) &&
                      picky.mean_switch_ratio < bw.mean_switch_ratio;
    return {pass, "picky ratio " + fmt(picky.mean_switch_ratio) + " (0.376 +/- 0.05), excess " +
                      fmt(picky.mean_excess_run) + " (0.07 +/- 0.05), bw ratio " + fmt(bw.mean_switch_ratio)};
}

Outcome uniform_k50() {
    const auto& picky = row("uniform", 10, 50, StrategyKind::Picky);
    const auto& bw = row("uniform", 10, 50, StrategyKind::BoundedWaste);
    const auto& rc = row("uniform", 10, 50, StrategyKind::RandomChoice);
    const bool pass = within(picky.mean_switch_ratio, 0.093, 0.04) && within(bw.mean_switch_ratio, 0.100, 0.05) &&
                      within(rc.mean_switch_ratio, 0.118, 0.05);
    return {pass, "picky " + fmt(picky.mean_switch_ratio) + " (0.093 +/- 0.04), bw " + fmt(bw.mean_switch_ratio) +
                      " (0.100 +/- 0.05), rc " + fmt(rc.mean_switch_ratio) + " (0.118 +/- 0.05)"};
}

Outcome geometric07() {
    const auto& strategies = desk_report().strategies;
    std::size_t cells = 0;
    std::size_t picky_best = 0;
    double worst = 0.0;
    const auto& rows = desk_report().rows;
    for (std::size_t i = 0; i < rows.size(); i += strategies.size()) {
        if (rows[i].spec != "geometric:p=0.7") continue;
        ++cells;
        std::vector<double> ratios;
        for (std::size_t s = 0; s < strategies.size(); ++s) {
            ratios.push_back(rows[i + s].mean_switch_ratio);
            worst = std::max(worst, rows[i + s].mean_switch_ratio);
        }
        const auto best = best_indices(ratios);
        for (auto b : best) {
            if (strategies[b] == StrategyKind::Picky) ++picky_best;
        }
    }
    return {cells == 9 && worst < 0.20 && picky_best >= 7,
            std::to_string(cells) + " cells, largest mean ratio " + fmt(worst) + " (< 0.20), picky best in " +
                std::to_string(picky_best) + "/9 (>= 7)"};
}

Outcome dominance() {
    const auto& rep = desk_report();
    std::size_t picky_index = 0;
    for (std::size_t s = 0; s < rep.strategies.size(); ++s) {
        if (rep.strategies[s] == StrategyKind::Picky) picky_index = s;
    }
    const auto wins = rep.total_best_cases[picky_index];
    const double share = static_cast<double>(wins) / static_cast<double>(rep.total_cells);
    return {rep.total_cells == 144 && share >= 0.80,
            "picky best in " + std::to_string(wins) + "/" + std::to_string(rep.total_cells) + " cells (" +
                fmt(100.0 * share, 1) + "%, >= 80%)"};
}

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "walkthrough trace", walkthrough},
        {2, "three-color trace", three_colors},
        {3, "four-color traces", four_colors},
        {4, "k_min closed form", kmin},
        {5, "engine properties", engine_properties},
        {6, "lemma no-split", lemma_no_split},
        {7, "oracle sandwich", oracle_sandwich},
        {8, "generator fidelity", generator_fidelity},
        {9, "uniform n=1000 sigma=10 k=10", uniform_k10},
        {10, "uniform n=1000 sigma=10 k=50", uniform_k50},
        {11, "geometric p=0.7 n=1000", geometric07},
        {12, "dominance over n=1000 grid", dominance},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
