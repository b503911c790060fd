#include "properties.hpp"

#include "random.hpp"

#include <rebuf/lemma.hpp>
#include <rebuf/metrics.hpp>
#include <rebuf/oracle.hpp>

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

namespace rebuf::testing {

namespace {

std::string describe(const ColorSequence& input, std::size_t k, std::string_view strategy) {
    std::ostringstream os;
    os << strategy << " k=" << k << " input=" << join_colors(input);
    return os.str();
}

std::map<ColorId, std::size_t> histogram(const ColorSequence& seq) {
    std::map<ColorId, std::size_t> h;
    for (auto c : seq) ++h[c];
    return h;
}

} // namespace

std::uint64_t brute_force_optimal_blocks(const ColorSequence& input, std::size_t k) {
    const std::size_t n = input.size();
    if (n == 0) return 0;
    // memo[(served mask, last served position + 1)]
    std::unordered_map<std::uint64_t, std::uint64_t> memo;
    auto rec = [&](auto&& self, std::uint32_t served, std::size_t last) -> std::uint64_t {
        if (served == (1U << n) - 1) return 0;
        const std::uint64_t key = (static_cast<std::uint64_t>(served) << 8) | last;
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
        std::size_t window = 0;
        for (std::size_t i = 0; i < n && window < k; ++i) {
            if (served & (1U << i)) continue;
            ++window;
            const bool same = last > 0 && input[last - 1] == input[i];
            best = std::min(best, (same ? 0 : 1) + self(self, served | (1U << i), i + 1));
        }
        memo.emplace(key, best);
        return best;
    };
    return rec(rec, 0, 0);
}

bool window_constraint_holds(const SimulationResult& result, std::size_t k) {
    for (std::size_t i = 0; i < result.origin.size(); ++i) {
        if (result.origin[i] >= i + k) return false;
    }
    return true;
}

std::vector<std::string> engine_violations(const ColorSequence& input, std::size_t k, StrategyKind kind,
                                           const SimulationResult& result) {
    std::vector<std::string> out;
    if (histogram(input) != histogram(result.output)) out.emplace_back("multiset not conserved");
    if (kind != StrategyKind::Picky && !window_constraint_holds(result, k)) out.emplace_back("window constraint");
    if (kind != StrategyKind::Picky && result.skipped_count != 0) out.emplace_back("skip by non-skip strategy");

    std::optional<ColorId> current;
    std::vector<ColorId> buffer_before;
    bool exhausted = false;
    std::size_t skips = 0;
    std::size_t round_skips = 0;
    for (const auto& ev : result.trace) {
        const bool decision = ev.kind == TraceKind::Select || ev.kind == TraceKind::Drain || ev.kind == TraceKind::Skip;
        if (decision && ev.buffer_occupancy < k && ev.input_remaining > 0) {
            out.emplace_back("decision with free space and pending input");
        }
        if ((ev.kind == TraceKind::Select || ev.kind == TraceKind::Drain) && current &&
            std::find(buffer_before.begin(), buffer_before.end(), *current) != buffer_before.end()) {
            out.emplace_back("switched away from a buffered current color");
        }
        if (ev.kind == TraceKind::Skip) {
            if (exhausted) out.emplace_back("skip after input exhaustion");
            if (round_skips >= ev.input_remaining) out.emplace_back("skip guard exceeded");
            ++round_skips;
            ++skips;
        }
        if (ev.kind == TraceKind::Select || ev.kind == TraceKind::Drain || ev.kind == TraceKind::ForwardCurrentColor) {
            current = ev.color;
            round_skips = 0;
        }
        if (ev.kind == TraceKind::Select && ev.buffer_occupancy != k && ev.input_remaining > 0) {
            out.emplace_back("selection from a non-full buffer with input pending");
        }
        if (ev.input_after.empty()) exhausted = true;
        buffer_before = ev.buffer_after;
    }
    if (skips != result.skipped_count) out.emplace_back("skip count disagrees with trace");
    return out;
}

PropertyReport check_engine_properties(std::uint64_t seed, std::size_t instances) {
    PropertyReport rep;
    InstanceGen gen(seed);
    SimulationOptions opts;
    opts.check_invariants = true;
    for (std::size_t i = 0; i < instances; ++i) {
        const std::size_t n = gen.between(0, 50);
        const std::size_t sigma = gen.between(1, 8);
        const std::size_t k = gen.between(1, 20);
        const ColorSequence input = gen.sequence(n, sigma);
        for (auto kind : {StrategyKind::MCF, StrategyKind::BoundedWaste, StrategyKind::RandomChoice, StrategyKind::Picky}) {
            ++rep.instances;
            try {
                const auto result = simulate(input, k, kind, gen.next(), opts);
                for (const auto& v : engine_violations(input, k, kind, result)) {
                    rep.fail(v + ": " + describe(input, k, strategy_name(kind)));
                }
            } catch (const std::exception& e) {
                rep.fail(std::string(e.what()) + ": " + describe(input, k, strategy_name(kind)));
            }
        }
    }
    return rep;
}

PropertyReport check_lemma_no_split(std::uint64_t seed, std::size_t instances) {
    PropertyReport rep;
    InstanceGen gen(seed);
    for (std::size_t i = 0; i < instances; ++i) {
        const ColorSequence input = gen.sequence(gen.between(1, 60), gen.between(1, 5));
        const SequenceProfile prof = profile(input);
        const std::size_t k = k_min(prof).value;
        const auto result = simulate(input, k, StrategyKind::MCF);
        ++rep.instances;

        std::set<ColorId> selected;
        for (const auto& s : result.full_buffer_selections) {
            if (s.buffer_was_full && !selected.insert(s.color).second) {
                rep.fail("split color " + std::to_string(s.color.value) + ": " + describe(input, k, "mcf"));
                break;
            }
        }

        // Items leaving through full-buffer selections and the forwards that extend them.
        ColorSequence full_part;
        bool extending = false;
        for (const auto& ev : result.trace) {
            if (ev.kind == TraceKind::Select && ev.buffer_occupancy == k) {
                extending = true;
            } else if (ev.kind != TraceKind::ForwardCurrentColor && ev.kind != TraceKind::Fill) {
                extending = false;
            }
            if (extending && ev.kind != TraceKind::Fill) {
                full_part.insert(full_part.end(), ev.items, *ev.color);
            }
        }
        if (count_blocks(full_part) > prof.sigma) {
            rep.fail("full-buffer part has more than sigma blocks: " + describe(input, k, "mcf"));
        }
    }
    return rep;
}

PropertyReport check_oracle_sandwich(std::uint64_t seed, std::size_t instances) {
    PropertyReport rep;
    InstanceGen gen(seed);
    for (std::size_t i = 0; i < instances; ++i) {
        const ColorSequence input = gen.sequence(gen.between(1, 14), gen.between(1, 4));
        const std::uint64_t sigma = blocks_lower_bound(input);
        ++rep.instances;
        std::uint64_t previous = std::numeric_limits<std::uint64_t>::max();
        for (std::size_t k = 1; k <= 8; ++k) {
            const std::uint64_t best = optimal_blocks(input, k);
            if (best < sigma) rep.fail("optimal below sigma: " + describe(input, k, "oracle"));
            if (best > previous) rep.fail("optimal not monotone in k: " + describe(input, k, "oracle"));
            previous = best;
            for (auto kind : {StrategyKind::MCF, StrategyKind::BoundedWaste, StrategyKind::RandomChoice,
                              StrategyKind::Picky}) {
                const auto out = simulate(input, k, kind, gen.next()).output;
                if (kind == StrategyKind::Picky) {
                    if (count_blocks(out) < best) ++rep.skip_relaxation_wins;
                    continue;
                }
                if (count_blocks(out) < best) rep.fail("strategy beat the oracle: " + describe(input, k, strategy_name(kind)));
            }
        }
        if (optimal_blocks(input, input.size()) != sigma) {
            rep.fail("optimal(n) != sigma: " + describe(input, input.size(), "oracle"));
        }
    }
    return rep;
}

double chi_square_p_value(double statistic, double degrees_of_freedom) {
    return boost::math::gamma_q(degrees_of_freedom / 2.0, statistic / 2.0);
}

FitResult chi_square_fit(const DistributionSpec& spec, std::size_t sigma, std::size_t draws, std::uint64_t seed) {
    const auto pmf = color_pmf(spec, sigma);
    const auto seq = sample_sequence(spec, draws, sigma, seed);
    std::vector<double> observed(sigma, 0.0);
    FitResult fit;
    for (auto c : seq) {
        if (c.value < 1 || c.value > sigma) {
            fit.in_range = false;
            continue;
        }
        observed[c.value - 1] += 1.0;
    }
    // Pool adjacent low-expectation bins.
    std::vector<double> obs_bins, exp_bins;
    double o = 0.0, e = 0.0;
    for (std::size_t i = 0; i < sigma; ++i) {
        o += observed[i];
        e += pmf[i] * static_cast<double>(draws);
        if (e >= 5.0) {
            obs_bins.push_back(o);
            exp_bins.push_back(e);
            o = e = 0.0;
        }
    }
    if (e > 0.0 || o > 0.0) {
        if (exp_bins.empty()) {
            obs_bins.push_back(o);
            exp_bins.push_back(e);
        } else {
            obs_bins.back() += o;
            exp_bins.back() += e;
        }
    }
    for (std::size_t i = 0; i < obs_bins.size(); ++i) {
        const double d = obs_bins[i] - exp_bins[i];
        fit.statistic += d * d / exp_bins[i];
    }
    fit.dof = static_cast<double>(obs_bins.size()) - 1.0;
    fit.p_value = fit.dof > 0 ? chi_square_p_value(fit.statistic, fit.dof) : 1.0;
    return fit;
}

} // namespace rebuf::testing
