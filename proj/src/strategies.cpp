#include <rebuf/strategies.hpp>

#include <limits>

namespace rebuf {

std::string_view strategy_name(StrategyKind kind) {
    switch (kind) {
    case StrategyKind::MCF: return "mcf";
    case StrategyKind::BoundedWaste: return "bw";
    case StrategyKind::RandomChoice: return "rc";
    case StrategyKind::Picky: return "picky";
    }
    return "?";
}

StrategyKind parse_strategy(std::string_view name) {
    if (name == "mcf") return StrategyKind::MCF;
    if (name == "bw") return StrategyKind::BoundedWaste;
    if (name == "rc") return StrategyKind::RandomChoice;
    if (name == "picky") return StrategyKind::Picky;
    throw Error(ErrorKind::Parse, "unknown strategy '" + std::string(name) + "' (expected mcf, bw, rc or picky)");
}

bool is_randomized(StrategyKind kind) { return kind == StrategyKind::RandomChoice; }

namespace {

void require_nonempty(const StrategyView& view) {
    if (view.empty()) {
        throw Error(ErrorKind::EmptyBuffer, "strategy consulted with an empty buffer");
    }
}

// Unbiased draw from [0, bound) without relying on library distributions,
// whose output differs across standard library implementations.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x = 0;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

} // namespace

ColorId most_frequent_color(const StrategyView& view) {
    require_nonempty(view);
    ColorId best;
    std::size_t best_count = 0;
    std::uint64_t best_arrival = 0;
    view.for_each_color([&](ColorId c, std::size_t n, std::uint64_t oldest) {
        if (n > best_count || (n == best_count && oldest < best_arrival)) {
            best = c;
            best_count = n;
            best_arrival = oldest;
        }
    });
    return best;
}

ColorId least_frequent_color(const StrategyView& view) {
    require_nonempty(view);
    ColorId best;
    std::size_t best_count = std::numeric_limits<std::size_t>::max();
    view.for_each_color([&](ColorId c, std::size_t n, std::uint64_t) {
        if (n < best_count) {
            best = c;
            best_count = n;
        }
    });
    return best;
}

StrategyDecision mcf_select(const StrategyView& view) { return StrategyDecision::select(most_frequent_color(view)); }

StrategyDecision bw_select(const StrategyView& view, BwState& state) {
    require_nonempty(view);
    ColorId best;
    std::uint64_t best_penalty = 0;
    std::size_t best_count = 0;
    bool first = true;
    view.for_each_color([&](ColorId c, std::size_t n, std::uint64_t) {
        const std::uint64_t penalty = (state.penalties[c] += n);
        if (first || penalty > best_penalty || (penalty == best_penalty && n > best_count)) {
            best = c;
            best_penalty = penalty;
            best_count = n;
            first = false;
        }
    });
    state.penalties[best] = 0;
    return StrategyDecision::select(best);
}

StrategyDecision rc_select(const StrategyView& view, std::mt19937_64& rng) {
    require_nonempty(view);
    // Color of a uniformly drawn buffered item.
    std::uint64_t target = draw_below(rng, view.occupancy());
    std::optional<ColorId> chosen;
    view.for_each_color([&](ColorId c, std::size_t n, std::uint64_t) {
        if (chosen) return;
        if (target < n) {
            chosen = c;
        } else {
            target -= n;
        }
    });
    return StrategyDecision::select(*chosen);
}

StrategyDecision picky_decide(const StrategyView& view, PickyState& state) {
    require_nonempty(view);
    const std::uint64_t sigma = view.distinct_colors();
    const ColorId top = most_frequent_color(view);
    const std::uint64_t o1 = view.count(top);
    const bool over = o1 >= 2 * ceil_div(view.capacity(), sigma);
    if (over && !view.input_exhausted() && state.exit_counter < view.input_remaining()) {
        ++state.exit_counter;
        return StrategyDecision::skip(least_frequent_color(view));
    }
    return StrategyDecision::select(top);
}

std::unique_ptr<Strategy> make_strategy(StrategyKind kind, std::optional<std::uint64_t> seed) {
    switch (kind) {
    case StrategyKind::MCF: return std::make_unique<MostCommonFirst>();
    case StrategyKind::BoundedWaste: return std::make_unique<BoundedWaste>();
    case StrategyKind::RandomChoice:
        if (!seed) {
            throw Error(ErrorKind::MissingSeed, "rc is randomized and needs a seed");
        }
        return std::make_unique<RandomChoice>(*seed);
    case StrategyKind::Picky: return std::make_unique<Picky>();
    }
    throw Error(ErrorKind::Parse, "unknown strategy kind");
}

SimulationResult simulate(const ColorSequence& input, std::size_t k, StrategyKind kind,
                          std::optional<std::uint64_t> seed, const SimulationOptions& options) {
    if (k == 0) {
        throw Error(ErrorKind::InvalidCapacity, "buffer capacity must be at least 1");
    }
    auto strategy = make_strategy(kind, seed);
    return simulate(input, k, *strategy, options);
}

} // namespace rebuf
