#pragma once

#include <rebuf/engine.hpp>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>

namespace rebuf {

enum class StrategyKind { MCF, BoundedWaste, RandomChoice, Picky };

/// CLI names: "mcf", "bw", "rc", "picky".
std::string_view strategy_name(StrategyKind kind);
StrategyKind parse_strategy(std::string_view name);
bool is_randomized(StrategyKind kind);

/// Most frequent buffered color. Ties go to the color whose oldest item has
/// been buffered longest.
ColorId most_frequent_color(const StrategyView& view);

/// Least frequent buffered color. Ties go to the smallest ColorId.
ColorId least_frequent_color(const StrategyView& view);

/// Most Common First.
StrategyDecision mcf_select(const StrategyView& view);

struct BwState {
    std::map<ColorId, std::uint64_t> penalties;
};

/// Bounded Waste: every buffered color accrues its current count as penalty;
/// the color with the largest penalty is selected and its penalty cleared.
/// Ties: larger current count, then smaller ColorId.
StrategyDecision bw_select(const StrategyView& view, BwState& state);

/// Random Choice: the color of a uniformly drawn buffered item, so each
/// color is chosen with probability proportional to its buffered count.
StrategyDecision rc_select(const StrategyView& view, std::mt19937_64& rng);

struct PickyState {
    std::size_t exit_counter = 0;
};

/// Picky: select the most frequent color while o1' < 2*ceil(k/sigma'),
/// otherwise push one item of the least frequent color back to the input
/// tail, bounded per round by the exit counter.
StrategyDecision picky_decide(const StrategyView& view, PickyState& state);

class MostCommonFirst final : public Strategy {
public:
    StrategyDecision decide(const StrategyView& view) override { return mcf_select(view); }
    [[nodiscard]] std::string_view name() const noexcept override { return "mcf"; }
};

class BoundedWaste final : public Strategy {
public:
    StrategyDecision decide(const StrategyView& view) override { return bw_select(view, state_); }
    [[nodiscard]] std::string_view name() const noexcept override { return "bw"; }
    [[nodiscard]] const BwState& state() const noexcept { return state_; }

private:
    BwState state_;
};

class RandomChoice final : public Strategy {
public:
    explicit RandomChoice(std::uint64_t seed) : rng_(seed) {}
    StrategyDecision decide(const StrategyView& view) override { return rc_select(view, rng_); }
    [[nodiscard]] std::string_view name() const noexcept override { return "rc"; }

private:
    std::mt19937_64 rng_;
};

class Picky final : public Strategy {
public:
    StrategyDecision decide(const StrategyView& view) override { return picky_decide(view, state_); }

    // Any emission starts a new picking round.
    void on_emit(ColorId, std::size_t) override { state_.exit_counter = 0; }

    [[nodiscard]] bool skip_capable() const noexcept override { return true; }
    [[nodiscard]] std::string_view name() const noexcept override { return "picky"; }
    [[nodiscard]] const PickyState& state() const noexcept { return state_; }

private:
    PickyState state_;
};

/// Builds a fresh strategy. `seed` is required for RandomChoice and ignored otherwise.
std::unique_ptr<Strategy> make_strategy(StrategyKind kind, std::optional<std::uint64_t> seed = std::nullopt);

/// simulate() with a freshly constructed strategy.
SimulationResult simulate(const ColorSequence& input, std::size_t k, StrategyKind kind,
                          std::optional<std::uint64_t> seed = std::nullopt, const SimulationOptions& options = {});

} // namespace rebuf
