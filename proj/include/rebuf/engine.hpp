#pragma once

#include <rebuf/types.hpp>

#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rebuf {

/// One buffered item. `arrival` is the buffer insertion stamp (strictly
/// increasing across the run); `origin` is the item's position in the
/// original input sequence.
struct Slot {
    ColorId color;
    std::uint64_t arrival = 0;
    std::size_t origin = 0;
};

/// Size-k reordering buffer. Items are grouped per color, each group kept
/// in arrival order, so per-color counts are always the group sizes.
class BufferState {
public:
    explicit BufferState(std::size_t capacity);

    [[nodiscard]] std::size_t capacity() const noexcept { return capacity_; }
    [[nodiscard]] std::size_t occupancy() const noexcept { return size_; }
    [[nodiscard]] bool empty() const noexcept { return size_ == 0; }
    [[nodiscard]] bool full() const noexcept { return size_ == capacity_; }
    [[nodiscard]] std::size_t distinct_colors() const noexcept { return groups_.size(); }
    [[nodiscard]] std::size_t count(ColorId color) const;
    [[nodiscard]] bool contains(ColorId color) const { return count(color) > 0; }

    /// Arrival stamp of the oldest buffered item of `color`.
    [[nodiscard]] std::uint64_t oldest_arrival(ColorId color) const;

    /// All items, oldest first.
    [[nodiscard]] std::vector<Slot> slots() const;
    [[nodiscard]] std::vector<ColorId> contents() const;

    [[nodiscard]] const std::map<ColorId, std::deque<Slot>>& groups() const noexcept { return groups_; }

    /// Inserts an item; throws if the buffer is full.
    void insert(ColorId color, std::size_t origin);

    /// Removes every item of `color`, oldest first.
    std::vector<Slot> take_all(ColorId color);

    /// Removes the most recently arrived item of `color`.
    Slot take_latest(ColorId color);

    /// Throws std::logic_error if the occupancy or ordering invariants are broken.
    void check_invariants() const;

private:
    std::size_t capacity_;
    std::size_t size_ = 0;
    std::uint64_t next_arrival_ = 0;
    std::map<ColorId, std::deque<Slot>> groups_;
};

/// Read-only snapshot handed to strategies.
class StrategyView {
public:
    StrategyView(const BufferState& buffer, std::size_t input_remaining) noexcept
        : buffer_(&buffer), input_remaining_(input_remaining) {}

    [[nodiscard]] std::size_t capacity() const noexcept { return buffer_->capacity(); }
    [[nodiscard]] std::size_t occupancy() const noexcept { return buffer_->occupancy(); }
    [[nodiscard]] std::size_t distinct_colors() const noexcept { return buffer_->distinct_colors(); }
    [[nodiscard]] std::size_t count(ColorId color) const { return buffer_->count(color); }
    [[nodiscard]] std::size_t input_remaining() const noexcept { return input_remaining_; }
    [[nodiscard]] bool input_exhausted() const noexcept { return input_remaining_ == 0; }
    [[nodiscard]] bool empty() const noexcept { return buffer_->empty(); }
    [[nodiscard]] std::vector<Slot> arrival_order() const { return buffer_->slots(); }

    /// Calls f(color, count, oldest_arrival) for each buffered color in
    /// ascending ColorId order.
    template <class F>
    void for_each_color(F&& f) const {
        for (const auto& [color, items] : buffer_->groups()) {
            f(color, items.size(), items.front().arrival);
        }
    }

private:
    const BufferState* buffer_;
    std::size_t input_remaining_;
};

StrategyView buffer_view(const BufferState& state, std::size_t input_remaining) noexcept;

struct StrategyDecision {
    enum class Kind { SelectColor, SkipOne };

    Kind kind = Kind::SelectColor;
    ColorId color;

    static StrategyDecision select(ColorId c) { return {Kind::SelectColor, c}; }
    static StrategyDecision skip(ColorId c) { return {Kind::SkipOne, c}; }

    friend bool operator==(const StrategyDecision&, const StrategyDecision&) = default;
};

/// Color-selection policy driven by `simulate`.
class Strategy {
public:
    virtual ~Strategy() = default;

    virtual StrategyDecision decide(const StrategyView& view) = 0;

    /// Called whenever `count` items of `color` leave the buffer for the output,
    /// both on a selection and on a lazy forward of the current color.
    virtual void on_emit(ColorId /*color*/, std::size_t /*count*/) {}

    [[nodiscard]] virtual bool skip_capable() const noexcept { return false; }
    [[nodiscard]] virtual std::string_view name() const noexcept = 0;
};

enum class TraceKind { Fill, ForwardCurrentColor, Select, Skip, Drain };

const char* to_string(TraceKind kind);

struct TraceEvent {
    TraceKind kind = TraceKind::Fill;
    std::optional<ColorId> color;
    std::size_t items = 0;            // items moved by this event
    std::size_t input_remaining = 0;  // before the event
    std::size_t buffer_occupancy = 0; // before the event
    // State after the event.
    std::vector<ColorId> input_after;
    std::vector<ColorId> buffer_after;
    std::size_t output_length_after = 0;
};

struct FullBufferSelection {
    ColorId color;
    bool buffer_was_full = false;

    friend bool operator==(const FullBufferSelection&, const FullBufferSelection&) = default;
};

struct SimulationResult {
    ColorSequence output;
    std::vector<std::size_t> origin; // input position of each output item
    std::size_t skipped_count = 0;
    std::vector<TraceEvent> trace;
    std::vector<FullBufferSelection> full_buffer_selections;
};

struct SimulationOptions {
    bool record_trace = true;
    bool check_invariants = false;
};

/// Runs `strategy` over `input` with a buffer of `k` items under the lazy
/// contract: fill, forward the current color, otherwise consult the strategy.
SimulationResult simulate(const ColorSequence& input, std::size_t k, Strategy& strategy,
                          const SimulationOptions& options = {});

/// Stage table with Input | Buffer | Output columns, one row per trace event.
/// Sequences are written head first.
std::string render_trace(const ColorSequence& input, const SimulationResult& result);

/// Stable text form of a result, used for determinism checks and golden files.
std::string serialize(const SimulationResult& result);

std::string join_colors(const ColorSequence& seq, std::string_view sep = ",");

} // namespace rebuf
