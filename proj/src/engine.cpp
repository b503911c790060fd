#include <rebuf/engine.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace rebuf {

ColorSequence make_sequence(std::initializer_list<std::uint32_t> colors) {
    return make_sequence(std::vector<std::uint32_t>(colors));
}

ColorSequence make_sequence(const std::vector<std::uint32_t>& colors) {
    ColorSequence seq;
    seq.reserve(colors.size());
    for (auto c : colors) {
        if (c == 0) {
            throw Error(ErrorKind::Parse, "color ids start at 1");
        }
        seq.emplace_back(c);
    }
    return seq;
}

std::vector<std::uint32_t> to_values(const ColorSequence& seq) {
    std::vector<std::uint32_t> out;
    out.reserve(seq.size());
    for (auto c : seq) {
        out.push_back(c.value);
    }
    return out;
}

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidCapacity: return "InvalidCapacity";
    case ErrorKind::IllegalDecision: return "IllegalDecision";
    case ErrorKind::SkipNotPermitted: return "SkipNotPermitted";
    case ErrorKind::MissingSeed: return "MissingSeed";
    case ErrorKind::EmptyBuffer: return "EmptyBuffer";
    case ErrorKind::InvalidProfile: return "InvalidProfile";
    case ErrorKind::InstanceTooLarge: return "InstanceTooLarge";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::EmptyAggregate: return "EmptyAggregate";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

const char* to_string(TraceKind kind) {
    switch (kind) {
    case TraceKind::Fill: return "fill";
    case TraceKind::ForwardCurrentColor: return "forward";
    case TraceKind::Select: return "select";
    case TraceKind::Skip: return "skip";
    case TraceKind::Drain: return "drain";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// BufferState

BufferState::BufferState(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) {
        throw Error(ErrorKind::InvalidCapacity, "buffer capacity must be at least 1");
    }
}

std::size_t BufferState::count(ColorId color) const {
    auto it = groups_.find(color);
    return it == groups_.end() ? 0 : it->second.size();
}

std::uint64_t BufferState::oldest_arrival(ColorId color) const {
    auto it = groups_.find(color);
    if (it == groups_.end()) {
        throw Error(ErrorKind::IllegalDecision, "color " + std::to_string(color.value) + " not in buffer");
    }
    return it->second.front().arrival;
}

std::vector<Slot> BufferState::slots() const {
    std::vector<Slot> all;
    all.reserve(size_);
    for (const auto& [color, items] : groups_) {
        all.insert(all.end(), items.begin(), items.end());
    }
    std::sort(all.begin(), all.end(), [](const Slot& a, const Slot& b) { return a.arrival < b.arrival; });
    return all;
}

std::vector<ColorId> BufferState::contents() const {
    std::vector<ColorId> colors;
    colors.reserve(size_);
    for (const auto& s : slots()) {
        colors.push_back(s.color);
    }
    return colors;
}

void BufferState::insert(ColorId color, std::size_t origin) {
    if (full()) {
        throw std::logic_error("insert into full buffer");
    }
    groups_[color].push_back(Slot{color, next_arrival_++, origin});
    ++size_;
}

std::vector<Slot> BufferState::take_all(ColorId color) {
    auto it = groups_.find(color);
    if (it == groups_.end()) {
        throw Error(ErrorKind::IllegalDecision, "color " + std::to_string(color.value) + " not in buffer");
    }
    std::vector<Slot> out(it->second.begin(), it->second.end());
    size_ -= out.size();
    groups_.erase(it);
    return out;
}

Slot BufferState::take_latest(ColorId color) {
    auto it = groups_.find(color);
    if (it == groups_.end()) {
        throw Error(ErrorKind::IllegalDecision, "color " + std::to_string(color.value) + " not in buffer");
    }
    Slot s = it->second.back();
    it->second.pop_back();
    if (it->second.empty()) {
        groups_.erase(it);
    }
    --size_;
    return s;
}

void BufferState::check_invariants() const {
    std::size_t total = 0;
    for (const auto& [color, items] : groups_) {
        if (items.empty()) {
            throw std::logic_error("empty color group retained");
        }
        for (std::size_t i = 0; i < items.size(); ++i) {
            if (items[i].color != color) {
                throw std::logic_error("slot filed under wrong color");
            }
            if (i > 0 && items[i - 1].arrival >= items[i].arrival) {
                throw std::logic_error("arrival stamps not increasing");
            }
        }
        total += items.size();
    }
    if (total != size_) {
        throw std::logic_error("occupancy does not match slot histogram");
    }
    if (size_ > capacity_) {
        throw std::logic_error("buffer over capacity");
    }
}

StrategyView buffer_view(const BufferState& state, std::size_t input_remaining) noexcept {
    return StrategyView(state, input_remaining);
}

// ---------------------------------------------------------------------------
// simulate

namespace {

struct PendingItem {
    ColorId color;
    std::size_t origin;
};

class Run {
public:
    Run(const ColorSequence& input, std::size_t k, Strategy& strategy, const SimulationOptions& options)
        : buffer_(k), strategy_(strategy), options_(options) {
        for (std::size_t i = 0; i < input.size(); ++i) {
            input_.push_back(PendingItem{input[i], i});
        }
        result_.output.reserve(input.size());
        result_.origin.reserve(input.size());
    }

    SimulationResult execute() {
        std::optional<ColorId> current;
        while (!input_.empty() || !buffer_.empty()) {
            fill();

            if (current && buffer_.contains(*current)) {
                const ColorId c = *current;
                record_with(TraceKind::ForwardCurrentColor, c, [&] { return emit(c); });
                continue;
            }
            if (buffer_.empty()) {
                continue;
            }

            const StrategyDecision decision = strategy_.decide(buffer_view(buffer_, input_.size()));
            if (!buffer_.contains(decision.color)) {
                throw Error(ErrorKind::IllegalDecision,
                            std::string(strategy_.name()) + " chose color " +
                                std::to_string(decision.color.value) + " which is not buffered");
            }

            if (decision.kind == StrategyDecision::Kind::SelectColor) {
                const bool drain = input_.empty();
                result_.full_buffer_selections.push_back({decision.color, buffer_.full()});
                current = decision.color;
                record_with(drain ? TraceKind::Drain : TraceKind::Select, decision.color,
                            [&] { return emit(decision.color); });
            } else {
                if (!strategy_.skip_capable()) {
                    throw Error(ErrorKind::SkipNotPermitted,
                                std::string(strategy_.name()) + " is not skip-capable");
                }
                if (input_.empty()) {
                    throw Error(ErrorKind::SkipNotPermitted, "skip requested after input exhaustion");
                }
                record_with(TraceKind::Skip, decision.color, [&] {
                    const Slot s = buffer_.take_latest(decision.color);
                    input_.push_back(PendingItem{s.color, s.origin});
                    ++result_.skipped_count;
                    return std::size_t{1};
                });
            }
            if (options_.check_invariants) {
                buffer_.check_invariants();
            }
        }
        return std::move(result_);
    }

private:
    void fill() {
        if (buffer_.full() || input_.empty()) {
            return;
        }
        record_with(TraceKind::Fill, std::nullopt, [&] {
            std::size_t moved = 0;
            while (!buffer_.full() && !input_.empty()) {
                buffer_.insert(input_.front().color, input_.front().origin);
                input_.pop_front();
                ++moved;
            }
            return moved;
        });
        if (options_.check_invariants) {
            buffer_.check_invariants();
        }
    }

    std::size_t emit(ColorId color) {
        auto items = buffer_.take_all(color);
        for (const auto& s : items) {
            result_.output.push_back(s.color);
            result_.origin.push_back(s.origin);
        }
        strategy_.on_emit(color, items.size());
        return items.size();
    }

    template <class Action>
    void record_with(TraceKind kind, std::optional<ColorId> color, Action&& action) {
        const std::size_t input_before = input_.size();
        const std::size_t occupancy_before = buffer_.occupancy();
        const std::size_t moved = action();
        if (!options_.record_trace) {
            return;
        }
        TraceEvent ev;
        ev.kind = kind;
        ev.color = color;
        ev.items = moved;
        ev.input_remaining = input_before;
        ev.buffer_occupancy = occupancy_before;
        ev.input_after.reserve(input_.size());
        for (const auto& p : input_) {
            ev.input_after.push_back(p.color);
        }
        ev.buffer_after = buffer_.contents();
        ev.output_length_after = result_.output.size();
        result_.trace.push_back(std::move(ev));
    }

    std::deque<PendingItem> input_;
    BufferState buffer_;
    Strategy& strategy_;
    SimulationOptions options_;
    SimulationResult result_;
};

} // namespace

SimulationResult simulate(const ColorSequence& input, std::size_t k, Strategy& strategy,
                          const SimulationOptions& options) {
    if (k == 0) {
        throw Error(ErrorKind::InvalidCapacity, "buffer capacity must be at least 1");
    }
    return Run(input, k, strategy, options).execute();
}

std::string join_colors(const ColorSequence& seq, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i > 0) {
            out += sep;
        }
        out += std::to_string(seq[i].value);
    }
    return out;
}

std::string render_trace(const ColorSequence& input, const SimulationResult& result) {
    std::ostringstream os;
    os << "stage | event | input | buffer | output\n";
    os << "1 | start | " << join_colors(input, ", ") << " |  | \n";
    std::size_t stage = 2;
    for (const auto& ev : result.trace) {
        ColorSequence out(result.output.begin(),
                          result.output.begin() + static_cast<std::ptrdiff_t>(ev.output_length_after));
        os << stage++ << " | " << to_string(ev.kind);
        if (ev.color) {
            os << ' ' << ev.color->value;
        }
        os << " x" << ev.items << " | " << join_colors(ev.input_after, ", ") << " | "
           << join_colors(ev.buffer_after, ", ") << " | " << join_colors(out, ", ") << '\n';
    }
    return os.str();
}

std::string serialize(const SimulationResult& result) {
    std::ostringstream os;
    os << "output " << join_colors(result.output) << '\n';
    os << "skipped " << result.skipped_count << '\n';
    os << "selections";
    for (const auto& s : result.full_buffer_selections) {
        os << ' ' << s.color.value << (s.buffer_was_full ? ":full" : ":partial");
    }
    os << '\n';
    for (const auto& ev : result.trace) {
        os << to_string(ev.kind) << ' ' << (ev.color ? std::to_string(ev.color->value) : "-") << ' '
           << ev.items << ' ' << ev.input_remaining << ' ' << ev.buffer_occupancy << " [" << join_colors(ev.buffer_after)
           << "]\n";
    }
    return os.str();
}

} // namespace rebuf
