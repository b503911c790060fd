#include <rebuf/oracle.hpp>

#include <algorithm>
#include <limits>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace rebuf {

namespace {

constexpr std::uint8_t kNoColor = 0xff;

// Search state at a decision point: the buffer has just been refilled.
// Key layout: [input_position, last_color, count_0 .. count_{sigma-1}].
class Search {
public:
    Search(std::vector<std::uint8_t> dense, std::size_t sigma, std::size_t k)
        : input_(std::move(dense)), sigma_(sigma), k_(k) {}

    std::uint64_t solve() {
        std::string state(2 + sigma_, '\0');
        state[1] = static_cast<char>(kNoColor);
        return best(state);
    }

private:
    std::uint64_t best(std::string state) {
        refill(state);
        if (auto it = memo_.find(state); it != memo_.end()) {
            return it->second;
        }
        const auto last = static_cast<std::uint8_t>(state[1]);
        std::uint64_t result = std::numeric_limits<std::uint64_t>::max();
        bool any = false;

        // The current color, when buffered, is always emitted first: a lazy
        // schedule is never worse.
        if (last != kNoColor && state[2 + last] != 0) {
            std::string next = state;
            next[2 + last] = 0;
            result = best(std::move(next));
            any = true;
        } else {
            for (std::size_t c = 0; c < sigma_; ++c) {
                if (state[2 + c] == 0) {
                    continue;
                }
                any = true;
                std::string next = state;
                next[2 + c] = 0;
                next[1] = static_cast<char>(c);
                result = std::min(result, 1 + best(std::move(next)));
            }
        }
        if (!any) {
            result = 0;
        }
        memo_.emplace(std::move(state), result);
        return result;
    }

    void refill(std::string& state) const {
        std::size_t pos = static_cast<std::uint8_t>(state[0]);
        std::size_t held = 0;
        for (std::size_t c = 0; c < sigma_; ++c) {
            held += static_cast<std::uint8_t>(state[2 + c]);
        }
        while (held < k_ && pos < input_.size()) {
            ++state[2 + input_[pos]];
            ++pos;
            ++held;
        }
        state[0] = static_cast<char>(pos);
    }

    std::vector<std::uint8_t> input_;
    std::size_t sigma_;
    std::size_t k_;
    std::unordered_map<std::string, std::uint64_t> memo_;
};

} // namespace

std::uint64_t blocks_lower_bound(const ColorSequence& input) {
    std::vector<ColorId> colors(input.begin(), input.end());
    std::sort(colors.begin(), colors.end());
    return static_cast<std::uint64_t>(std::unique(colors.begin(), colors.end()) - colors.begin());
}

std::uint64_t optimal_blocks(const ColorSequence& input, std::size_t k, const OracleLimits& limits) {
    if (k == 0) {
        throw Error(ErrorKind::InvalidCapacity, "k must be at least 1");
    }
    std::map<ColorId, std::uint8_t> dense_id;
    for (auto c : input) {
        dense_id.emplace(c, 0);
    }
    if (input.size() > limits.max_items || dense_id.size() > limits.max_colors || input.size() > 250) {
        throw Error(ErrorKind::InstanceTooLarge,
                    "oracle limited to n <= " + std::to_string(limits.max_items) +
                        " and sigma <= " + std::to_string(limits.max_colors) + " (got n=" +
                        std::to_string(input.size()) + ", sigma=" + std::to_string(dense_id.size()) + ")");
    }
    std::uint8_t next = 0;
    for (auto& [c, id] : dense_id) {
        id = next++;
    }
    std::vector<std::uint8_t> dense;
    dense.reserve(input.size());
    for (auto c : input) {
        dense.push_back(dense_id[c]);
    }
    return Search(std::move(dense), dense_id.size(), std::min(k, input.size() + 1)).solve();
}

} // namespace rebuf
