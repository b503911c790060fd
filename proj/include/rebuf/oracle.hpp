#pragma once

#include <rebuf/types.hpp>

#include <cstddef>
#include <cstdint>

namespace rebuf {

struct OracleLimits {
    std::size_t max_items = 18;
    std::size_t max_colors = 6;
};

/// Minimum number of output blocks over every schedule a size-k buffer can
/// produce for `input`. Exhaustive search with memoization; exponential, so
/// inputs beyond `limits` are rejected with InstanceTooLarge.
std::uint64_t optimal_blocks(const ColorSequence& input, std::size_t k, const OracleLimits& limits = {});

/// Distinct colors in `input`: no schedule can do better.
std::uint64_t blocks_lower_bound(const ColorSequence& input);

} // namespace rebuf
