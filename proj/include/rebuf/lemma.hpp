#pragma once

#include <rebuf/types.hpp>

#include <cstdint>
#include <map>

namespace rebuf {

struct SequenceProfile {
    std::uint64_t sigma = 0;
    std::uint64_t o1 = 0; // most frequent color's count
    std::uint64_t o2 = 0; // second most frequent; 0 when sigma < 2
    std::map<ColorId, std::uint64_t> histogram;
};

SequenceProfile profile(const ColorSequence& input);

/// True iff a most-frequent-first schedule with buffer k can split a color:
/// 2*ceil(k/sigma) <= o1 and ceil(k/sigma) <= o2.
bool predicate_p(std::uint64_t k, std::uint64_t o1, std::uint64_t o2, std::uint64_t sigma);

struct KMin {
    std::uint64_t value = 0;      // min(by_o1, by_o2)
    std::uint64_t by_o1 = 0;      // smallest k with 2*ceil(k/sigma) > o1
    std::uint64_t by_o2 = 0;      // smallest k with ceil(k/sigma) > o2
};

/// Smallest buffer size for which predicate_p is false.
KMin k_min(std::uint64_t o1, std::uint64_t o2, std::uint64_t sigma);
KMin k_min(const SequenceProfile& p);

} // namespace rebuf
