#include <rebuf/lemma.hpp>

#include <algorithm>
#include <string>
#include <vector>

namespace rebuf {

SequenceProfile profile(const ColorSequence& input) {
    SequenceProfile p;
    for (auto c : input) {
        ++p.histogram[c];
    }
    p.sigma = p.histogram.size();
    std::vector<std::uint64_t> counts;
    counts.reserve(p.histogram.size());
    for (const auto& [c, n] : p.histogram) {
        counts.push_back(n);
    }
    std::sort(counts.begin(), counts.end(), std::greater<>());
    if (!counts.empty()) p.o1 = counts[0];
    if (counts.size() > 1) p.o2 = counts[1];
    return p;
}

namespace {

void require_sigma(std::uint64_t sigma) {
    if (sigma == 0) {
        throw Error(ErrorKind::InvalidProfile, "sigma must be at least 1");
    }
}

} // namespace

bool predicate_p(std::uint64_t k, std::uint64_t o1, std::uint64_t o2, std::uint64_t sigma) {
    require_sigma(sigma);
    if (k == 0) {
        throw Error(ErrorKind::InvalidCapacity, "k must be at least 1");
    }
    const std::uint64_t per_color = (k + sigma - 1) / sigma;
    return 2 * per_color <= o1 && per_color <= o2;
}

KMin k_min(std::uint64_t o1, std::uint64_t o2, std::uint64_t sigma) {
    require_sigma(sigma);
    if (o2 > o1) {
        throw Error(ErrorKind::InvalidProfile, "o1 must be at least o2");
    }
    // Smallest k with ceil(k/sigma) >= t is sigma*(t-1)+1.
    KMin r;
    r.by_o1 = sigma * (o1 / 2) + 1;
    r.by_o2 = sigma * o2 + 1;
    r.value = std::min(r.by_o1, r.by_o2);
    return r;
}

KMin k_min(const SequenceProfile& p) { return k_min(p.o1, p.o2, p.sigma); }

} // namespace rebuf
