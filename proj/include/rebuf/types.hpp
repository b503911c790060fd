#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rebuf {

/// Item attribute. Values are positive; 0 is never a valid color.
struct ColorId {
    std::uint32_t value = 0;

    constexpr ColorId() = default;
    constexpr explicit ColorId(std::uint32_t v) : value(v) {}

    friend constexpr auto operator<=>(ColorId, ColorId) = default;
};

using ColorSequence = std::vector<ColorId>;

/// Convenience for tests and fixtures: {1, 2, 2} -> sequence of ColorId.
ColorSequence make_sequence(std::initializer_list<std::uint32_t> colors);
ColorSequence make_sequence(const std::vector<std::uint32_t>& colors);
std::vector<std::uint32_t> to_values(const ColorSequence& seq);

enum class ErrorKind {
    InvalidCapacity,
    IllegalDecision,
    SkipNotPermitted,
    MissingSeed,
    EmptyBuffer,
    InvalidProfile,
    InstanceTooLarge,
    InvalidSpec,
    DegenerateInput,
    EmptyAggregate,
    Parse,
    Io,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace rebuf

template <>
struct std::hash<rebuf::ColorId> {
    std::size_t operator()(rebuf::ColorId c) const noexcept { return std::hash<std::uint32_t>{}(c.value); }
};
