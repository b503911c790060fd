#pragma once

#include <rebuf/types.hpp>

#include <string>

namespace rebuf::testing {

inline const ColorSequence kWalkthrough = make_sequence({1, 2, 2, 1, 3, 3, 3, 2, 3, 2, 2});
inline const ColorSequence kWalkthroughOutput = make_sequence({1, 1, 3, 3, 3, 3, 2, 2, 2, 2, 2});

inline const ColorSequence kThreeColors = make_sequence({1, 1, 2, 2, 1, 3, 1, 1, 2, 2, 3, 3, 3, 1, 2, 2, 3, 3, 1});
inline const ColorSequence kThreeColorsOutput = make_sequence({1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 3, 3, 3, 3, 3, 3, 1});

inline const ColorSequence kFourColors =
    make_sequence({1, 2, 3, 1, 2, 3, 3, 3, 3, 2, 2, 1, 1, 2, 2, 1, 1, 2, 3, 4, 4, 3, 2});
inline const ColorSequence kFourColorsPicky =
    make_sequence({3, 3, 3, 3, 3, 2, 2, 2, 2, 2, 2, 2, 2, 1, 1, 1, 1, 1, 1, 4, 4, 3, 3});
inline const ColorSequence kFourColorsMcf =
    make_sequence({3, 3, 3, 3, 3, 2, 2, 2, 2, 2, 2, 2, 1, 1, 1, 1, 1, 1, 3, 3, 4, 4, 2});

inline std::string fixture_path(const std::string& name) { return std::string(REBUF_FIXTURE_DIR) + "/" + name; }

} // namespace rebuf::testing
