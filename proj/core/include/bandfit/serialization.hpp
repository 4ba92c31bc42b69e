#pragma once

#include <string>
#include <string_view>

#include "bandfit/approximator.hpp"

namespace bandfit {

inline constexpr std::string_view kApproximantFormat = "bandfit.approximant";
inline constexpr int kApproximantVersion = 1;

// {"format": "bandfit.approximant", "version": 1,
//  "omega": .., "n": .., "window": {"q": .., "s": ..}, "lambda": ..,
//  "coefficients": [y_-N, ..., y_N],
//  "report": {"residual_e", "min_eig", "max_eig", "condition", "used_fallback"}}
std::string to_json(const Approximant& a, int indent = -1);

/// Throws DataError on malformed documents or version mismatch.
Approximant approximant_from_json(std::string_view text);

}  // namespace bandfit
