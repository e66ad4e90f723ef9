#pragma once

#include <array>
#include <string>
#include <string_view>

namespace credsim {

inline constexpr std::size_t kTweakRuleCount = 4;

/// Fixed, ordered rule set: append "1", append "!", capitalize the first
/// letter, increment the trailing number (append "0" if there is none).
/// Throws std::invalid_argument on an empty password.
std::array<std::string, kTweakRuleCount> tweak_variants(std::string_view password);

std::string capitalize_first(std::string_view password);
std::string increment_trailing_digit(std::string_view password);

}  // namespace credsim
