#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "credsim/population/classify.hpp"

namespace credsim {

/// How character classes are counted.
/// FourClass: lower, upper, digit, symbol.
/// LettersDigitsSymbols: case-insensitive letters, digits, symbols.
enum class ClassMode { FourClass, LettersDigitsSymbols };

struct PasswordPolicy {
  std::string name = "none";
  std::size_t minLength = 0;
  std::size_t minClasses = 0;
  ClassMode classMode = ClassMode::FourClass;

  /// "none", "3class12", "3class12-lds" (three-category reading), "basic8".
  static std::optional<PasswordPolicy> preset(std::string_view name);
  static PasswordPolicy three_class_12();

  /// Throws ConfigError when minClasses exceeds the classes available in classMode.
  void validate() const;
};

enum class PolicyViolation { TooShort, TooFewClasses, KnownBreached };

std::string_view to_string(PolicyViolation v);

struct PolicyVerdict {
  std::vector<PolicyViolation> reasons;

  bool passed() const noexcept { return reasons.empty(); }
};

std::size_t class_count(CharClassSet classes, ClassMode mode);

/// Lists every violated constraint. Throws std::invalid_argument on an empty password.
PolicyVerdict check_policy(std::string_view password, const PasswordPolicy& policy);

}  // namespace credsim
