#include "credsim/defenses/password_policy.hpp"

#include <stdexcept>

#include "credsim/types.hpp"

namespace credsim {

std::optional<PasswordPolicy> PasswordPolicy::preset(std::string_view name) {
  if (name == "none") return PasswordPolicy{};
  if (name == "3class12") return three_class_12();
  if (name == "3class12-lds") return PasswordPolicy{"3class12-lds", 12, 3, ClassMode::LettersDigitsSymbols};
  if (name == "basic8") return PasswordPolicy{"basic8", 8, 1, ClassMode::FourClass};
  return std::nullopt;
}

PasswordPolicy PasswordPolicy::three_class_12() { return PasswordPolicy{"3class12", 12, 3, ClassMode::FourClass}; }

void PasswordPolicy::validate() const {
  const std::size_t available = classMode == ClassMode::FourClass ? 4 : 3;
  if (minClasses > available) {
    throw ConfigError({"policy.minClasses: must be <= " + std::to_string(available)});
  }
}

std::string_view to_string(PolicyViolation v) {
  switch (v) {
    case PolicyViolation::TooShort: return "tooShort";
    case PolicyViolation::TooFewClasses: return "tooFewClasses";
    case PolicyViolation::KnownBreached: return "knownBreached";
  }
  return "unknown";
}

std::size_t class_count(CharClassSet classes, ClassMode mode) {
  if (mode == ClassMode::FourClass) return classes.size();
  std::size_t n = 0;
  if (classes.contains(CharClass::Lower) || classes.contains(CharClass::Upper)) ++n;
  if (classes.contains(CharClass::Digit)) ++n;
  if (classes.contains(CharClass::Symbol)) ++n;
  return n;
}

PolicyVerdict check_policy(std::string_view password, const PasswordPolicy& policy) {
  const auto info = classify_password(password);
  PolicyVerdict verdict;
  if (info.length < policy.minLength) verdict.reasons.push_back(PolicyViolation::TooShort);
  if (class_count(info.classes, policy.classMode) < policy.minClasses) {
    verdict.reasons.push_back(PolicyViolation::TooFewClasses);
  }
  return verdict;
}

}  // namespace credsim
