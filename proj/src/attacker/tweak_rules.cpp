#include "credsim/attacker/tweak_rules.hpp"

#include <stdexcept>

namespace credsim {

std::string capitalize_first(std::string_view password) {
  std::string out(password);
  if (!out.empty() && out[0] >= 'a' && out[0] <= 'z') out[0] = static_cast<char>(out[0] - 'a' + 'A');
  return out;
}

std::string increment_trailing_digit(std::string_view password) {
  std::string out(password);
  std::size_t start = out.size();
  while (start > 0 && out[start - 1] >= '0' && out[start - 1] <= '9') --start;
  if (start == out.size()) return out + "0";

  // Decimal increment of the trailing run, widening on overflow ("99" -> "100").
  std::size_t i = out.size();
  while (i > start) {
    --i;
    if (out[i] != '9') {
      ++out[i];
      return out;
    }
    out[i] = '0';
  }
  out.insert(start, "1");
  return out;
}

std::array<std::string, kTweakRuleCount> tweak_variants(std::string_view password) {
  if (password.empty()) throw std::invalid_argument("tweak_variants: empty password");
  return {std::string(password) + "1", std::string(password) + "!", capitalize_first(password),
          increment_trailing_digit(password)};
}

}  // namespace credsim
