#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace credsim {

enum class CharClass : std::uint8_t {
  Lower = 1 << 0,
  Upper = 1 << 1,
  Digit = 1 << 2,
  Symbol = 1 << 3,
};

/// Small bitset over CharClass.
class CharClassSet {
 public:
  constexpr CharClassSet() = default;

  constexpr void insert(CharClass c) noexcept { bits_ |= static_cast<std::uint8_t>(c); }
  constexpr bool contains(CharClass c) const noexcept {
    return (bits_ & static_cast<std::uint8_t>(c)) != 0;
  }
  constexpr std::size_t size() const noexcept {
    std::size_t n = 0;
    for (std::uint8_t b = bits_; b != 0; b &= static_cast<std::uint8_t>(b - 1)) ++n;
    return n;
  }
  constexpr std::uint8_t bits() const noexcept { return bits_; }

  friend constexpr bool operator==(CharClassSet, CharClassSet) = default;

 private:
  std::uint8_t bits_ = 0;
};

struct PasswordClassification {
  std::size_t length = 0;  ///< in Unicode code points (UTF-8 input)
  CharClassSet classes;
};

/// ASCII a-z / A-Z / 0-9 map to lower / upper / digit; every other code point
/// (punctuation, whitespace, non-ASCII) counts as a symbol.
/// Throws std::invalid_argument on an empty password.
PasswordClassification classify_password(std::string_view password);

}  // namespace credsim
