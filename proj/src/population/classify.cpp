#include "credsim/population/classify.hpp"

#include <stdexcept>

namespace credsim {

PasswordClassification classify_password(std::string_view password) {
  if (password.empty()) throw std::invalid_argument("classify_password: empty password");

  PasswordClassification out;
  for (const unsigned char c : password) {
    // UTF-8 continuation bytes do not start a code point.
    if ((c & 0xC0) == 0x80) continue;
    ++out.length;
    if (c >= 'a' && c <= 'z') {
      out.classes.insert(CharClass::Lower);
    } else if (c >= 'A' && c <= 'Z') {
      out.classes.insert(CharClass::Upper);
    } else if (c >= '0' && c <= '9') {
      out.classes.insert(CharClass::Digit);
    } else {
      out.classes.insert(CharClass::Symbol);
    }
  }
  return out;
}

}  // namespace credsim
