#include "cdsnet/sector.hpp"

#include <string>

#include "cdsnet/errors.hpp"

namespace cdsnet {

std::string_view to_string(Sector s) noexcept {
  switch (s) {
    case Sector::F: return "F";
    case Sector::B: return "B";
    case Sector::I: return "I";
  }
  return "?";
}

Sector parse_sector(std::string_view text) {
  if (text.size() == 1) {
    switch (text[0]) {
      case 'F': case 'f': return Sector::F;
      case 'B': case 'b': return Sector::B;
      case 'I': case 'i': return Sector::I;
      default: break;
    }
  }
  throw ParseError("", "unknown sector '" + std::string(text) + "' (expected F, B or I)");
}

}  // namespace cdsnet
