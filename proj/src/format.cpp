#include "menu_adapt/format.hpp"

#include <fmt/format.h>

namespace menu_adapt {

std::string format_ms(double ms) {
  if (ms == 0.0) ms = 0.0;
  return fmt::format("{:.3f}", ms);
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(text);
  }
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace menu_adapt
