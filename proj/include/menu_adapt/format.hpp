#pragma once

#include <string>
#include <string_view>

namespace menu_adapt {

// Fixed three-decimal milliseconds, never "-0.000".
std::string format_ms(double ms);

// RFC 4180 quoting when the field needs it.
std::string csv_field(std::string_view text);

}  // namespace menu_adapt
