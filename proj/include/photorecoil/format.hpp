#pragma once

#include <string>

namespace photorecoil {

// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);

}  // namespace photorecoil
