#pragma once

#include <string>

namespace qkdwdm {

/// Shortest decimal string that round-trips to the same IEEE-754 double.
std::string shortest_double(double value);

/// Inverse of shortest_double; throws std::invalid_argument on junk.
double parse_double(const std::string& text);

}  // namespace qkdwdm
