#include "qkdwdm/textio.hpp"

#include <charconv>
#include <cstdlib>
#include <stdexcept>

namespace qkdwdm {

std::string shortest_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty numeric value");
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size())
        throw std::invalid_argument("not a number: '" + text + "'");
    return v;
}

}  // namespace qkdwdm
