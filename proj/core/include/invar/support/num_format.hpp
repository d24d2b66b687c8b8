#pragma once

#include <charconv>
#include <string>

namespace invar {

/// Shortest round-trip decimal form of a double. Used for every CSV cell so
/// repeated runs emit byte-identical files.
inline std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace invar
