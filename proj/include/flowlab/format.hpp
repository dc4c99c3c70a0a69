#pragma once

#include <charconv>
#include <cstdio>
#include <string>

#include "flowlab/space.hpp"

namespace flowlab {

/// Shortest round-trip decimal rendering of a double. Used for every number
/// the tools print, so identical runs produce byte-identical output.
inline std::string fmt_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

/// Fixed-precision rendering (SVG coordinates use two decimals).
inline std::string fmt_fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return std::string(buf);
}

inline std::string fmt_vec(const Vec& v, char sep = ',') {
    std::string out;
    for (Index i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += fmt_double(v[i]);
    }
    return out;
}

inline std::string fmt_point(const Point& p) {
    if (p.is_infinity()) return "inf";
    return fmt_vec(p.coords());
}

}  // namespace flowlab
