#pragma once

#include <cstdio>
#include <string>

namespace fxmst {

/// Shortest round-trippable decimal with `digits` significant digits.
/// Locale-independent (the process stays in the "C" locale), so output
/// files are byte-stable across runs.
inline std::string format_general(double value, int digits = 12) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
    return buf;
}

/// Fixed-point decimal with `decimals` digits after the point.
inline std::string format_fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    return buf;
}

} // namespace fxmst
