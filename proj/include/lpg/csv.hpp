#pragma once

#include <charconv>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <string_view>

namespace lpg {

/// Shortest decimal form that parses back to the same double. Keeps CSV
/// output byte-stable across runs and platforms with IEEE doubles.
inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

/// Comma-joined row. Fields are written verbatim: callers only pass
/// numbers and fixed identifiers, never free text needing quoting.
inline void write_csv_row(std::ostream& os, std::span<const std::string> cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) os << ',';
        os << cells[i];
    }
    os << '\n';
}

}  // namespace lpg
