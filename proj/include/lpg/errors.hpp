#pragma once

#include <stdexcept>
#include <string>

namespace lpg {

/// Experiment configuration is missing, malformed, or inconsistent.
/// The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Station geometry cannot support position estimation (fewer than three
/// stations, collinear stations, or a user sitting on a station).
/// The CLI maps this to exit code 3.
class DegenerateGeometryError : public std::runtime_error {
public:
    explicit DegenerateGeometryError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lpg
