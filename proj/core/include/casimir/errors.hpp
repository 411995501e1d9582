#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

// Invalid or inconsistent run configuration (bad file, unknown key, bad value).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A numerical routine failed to reach its tolerance within its budget.
// Carries the achieved and requested error estimates for diagnostics.
class NumericsError : public std::runtime_error {
public:
    NumericsError(const std::string& what, double achieved, double requested)
        : std::runtime_error(what + " (achieved " + std::to_string(achieved) +
                             ", requested " + std::to_string(requested) + ")"),
          achieved_error(achieved), requested_error(requested) {}
    double achieved_error;
    double requested_error;
};

// File system / parsing failures on input or output paths.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace casimir
