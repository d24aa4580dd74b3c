#pragma once

#include <stdexcept>
#include <string>

namespace femtodl {

// Configuration document is missing keys or violates a physical invariant.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A per-zone quantity was requested at a distance where the zone does not exist.
struct ZoneUndefinedError : std::domain_error {
    explicit ZoneUndefinedError(const std::string& what) : std::domain_error(what) {}
};

// The mean-field user-count model left its validity region (e.g. femtocell
// coverage discs would absorb more cellular users than exist).
struct ModelValidityError : std::domain_error {
    explicit ModelValidityError(const std::string& what) : std::domain_error(what) {}
};

} // namespace femtodl
