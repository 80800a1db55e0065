#pragma once

#include <stdexcept>
#include <string>

namespace pathwalk {

// Invalid user-facing input (bad parameters, inadmissible basis pair, ...).
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// An internal numerical self-check failed (residuals, degeneracy guard, ...).
// Callers are expected to treat this as "do not trust the result".
class ConsistencyError : public std::runtime_error {
public:
    explicit ConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pathwalk
