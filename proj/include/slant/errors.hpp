#pragma once

#include <stdexcept>
#include <string>

namespace slant {

/// Malformed or out-of-domain input (bad JSON, |w| >= 1, l out of range, ...).
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// A numeric backend could not meet its accuracy contract
/// (truncation too small, failed round-trip gate).
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace slant
