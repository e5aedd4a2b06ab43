#pragma once

#include <stdexcept>
#include <string>

namespace cogmap {

// Document could not be read as a map file (bad JSON, missing or mistyped fields).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A map was read but breaks a data-model invariant.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Likelihood went non-finite, a fixed point failed to converge, and similar.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace cogmap
