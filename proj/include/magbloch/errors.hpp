#pragma once

#include <stdexcept>
#include <string>

namespace magbloch {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Rejected geometric input (degenerate lattice, gauge violation).
class GeometryError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

// Eigensolver failure, gap closure, Hermiticity violation.
class NumericError : public Error {
public:
    using Error::Error;
};

// Memory budget, q cap, truncation budget.
class ResourceError : public Error {
public:
    using Error::Error;
};

} // namespace magbloch
