#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace phantom {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Operands live on blow-ups in different numbers of points.
class DimensionError : public Error {
public:
    using Error::Error;
};

// Fixed-width coefficient arithmetic left its range.
class OverflowError : public Error {
public:
    using Error::Error;
};

// Caller-supplied parameter outside the operation's domain.
class ParameterError : public Error {
public:
    using Error::Error;
};

// An internal cross-check failed.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

class SamplingError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

} // namespace phantom
