#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace socnet {

/// Base of every error raised by the library. Each subclass maps to one CLI exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file. Carries the 1-based line number when known (0 otherwise).
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// Bad arguments: out-of-range node, empty graph, wrong normalization state and so on.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A computation that has no defined result for the given data
/// (zero-variance correlation, no triples, too few histogram points).
class ComputeError : public Error {
public:
    using Error::Error;
};

} // namespace socnet
