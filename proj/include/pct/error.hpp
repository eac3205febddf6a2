#ifndef PCT_ERROR_HPP
#define PCT_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pct {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Precondition violations: unknown doc ids, values out of range, misuse of a rule.
class ArgumentError : public Error {
public:
    using Error::Error;
};

// Invalid scheme definitions, selectors and run options.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Malformed input data. line() is 1-based, 0 when no line applies.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// A point quantile hit an interior class boundary under BoundaryPolicy::Error.
class BoundaryError : public Error {
public:
    using Error::Error;
};

}

#endif
