#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace deltachow {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A mathematical precondition does not hold (constant polynomial, improper ideal, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// The variety of the ideal is empty (the ideal is the unit ideal).
class EmptyVariety : public DomainError {
public:
    EmptyVariety() : DomainError("empty variety: the ideal is the unit ideal") {}
};

/// A configured computation cap was exceeded.
class ResourceLimit : public Error {
public:
    using Error::Error;
};

/// Malformed script or expression text; line and column are 1-based.
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& what, std::size_t line, std::size_t column)
        : Error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
          message_(what),
          line_(line),
          column_(column) {}

    const std::string& message() const noexcept { return message_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::string message_;
    std::size_t line_;
    std::size_t column_;
};

}  // namespace deltachow
