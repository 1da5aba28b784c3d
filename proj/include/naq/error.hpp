#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace naq {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised by the expression parser; `position` is a 1-based column offset
/// into the input text.
struct ParseError : Error {
    std::size_t position;

    ParseError(const std::string& message, std::size_t pos)
        : Error(message + " (at column " + std::to_string(pos) + ")"), position(pos) {}
};

} // namespace naq
