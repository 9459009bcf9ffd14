#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace covmat {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ParseErrorKind {
    Syntax,
    EmptyUniverse,
    DuplicateLabel,
    UnknownLabel,
    DuplicateBlock,
    EmptyBlock,
};

/// Malformed input text. `line` is 1-based; 0 when the error is not tied to a line.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& message,
               ParseErrorKind kind = ParseErrorKind::Syntax)
        : Error(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
          line_(line), kind_(kind) {}

    std::size_t line() const noexcept { return line_; }
    ParseErrorKind kind() const noexcept { return kind_; }

private:
    std::size_t line_;
    ParseErrorKind kind_;
};

/// A caller broke an operation's precondition (unknown name, shape mismatch,
/// non-covering family passed to an approximation, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

class DimensionError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// An internal consistency check failed. Indicates a bug or a corrupted state.
class InvariantError : public Error {
public:
    using Error::Error;
};

} // namespace covmat
